// Copyright 2026 The weylcoef Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef WEYLCOEF_ERRORS_HPP
#define WEYLCOEF_ERRORS_HPP

#include <cstdio>
#include <stdexcept>
#include <string>

namespace weylcoef {

/// Configuration errors are caller mistakes; numerical errors come from the data.
enum class ErrorKind { kConfiguration, kNumerical };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const char* name, const std::string& what)
      : std::runtime_error(std::string(name) + ": " + what), kind_(kind), name_(name) {}

  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }
  [[nodiscard]] const char* name() const noexcept { return name_; }

 private:
  ErrorKind kind_;
  const char* name_;
};

#define WEYLCOEF_DEFINE_ERROR(Name, Kind)                                   \
  class Name : public Error {                                               \
   public:                                                                  \
    explicit Name(const std::string& what) : Error(Kind, #Name, what) {}    \
  };

WEYLCOEF_DEFINE_ERROR(InvalidArgument, ErrorKind::kConfiguration)
WEYLCOEF_DEFINE_ERROR(DimensionMismatch, ErrorKind::kConfiguration)
WEYLCOEF_DEFINE_ERROR(AngleOutOfRange, ErrorKind::kConfiguration)
WEYLCOEF_DEFINE_ERROR(DegenerateAngles, ErrorKind::kConfiguration)
WEYLCOEF_DEFINE_ERROR(RealSpectralParameter, ErrorKind::kConfiguration)
WEYLCOEF_DEFINE_ERROR(UnknownModel, ErrorKind::kConfiguration)
WEYLCOEF_DEFINE_ERROR(ParameterOutOfRange, ErrorKind::kConfiguration)
WEYLCOEF_DEFINE_ERROR(SupportTooLarge, ErrorKind::kConfiguration)
WEYLCOEF_DEFINE_ERROR(WindowViolation, ErrorKind::kConfiguration)
WEYLCOEF_DEFINE_ERROR(IllConditionedFit, ErrorKind::kConfiguration)
WEYLCOEF_DEFINE_ERROR(BudgetExceeded, ErrorKind::kConfiguration)
WEYLCOEF_DEFINE_ERROR(ConfigError, ErrorKind::kConfiguration)

WEYLCOEF_DEFINE_ERROR(NotHermitian, ErrorKind::kNumerical)
WEYLCOEF_DEFINE_ERROR(NotElliptic, ErrorKind::kNumerical)
WEYLCOEF_DEFINE_ERROR(DegenerateSpectrum, ErrorKind::kNumerical)
WEYLCOEF_DEFINE_ERROR(GaugeAlignmentFailure, ErrorKind::kNumerical)
WEYLCOEF_DEFINE_ERROR(SingularResolvent, ErrorKind::kNumerical)
WEYLCOEF_DEFINE_ERROR(ComplexResidue, ErrorKind::kNumerical)
WEYLCOEF_DEFINE_ERROR(QuadratureFailure, ErrorKind::kNumerical)
WEYLCOEF_DEFINE_ERROR(EllipticityViolation, ErrorKind::kNumerical)
WEYLCOEF_DEFINE_ERROR(SolveFailure, ErrorKind::kNumerical)

#undef WEYLCOEF_DEFINE_ERROR

/// Number formatting for error messages; std::to_string hides small values.
[[nodiscard]] inline std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

}  // namespace weylcoef

#endif  // WEYLCOEF_ERRORS_HPP
