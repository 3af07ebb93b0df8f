#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cholspace {

enum class ErrorCode {
  NonPositiveDiagonal,
  NotPositiveDefinite,
  SingularTriangular,
  NonPositiveSpectrum,
  DomainError,
  OutOfDomain,
  BadWeights,
  ZeroTheta,
  DimMismatch,
  GyroDomainError,
  ConfigError,
  ParseError,
};

std::string_view to_string(ErrorCode code);

// Every checked-mode failure in the library is reported through this type.
class GeometryError : public std::runtime_error {
 public:
  GeometryError(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Raw mode evaluates formulas literally in IEEE arithmetic; checked mode
// validates domains first and throws GeometryError.
enum class Mode { Checked, Raw };

}  // namespace cholspace
