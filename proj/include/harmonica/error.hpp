#ifndef HARMONICA_ERROR_HPP
#define HARMONICA_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace harmonica {

enum class ErrorCode {
  InvalidArgument,
  Parse,
  Io,
  DivisionByZero,
  DenominatorDivisibleByP,
  DomainMismatch,
  MalformedFacet,
  DimensionMismatch,
  DegreeOutOfRange,
  NotACycle,
  NotHarmonicComplex,
  NoDecomposition,
  CapExceeded,
  NotARowBasis,
  NotAColumnBasis,
  NotASurface,
  NonIntegerDivision,
  TorsionObstruction,
  InternalEquivalenceViolation,
};

std::string_view error_name(ErrorCode code);

// Every library failure is an Error. `detail` is an optional JSON object
// (serialized) carrying machine-readable context such as a report or a count.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::string detail = {})
      : std::runtime_error(message), code_(code), detail_(std::move(detail)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace harmonica

#endif  // HARMONICA_ERROR_HPP
