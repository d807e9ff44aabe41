#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace kmarith {

enum class Errc {
  NonSquare,
  C1Violation,
  C2Violation,
  C3Violation,
  Decomposable,
  NotSymmetrizable,
  NotHyperbolic,
  NonPositiveNorm,
  NonIntegralImage,
  BudgetExhausted,
  NotFound,
  DegenerateInput,
  BadBasePoint,
  EmptyInterior,
  NotArithmeticHyperbolic,
  ConstraintViolation,
  Parse,
};

inline const char* errc_name(Errc e) {
  switch (e) {
    case Errc::NonSquare: return "NonSquare";
    case Errc::C1Violation: return "C1Violation";
    case Errc::C2Violation: return "C2Violation";
    case Errc::C3Violation: return "C3Violation";
    case Errc::Decomposable: return "Decomposable";
    case Errc::NotSymmetrizable: return "NotSymmetrizable";
    case Errc::NotHyperbolic: return "NotHyperbolic";
    case Errc::NonPositiveNorm: return "NonPositiveNorm";
    case Errc::NonIntegralImage: return "NonIntegralImage";
    case Errc::BudgetExhausted: return "BudgetExhausted";
    case Errc::NotFound: return "NotFound";
    case Errc::DegenerateInput: return "DegenerateInput";
    case Errc::BadBasePoint: return "BadBasePoint";
    case Errc::EmptyInterior: return "EmptyInterior";
    case Errc::NotArithmeticHyperbolic: return "NotArithmeticHyperbolic";
    case Errc::ConstraintViolation: return "ConstraintViolation";
    case Errc::Parse: return "ParseError";
  }
  return "Unknown";
}

/// Every failure raised by the library. `location` is a 1-based (row, col)
/// when the error concerns a matrix entry.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what,
        std::optional<std::pair<std::size_t, std::size_t>> location = std::nullopt)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code),
        location_(location) {}

  Errc code() const noexcept { return code_; }
  const std::optional<std::pair<std::size_t, std::size_t>>& location() const noexcept {
    return location_;
  }

 private:
  Errc code_;
  std::optional<std::pair<std::size_t, std::size_t>> location_;
};

}  // namespace kmarith
