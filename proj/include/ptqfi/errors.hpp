#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ptqfi {

/// Numeric failure modes surfaced by the library. Argument errors use
/// std::invalid_argument instead.
enum class NumericErrorKind {
    SingularCoefficient,  // Gamma denominator of the analytic solution vanishes
    NearSingular,         // det(rho) too small for the closed 2x2 QFI formula
    DivergentBound,       // Cramer-Rao bound with zero Fisher information
    ExceptionalPoint,     // eigenstate QFI evaluated at the coalescence point
    TraceDrift,           // integrator lost trace (step too large)
    Unphysical,           // density matrix invariant violated
};

std::string_view to_string(NumericErrorKind kind);

class NumericError : public std::runtime_error {
  public:
    NumericError(NumericErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    NumericErrorKind kind() const noexcept { return kind_; }

  private:
    NumericErrorKind kind_;
};

}  // namespace ptqfi
