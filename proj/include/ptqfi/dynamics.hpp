#pragma once

#include "ptqfi/core.hpp"

/**
 * @file
 * Time evolution of the feedback-controlled damped qubit.
 *
 * With drive Omega = 0 and initial state (|e> + |g>)/sqrt(2) the
 * unconditional master equation
 *
 *   d rho/dt = -i[Omega sigma_x, rho] + gamma D[U sigma_-] rho,
 *   U = exp(-i B delta_t),  B = a sigma_x + i b sigma_z,
 *
 * is solved in closed form. Writing U|g> = K|g> - i s|e> (K, s real for all
 * three PT regimes),
 *
 *   rho_gg(t) = 1 - exp(-gamma K^2 t) / 2
 *   rho_ge(t) = G exp(-gamma K^2 t) + (1/2 - G) exp(-gamma (K^2 + s^2) t / 2)
 *   G = i K s / (s^2 - K^2).
 *
 * K^2 is the feedback factor: (cos q + (b/q) sin q)^2 for a^2 > b^2,
 * (1 + b)^2 at a^2 = b^2, (cosh q + (b/q) sinh q)^2 for a^2 < b^2.
 */
namespace ptqfi {

/// Closed-form solution for one feedback configuration.
struct AnalyticSolution {
    PtRegime regime;
    double gamma = 0.0;
    double feedback_amplitude = 1.0;  // K = <g|U|g>
    double transfer_amplitude = 0.0;  // s, with <e|U|g> = -i s
    cplx coefficient{};               // G

    /// K^2, the factor multiplying gamma in the excited-state decay.
    double gamma_factor() const { return feedback_amplitude * feedback_amplitude; }

    /// Ground-state population rho(0, 0).
    double rho11(double t) const;
    /// Coherence rho(0, 1) = <g|rho|e>.
    cplx rho12(double t) const;
    /// Full state; throws std::invalid_argument for t < 0.
    DensityMatrix at(double t) const;
};

/// Dispatches on classify_regime. Rejects omega != 0 with
/// std::invalid_argument; throws NumericError(SingularCoefficient) when the
/// coefficient G diverges.
AnalyticSolution analytic_solution(const FeedbackConfig& cfg);

/// Evaluates a specific regime's formula regardless of classification.
/// Unbroken requires a^2 > b^2, Broken a^2 < b^2; ExceptionalPoint reads
/// a^2 = b^2 and only uses the sign of a.
AnalyticSolution analytic_solution(const FeedbackConfig& cfg, Regime formula);

DensityMatrix rho_analytic(const FeedbackConfig& cfg, double t);

/// Amplitude-damped superposition, U = I.
DensityMatrix rho_no_feedback(double gamma, double t);

/// Initial state (|e> + |g>)/sqrt(2).
DensityMatrix initial_superposition();

/// K^2 for the given feedback strengths (delta_t = 1).
double feedback_factor(double a, double b);

/// U = exp(-i B delta_t).
ComplexMat2 feedback_propagator(const FeedbackConfig& cfg);

/// Right-hand side of the master equation with jump operator U sigma_-.
/// Caches the jump operator so repeated evaluations are cheap.
class MasterEquation {
  public:
    explicit MasterEquation(const FeedbackConfig& cfg);

    ComplexMat2 rhs(const ComplexMat2& rho) const;

    const FeedbackConfig& config() const noexcept { return cfg_; }

  private:
    FeedbackConfig cfg_;
    ComplexMat2 hamiltonian_;
    ComplexMat2 jump_;
    ComplexMat2 jump_dag_;
    ComplexMat2 jump_norm_;  // jump^dag jump
};

ComplexMat2 lindblad_rhs(const ComplexMat2& rho, const FeedbackConfig& cfg);

inline constexpr double kDefaultIntegratorStep = 1e-4;
inline constexpr double kTraceDriftLimit = 1e-8;

/// Classic RK4 with uniform steps of at most dt, Hermitian re-symmetrization
/// after each step. Throws NumericError(TraceDrift) if the trace moves by
/// more than kTraceDriftLimit.
DensityMatrix integrate_master(const FeedbackConfig& cfg, const DensityMatrix& rho0,
                               double t_final, double dt = kDefaultIntegratorStep);

}  // namespace ptqfi
