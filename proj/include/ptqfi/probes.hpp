#pragma once

#include <cstdint>

#include "ptqfi/core.hpp"
#include "ptqfi/estimation.hpp"

/**
 * @file
 * Damping rate encoded by no-jump evolution under H_eff = Omega sigma_x -
 * i gamma |e><e|, probed with cos(theta)|e..e> + sin(theta)|g..g>.
 *
 * With Omega = 0 the N-qubit probe never leaves span{|e..e>, |g..g>}, so
 * it is represented by two real amplitudes and N enters only through the
 * product gamma N t.
 */
namespace ptqfi {

struct ProbeConfig {
    double theta = 0.7853981633974483;  // probe angle (radians)
    std::int64_t n_qubits = 1;
    double gamma = 0.1;       // inverse time
    double t = 1.0;           // evolution time per shot
    double omega = 0.0;       // drive (inverse time)
    double total_time = 1.0;  // interrogation budget T

    /// Throws std::invalid_argument on out-of-range fields.
    void validate() const;
};

/// Normalized amplitudes on |e..e> and |g..g>.
struct EffectiveProbeState {
    double amp_e;
    double amp_g;
};

EffectiveProbeState evolve_probe(const ProbeConfig& cfg);

/// 2 cos^2 sin^2 exp(2 gamma N t) (N t)^2 / (cos^2 + sin^2 exp(2 gamma N t))^2,
/// evaluated in a form that stays finite for large gamma N t.
double qfi_probe_closed(const ProbeConfig& cfg);

/// Pure-state QFI of the evolve_probe family by finite differences.
double qfi_probe_oracle(const ProbeConfig& cfg, double h);
double qfi_probe_oracle(const ProbeConfig& cfg);

/// Variance bound 1 / ((T / t) F) with F = qfi_probe_closed. Throws
/// NumericError(DivergentBound) when F = 0.
double precision_bound(const ProbeConfig& cfg);

struct OptimalProbe {
    double sin2_theta;  // 1 / (exp(2 gamma N t) + 1)
    double theta;
    double f_max;       // (N t)^2 / 2
};

/// Stationary point of qfi_probe_closed in theta. Requires gamma N t > 0.
OptimalProbe optimal_theta(std::int64_t n_qubits, double gamma, double t);

/// Omega sigma_x - i gamma |e><e|.
ComplexMat2 effective_hamiltonian(double omega, double gamma);

/// Omega sigma_x + i gamma sigma_z, the PT-balanced operator whose
/// eigenvectors are (-Omega, i gamma -/+ sqrt(Omega^2 - gamma^2)).
ComplexMat2 balanced_hamiltonian(double omega, double gamma);

struct HeffEigenstates {
    Vec2 psi_minus;  // (-Omega, i gamma - sqrt(Omega^2 - gamma^2)), not normalized
    Vec2 psi_plus;   // (-Omega, i gamma + sqrt(Omega^2 - gamma^2))
    cplx lambda_minus;  // eigenvalue of balanced_hamiltonian for psi_minus
    cplx lambda_plus;
    bool coalesced;  // Omega == gamma: eigenvectors coincide
};

/// Principal square-root branch for Omega < gamma.
HeffEigenstates eigenstates_heff(double omega, double gamma);

/// Normalized psi_minus as a function of gamma at fixed Omega.
PureFamily eigenstate_family(double omega);

struct EigenstateQfi {
    double closed;             // 2 / (Omega^2 - gamma^2)
    double finite_difference;  // qfi_pure on the normalized psi_minus family
    double step;
};

inline constexpr double kCoalescenceTol = 1e-9;

/// Requires Omega > gamma; throws NumericError(ExceptionalPoint) when
/// |Omega - gamma| / Omega < kCoalescenceTol and std::invalid_argument for
/// Omega < gamma. h <= 0 selects a step scaled to the distance from the
/// exceptional point.
EigenstateQfi qfi_eigenstate(double omega, double gamma, double h = 0.0);

}  // namespace ptqfi
