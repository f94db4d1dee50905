#pragma once

#include <functional>
#include <string>
#include <string_view>

#include "ptqfi/core.hpp"

/**
 * @file
 * Fisher information of the damping rate gamma.
 *
 * Four routes are provided and cross-checked against each other:
 *  - qfi_pure: 4 (<d psi|d psi> - |<d psi|psi>|^2) for pure families
 *  - qfi_spectral: sum over the eigenbasis, valid for any rank
 *  - qfi_closed_2x2: Tr[(d rho)^2] + Tr[(rho d rho)^2] / det(rho)
 *  - classical_fisher_projective: populations measured in {|g>, |e>}
 *
 * Derivatives with respect to gamma are central differences on a state
 * family, at step default_step(gamma) unless given explicitly.
 */
namespace ptqfi {

/// A gamma- and time-dependent qubit state.
struct StateFamily {
    std::function<DensityMatrix(double gamma, double t)> eval;
    std::string label;
};

/// Pure-state family psi(gamma); vectors must be normalized.
using PureFamily = std::function<Vec2(double gamma)>;

enum class FisherMethod { Pure, Spectral, Closed2x2, Classical };

std::string_view to_string(FisherMethod method);

struct FisherResult {
    double value = 0.0;  // units of time^2
    FisherMethod method = FisherMethod::Spectral;
    double gamma = 0.0;
    double t = 0.0;
};

inline constexpr double kNearSingularDet = 1e-12;
inline constexpr double kEigenvalueCutoff = 1e-12;
inline constexpr double kProbabilityCutoff = 1e-14;

inline double default_step(double gamma) { return 1e-5 * (gamma > 1.0 ? gamma : 1.0); }

/// Analytic feedback solution as a function of gamma (omega = 0).
StateFamily feedback_family(double a, double b, double delta_t = 1.0);

/// Amplitude damping without feedback.
StateFamily no_feedback_family();

/// Central difference (rho(gamma + h) - rho(gamma - h)) / 2h.
ComplexMat2 drho_dgamma(const StateFamily& family, double gamma, double t, double h);

/// Throws NumericError(NearSingular) when det(rho) <= kNearSingularDet.
double qfi_closed_2x2(const DensityMatrix& rho, const ComplexMat2& drho);

/// 2 sum_{k,l} |<k|d rho|l>|^2 / (lambda_k + lambda_l) over pairs with
/// lambda_k + lambda_l > cutoff. Equivalent to the eigenvalue/eigenvector
/// form sum (d lambda)^2 / lambda + 2 sum (l_k - l_l)^2 / (l_k + l_l) |<k|d l>|^2.
double qfi_spectral(const DensityMatrix& rho, const ComplexMat2& drho,
                    double cutoff = kEigenvalueCutoff);

/// Spectral QFI with eigenvalue and eigenvector derivatives taken by finite
/// differences of the decomposed family (no d rho matrix involved).
double qfi_spectral_family(const StateFamily& family, double gamma, double t, double h,
                           double cutoff = kEigenvalueCutoff);

/// Throws std::invalid_argument if psi is not normalized within 1e-10 at
/// gamma or gamma +- h.
double qfi_pure(const PureFamily& psi, double gamma, double h);

/// Classical Fisher information of the {|g><g|, |e><e|} measurement.
/// Outcomes with probability below kProbabilityCutoff are dropped.
double classical_fisher_projective(const StateFamily& family, double gamma, double t,
                                   double h);
double classical_fisher_projective(const StateFamily& family, double gamma, double t);

/// exp(-gamma t K^2) t^2 K^4 / (2 - exp(-gamma t K^2)), K^2 = feedback_factor(a, b).
double fisher_projective_closed(double a, double b, double gamma, double t);
double fisher_projective_from_factor(double k2, double gamma, double t);

/// QFI of the family, routed to the closed 2x2 formula when det(rho) is
/// large enough and to the spectral formula otherwise.
FisherResult quantum_fisher(const StateFamily& family, double gamma, double t);
FisherResult quantum_fisher(const StateFamily& family, double gamma, double t, double h);

struct RatePeak {
    double feedback_factor;  // K^2
    double t_approx;         // 1 / (gamma K^2)
    double rate_approx;      // K^2 / ((2e - 1) gamma)
    double t_numeric;        // argmax of f/t
    double rate_numeric;     // max of f/t
};

/// Maximum of f/t for the projective Fisher information. Requires K^2 > 0.
RatePeak fisher_rate_peak(double a, double b, double gamma);
RatePeak fisher_rate_peak_from_factor(double k2, double gamma);

}  // namespace ptqfi
