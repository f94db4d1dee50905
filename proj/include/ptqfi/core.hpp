#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string>

#include <Eigen/Core>
#include <Eigen/LU>

#include "ptqfi/errors.hpp"

/**
 * @file
 * Shared 2x2 linear algebra, qubit density matrices and PT-regime
 * classification.
 *
 * Basis convention used throughout the library: index 0 is the ground
 * state |g>, index 1 the excited state |e>. Pauli matrices take their
 * standard form in this basis, so sigma_z|g> = +|g> and
 * sigma_- = |g><e| = [[0, 1], [0, 0]]. Under this convention rho(0, 0) is
 * the ground-state population, which is what tends to one under decay.
 */
namespace ptqfi {

using cplx = std::complex<double>;
using ComplexMat2 = Eigen::Matrix2cd;
using Vec2 = Eigen::Vector2cd;

inline constexpr cplx kI{0.0, 1.0};

namespace ops {
ComplexMat2 identity();
ComplexMat2 sigma_x();
ComplexMat2 sigma_y();
ComplexMat2 sigma_z();
ComplexMat2 sigma_minus();  // |g><e|
ComplexMat2 sigma_plus();   // |e><g|
ComplexMat2 ground_projector();
ComplexMat2 excited_projector();
}  // namespace ops

ComplexMat2 mat_mul(const ComplexMat2& x, const ComplexMat2& y);

bool is_finite(const ComplexMat2& m);

/// Frobenius norm of x - y.
double distance(const ComplexMat2& x, const ComplexMat2& y);

/// Largest entrywise modulus of x - y.
double max_abs_diff(const ComplexMat2& x, const ComplexMat2& y);

/**
 * Matrix exponential of a 2x2 complex matrix.
 *
 * Traceless input satisfies m^2 = mu^2 I with mu^2 = -det(m), giving
 * exp(m) = cosh(mu) I + sinh(mu)/mu m. Both coefficients are entire in
 * mu^2, so small |mu| switches to their Taylor series. Input with a trace
 * is reduced with exp(m) = exp(tr/2) exp(m - tr/2 I).
 */
ComplexMat2 mat_exp_2x2(const ComplexMat2& m);

/// Eigen-decomposition of a Hermitian 2x2 matrix, ascending eigenvalues.
struct HermitianEigen {
    std::array<double, 2> values;
    std::array<Vec2, 2> vectors;
};

HermitianEigen hermitian_eigen(const ComplexMat2& m);

class DensityMatrix {
  public:
    static constexpr double kHermitianTol = 1e-12;
    static constexpr double kTraceTol = 1e-10;
    static constexpr double kEigenvalueTol = 1e-10;

    /// Throws NumericError(Unphysical) when an invariant does not hold.
    explicit DensityMatrix(const ComplexMat2& m);

    /// Description of the first violated invariant, if any.
    static std::optional<std::string> violation(const ComplexMat2& m);

    static DensityMatrix pure(const Vec2& psi);

    const ComplexMat2& matrix() const noexcept { return mat_; }
    double ground_population() const { return mat_(0, 0).real(); }
    double excited_population() const { return mat_(1, 1).real(); }
    cplx coherence() const { return mat_(0, 1); }
    double det() const { return mat_.determinant().real(); }
    std::array<double, 2> eigenvalues() const;

  private:
    ComplexMat2 mat_;
};

enum class Regime { Unbroken, ExceptionalPoint, Broken };

std::string_view to_string(Regime regime);

struct PtRegime {
    Regime kind;
    double q;  // sqrt(|a^2 - b^2|)
};

inline constexpr double kRegimeEpsilon = 1e-12;

/// Classifies B = a sigma_x + i b sigma_z by the sign of a^2 - b^2.
PtRegime classify_regime(double a, double b, double eps = kRegimeEpsilon);

/// Parameters of the feedback-controlled damped qubit.
struct FeedbackConfig {
    double a = 0.0;        // sigma_x strength of the feedback operator
    double b = 0.0;        // i sigma_z strength of the feedback operator
    double gamma = 0.1;    // damping rate (inverse time)
    double omega = 0.0;    // drive Omega (inverse time)
    double delta_t = 1.0;  // feedback pulse duration

    /// Throws std::invalid_argument on gamma <= 0, omega < 0, delta_t <= 0
    /// or non-finite values.
    void validate() const;

    PtRegime regime() const { return classify_regime(a, b); }
};

/// Feedback operator B = a sigma_x + i b sigma_z.
ComplexMat2 feedback_operator(double a, double b);

}  // namespace ptqfi
