#include "ptqfi/core.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace ptqfi {

std::string_view to_string(NumericErrorKind kind) {
    switch (kind) {
    case NumericErrorKind::SingularCoefficient:
        return "singular-coefficient";
    case NumericErrorKind::NearSingular:
        return "near-singular";
    case NumericErrorKind::DivergentBound:
        return "divergent-bound";
    case NumericErrorKind::ExceptionalPoint:
        return "exceptional-point";
    case NumericErrorKind::TraceDrift:
        return "trace-drift";
    case NumericErrorKind::Unphysical:
        return "unphysical";
    }
    return "unknown";
}

namespace ops {
ComplexMat2 identity() { return ComplexMat2::Identity(); }

ComplexMat2 sigma_x() {
    ComplexMat2 m;
    m << 0.0, 1.0, 1.0, 0.0;
    return m;
}

ComplexMat2 sigma_y() {
    ComplexMat2 m;
    m << 0.0, -kI, kI, 0.0;
    return m;
}

ComplexMat2 sigma_z() {
    ComplexMat2 m;
    m << 1.0, 0.0, 0.0, -1.0;
    return m;
}

ComplexMat2 sigma_minus() {
    ComplexMat2 m;
    m << 0.0, 1.0, 0.0, 0.0;
    return m;
}

ComplexMat2 sigma_plus() { return sigma_minus().adjoint(); }

ComplexMat2 ground_projector() {
    ComplexMat2 m;
    m << 1.0, 0.0, 0.0, 0.0;
    return m;
}

ComplexMat2 excited_projector() {
    ComplexMat2 m;
    m << 0.0, 0.0, 0.0, 1.0;
    return m;
}
}  // namespace ops

ComplexMat2 mat_mul(const ComplexMat2& x, const ComplexMat2& y) { return x * y; }

bool is_finite(const ComplexMat2& m) {
    for (int i = 0; i < 4; ++i) {
        const cplx z = m(i / 2, i % 2);
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            return false;
        }
    }
    return true;
}

double distance(const ComplexMat2& x, const ComplexMat2& y) { return (x - y).norm(); }

double max_abs_diff(const ComplexMat2& x, const ComplexMat2& y) {
    return (x - y).cwiseAbs().maxCoeff();
}

namespace {

ComplexMat2 traceless_exp(const ComplexMat2& m) {
    const cplx mu2 = -m.determinant();
    cplx c;
    cplx s;
    if (std::abs(mu2) < 1e-8) {
        c = 1.0 + mu2 / 2.0 + mu2 * mu2 / 24.0 + mu2 * mu2 * mu2 / 720.0;
        s = 1.0 + mu2 / 6.0 + mu2 * mu2 / 120.0 + mu2 * mu2 * mu2 / 5040.0;
    } else {
        const cplx mu = std::sqrt(mu2);
        c = std::cosh(mu);
        s = std::sinh(mu) / mu;
    }
    return c * ComplexMat2::Identity() + s * m;
}

}  // namespace

ComplexMat2 mat_exp_2x2(const ComplexMat2& m) {
    const cplx half_trace = m.trace() / 2.0;
    if (half_trace == cplx{0.0, 0.0}) {
        return traceless_exp(m);
    }
    return std::exp(half_trace) * traceless_exp(m - half_trace * ComplexMat2::Identity());
}

HermitianEigen hermitian_eigen(const ComplexMat2& m) {
    Eigen::SelfAdjointEigenSolver<ComplexMat2> solver(m);
    HermitianEigen out;
    for (int k = 0; k < 2; ++k) {
        out.values[k] = solver.eigenvalues()(k);
        out.vectors[k] = solver.eigenvectors().col(k);
    }
    return out;
}

DensityMatrix::DensityMatrix(const ComplexMat2& m) : mat_(m) {
    if (auto why = violation(m)) {
        throw NumericError(NumericErrorKind::Unphysical, "invalid density matrix: " + *why);
    }
}

std::optional<std::string> DensityMatrix::violation(const ComplexMat2& m) {
    if (!is_finite(m)) {
        return "non-finite entry";
    }
    const double herm = max_abs_diff(m, m.adjoint());
    if (herm > kHermitianTol) {
        std::ostringstream os;
        os << "not Hermitian (|rho - rho^dag| = " << herm << ")";
        return os.str();
    }
    const double tr = m.trace().real();
    if (std::abs(tr - 1.0) > kTraceTol) {
        std::ostringstream os;
        os << "trace " << tr << " != 1";
        return os.str();
    }
    const double p = m(0, 0).real();
    const double r = m(1, 1).real();
    const double disc = std::hypot(p - r, 2.0 * std::abs(m(0, 1)));
    const double lmin = 0.5 * (p + r - disc);
    if (lmin < -kEigenvalueTol) {
        std::ostringstream os;
        os << "negative eigenvalue " << lmin;
        return os.str();
    }
    return std::nullopt;
}

DensityMatrix DensityMatrix::pure(const Vec2& psi) {
    const Vec2 unit = psi / psi.norm();
    ComplexMat2 m = unit * unit.adjoint();
    m = 0.5 * (m + m.adjoint()).eval();
    return DensityMatrix(m);
}

std::array<double, 2> DensityMatrix::eigenvalues() const {
    const double p = mat_(0, 0).real();
    const double r = mat_(1, 1).real();
    const double disc = std::hypot(p - r, 2.0 * std::abs(mat_(0, 1)));
    return {0.5 * (p + r - disc), 0.5 * (p + r + disc)};
}

std::string_view to_string(Regime regime) {
    switch (regime) {
    case Regime::Unbroken:
        return "unbroken";
    case Regime::ExceptionalPoint:
        return "exceptional-point";
    case Regime::Broken:
        return "broken";
    }
    return "unknown";
}

PtRegime classify_regime(double a, double b, double eps) {
    const double d = (a - b) * (a + b);
    if (d > eps) {
        return {Regime::Unbroken, std::sqrt(d)};
    }
    if (d < -eps) {
        return {Regime::Broken, std::sqrt(-d)};
    }
    return {Regime::ExceptionalPoint, 0.0};
}

void FeedbackConfig::validate() const {
    auto finite = [](double x) { return std::isfinite(x); };
    if (!finite(a) || !finite(b) || !finite(gamma) || !finite(omega) || !finite(delta_t)) {
        throw std::invalid_argument("feedback config: non-finite parameter");
    }
    if (gamma <= 0.0) {
        throw std::invalid_argument("feedback config: gamma must be > 0");
    }
    if (omega < 0.0) {
        throw std::invalid_argument("feedback config: omega must be >= 0");
    }
    if (delta_t <= 0.0) {
        throw std::invalid_argument("feedback config: delta_t must be > 0");
    }
}

ComplexMat2 feedback_operator(double a, double b) {
    return a * ops::sigma_x() + (kI * b) * ops::sigma_z();
}

}  // namespace ptqfi
