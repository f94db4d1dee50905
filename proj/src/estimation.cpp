#include "ptqfi/estimation.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "ptqfi/dynamics.hpp"
#include "ptqfi/optimize.hpp"

namespace ptqfi {

std::string_view to_string(FisherMethod method) {
    switch (method) {
    case FisherMethod::Pure:
        return "pure";
    case FisherMethod::Spectral:
        return "spectral";
    case FisherMethod::Closed2x2:
        return "closed2x2";
    case FisherMethod::Classical:
        return "classical";
    }
    return "unknown";
}

StateFamily feedback_family(double a, double b, double delta_t) {
    std::ostringstream label;
    label << "feedback(a=" << a << ", b=" << b << ")";
    return {[a, b, delta_t](double gamma, double t) {
                FeedbackConfig cfg;
                cfg.a = a;
                cfg.b = b;
                cfg.gamma = gamma;
                cfg.delta_t = delta_t;
                return rho_analytic(cfg, t);
            },
            label.str()};
}

StateFamily no_feedback_family() {
    return {[](double gamma, double t) { return rho_no_feedback(gamma, t); }, "no-feedback"};
}

namespace {

void check_step(double gamma, double h) {
    if (!(h > 0.0)) {
        throw std::invalid_argument("finite-difference step must be > 0");
    }
    if (!(gamma - h > 0.0)) {
        throw std::invalid_argument("finite-difference stencil reaches gamma <= 0");
    }
}

}  // namespace

ComplexMat2 drho_dgamma(const StateFamily& family, double gamma, double t, double h) {
    check_step(gamma, h);
    const DensityMatrix up = family.eval(gamma + h, t);
    const DensityMatrix down = family.eval(gamma - h, t);
    return (up.matrix() - down.matrix()) / (2.0 * h);
}

double qfi_closed_2x2(const DensityMatrix& rho, const ComplexMat2& drho) {
    const double det = rho.det();
    if (!(det > kNearSingularDet)) {
        std::ostringstream os;
        os << "det(rho) = " << det << " too small for the closed 2x2 QFI";
        throw NumericError(NumericErrorKind::NearSingular, os.str());
    }
    const ComplexMat2 rd = rho.matrix() * drho;
    return (drho * drho).trace().real() + (rd * rd).trace().real() / det;
}

double qfi_spectral(const DensityMatrix& rho, const ComplexMat2& drho, double cutoff) {
    const HermitianEigen eig = hermitian_eigen(rho.matrix());
    double f = 0.0;
    for (int k = 0; k < 2; ++k) {
        for (int l = 0; l < 2; ++l) {
            const double denom = eig.values[k] + eig.values[l];
            if (denom <= cutoff) {
                continue;
            }
            const cplx elem = eig.vectors[k].dot(drho * eig.vectors[l]);
            f += 2.0 * std::norm(elem) / denom;
        }
    }
    return f;
}

double qfi_spectral_family(const StateFamily& family, double gamma, double t, double h,
                           double cutoff) {
    check_step(gamma, h);
    const HermitianEigen mid = hermitian_eigen(family.eval(gamma, t).matrix());
    HermitianEigen up = hermitian_eigen(family.eval(gamma + h, t).matrix());
    HermitianEigen down = hermitian_eigen(family.eval(gamma - h, t).matrix());

    // Align eigenvector phases with the central decomposition.
    for (HermitianEigen* side : {&up, &down}) {
        for (int k = 0; k < 2; ++k) {
            const cplx overlap = mid.vectors[k].dot(side->vectors[k]);
            if (std::abs(overlap) > 0.0) {
                side->vectors[k] *= std::conj(overlap) / std::abs(overlap);
            }
        }
    }

    double f = 0.0;
    for (int k = 0; k < 2; ++k) {
        const double lambda = mid.values[k];
        if (lambda > cutoff) {
            const double dl = (up.values[k] - down.values[k]) / (2.0 * h);
            f += dl * dl / lambda;
        }
    }
    for (int k = 0; k < 2; ++k) {
        for (int l = 0; l < 2; ++l) {
            if (k == l) {
                continue;
            }
            const double sum = mid.values[k] + mid.values[l];
            if (sum <= cutoff) {
                continue;
            }
            const Vec2 dvec = (up.vectors[l] - down.vectors[l]) / (2.0 * h);
            const double diff = mid.values[k] - mid.values[l];
            f += 2.0 * diff * diff / sum * std::norm(mid.vectors[k].dot(dvec));
        }
    }
    return f;
}

double qfi_pure(const PureFamily& psi, double gamma, double h) {
    check_step(gamma, h);
    const Vec2 mid = psi(gamma);
    const Vec2 up = psi(gamma + h);
    const Vec2 down = psi(gamma - h);
    for (const Vec2* v : {&mid, &up, &down}) {
        if (std::abs(v->norm() - 1.0) > 1e-10) {
            throw std::invalid_argument("qfi_pure: family is not normalized");
        }
    }
    const Vec2 d = (up - down) / (2.0 * h);
    return 4.0 * (d.squaredNorm() - std::norm(d.dot(mid)));
}

double classical_fisher_projective(const StateFamily& family, double gamma, double t,
                                   double h) {
    check_step(gamma, h);
    const DensityMatrix mid = family.eval(gamma, t);
    const DensityMatrix up = family.eval(gamma + h, t);
    const DensityMatrix down = family.eval(gamma - h, t);
    double f = 0.0;
    for (int k = 0; k < 2; ++k) {
        const double p = mid.matrix()(k, k).real();
        if (p < kProbabilityCutoff) {
            continue;
        }
        const double dp = (up.matrix()(k, k).real() - down.matrix()(k, k).real()) / (2.0 * h);
        f += dp * dp / p;
    }
    return f;
}

double classical_fisher_projective(const StateFamily& family, double gamma, double t) {
    return classical_fisher_projective(family, gamma, t, default_step(gamma));
}

double fisher_projective_closed(double a, double b, double gamma, double t) {
    return fisher_projective_from_factor(feedback_factor(a, b), gamma, t);
}

double fisher_projective_from_factor(double k2, double gamma, double t) {
    const double decay = std::exp(-gamma * t * k2);
    return decay * t * t * k2 * k2 / (2.0 - decay);
}

FisherResult quantum_fisher(const StateFamily& family, double gamma, double t, double h) {
    const DensityMatrix rho = family.eval(gamma, t);
    const ComplexMat2 drho = drho_dgamma(family, gamma, t, h);
    FisherResult out;
    out.gamma = gamma;
    out.t = t;
    if (rho.det() > kNearSingularDet) {
        out.value = qfi_closed_2x2(rho, drho);
        out.method = FisherMethod::Closed2x2;
    } else {
        out.value = qfi_spectral(rho, drho);
        out.method = FisherMethod::Spectral;
    }
    return out;
}

FisherResult quantum_fisher(const StateFamily& family, double gamma, double t) {
    return quantum_fisher(family, gamma, t, default_step(gamma));
}

RatePeak fisher_rate_peak(double a, double b, double gamma) {
    return fisher_rate_peak_from_factor(feedback_factor(a, b), gamma);
}

RatePeak fisher_rate_peak_from_factor(double k2, double gamma) {
    if (!(gamma > 0.0)) {
        throw std::invalid_argument("fisher_rate_peak: gamma must be > 0");
    }
    if (!(k2 > 0.0)) {
        throw std::invalid_argument("fisher_rate_peak: feedback factor must be > 0");
    }
    RatePeak out;
    out.feedback_factor = k2;
    out.t_approx = 1.0 / (gamma * k2);
    out.rate_approx = k2 / ((2.0 * std::numbers::e - 1.0) * gamma);

    const auto rate = [&](double t) { return fisher_projective_from_factor(k2, gamma, t) / t; };
    const double t_hi = 10.0 * out.t_approx;
    const auto best = golden_section_maximize(rate, 1e-12 * t_hi, t_hi, 1e-10 * t_hi);
    out.t_numeric = best.x;
    out.rate_numeric = best.value;
    return out;
}

}  // namespace ptqfi
