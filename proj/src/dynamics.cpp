#include "ptqfi/dynamics.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ptqfi {

namespace {

constexpr double kSeriesThreshold = 1e-4;
constexpr double kSingularDenominator = 1e-9;

// cos(q) and sin(q)/q, or their hyperbolic counterparts.
struct Trig {
    double c;
    double sinc;
};

Trig circular(double q) {
    if (q < kSeriesThreshold) {
        const double q2 = q * q;
        return {1.0 - q2 / 2.0 + q2 * q2 / 24.0, 1.0 - q2 / 6.0 + q2 * q2 / 120.0};
    }
    return {std::cos(q), std::sin(q) / q};
}

Trig hyperbolic(double q) {
    if (q < kSeriesThreshold) {
        const double q2 = q * q;
        return {1.0 + q2 / 2.0 + q2 * q2 / 24.0, 1.0 + q2 / 6.0 + q2 * q2 / 120.0};
    }
    return {std::cosh(q), std::sinh(q) / q};
}

void require_undriven(const FeedbackConfig& cfg) {
    cfg.validate();
    if (cfg.omega != 0.0) {
        throw std::invalid_argument("analytic solution requires omega = 0");
    }
}

cplx coherence_coefficient(double k, double s) {
    const double denom = s * s - k * k;
    if (std::abs(denom) < kSingularDenominator) {
        std::ostringstream os;
        os << "analytic coefficient diverges: s^2 - K^2 = " << denom << " (K = " << k
           << ", s = " << s << ")";
        throw NumericError(NumericErrorKind::SingularCoefficient, os.str());
    }
    return kI * (k * s / denom);
}

}  // namespace

double AnalyticSolution::rho11(double t) const {
    return 1.0 - 0.5 * std::exp(-gamma * gamma_factor() * t);
}

cplx AnalyticSolution::rho12(double t) const {
    const double k2 = gamma_factor();
    const double s2 = transfer_amplitude * transfer_amplitude;
    const double fast = std::exp(-gamma * k2 * t);
    const double slow = std::exp(-0.5 * gamma * (k2 + s2) * t);
    return coefficient * fast + (0.5 - coefficient) * slow;
}

DensityMatrix AnalyticSolution::at(double t) const {
    if (!(t >= 0.0)) {
        throw std::invalid_argument("analytic solution: t must be >= 0");
    }
    const double p = rho11(t);
    const cplx c = rho12(t);
    ComplexMat2 m;
    m << p, c, std::conj(c), 1.0 - p;
    return DensityMatrix(m);
}

AnalyticSolution analytic_solution(const FeedbackConfig& cfg) {
    return analytic_solution(cfg, cfg.regime().kind);
}

AnalyticSolution analytic_solution(const FeedbackConfig& cfg, Regime formula) {
    require_undriven(cfg);
    const double a = cfg.a * cfg.delta_t;
    const double b = cfg.b * cfg.delta_t;
    const double d = (a - b) * (a + b);

    AnalyticSolution sol;
    sol.gamma = cfg.gamma;
    sol.regime = classify_regime(a, b);

    switch (formula) {
    case Regime::Unbroken: {
        if (!(d > 0.0)) {
            throw std::invalid_argument("unbroken formula needs a^2 > b^2");
        }
        const Trig tr = circular(std::sqrt(d));
        sol.feedback_amplitude = tr.c + b * tr.sinc;
        sol.transfer_amplitude = a * tr.sinc;
        sol.coefficient = coherence_coefficient(sol.feedback_amplitude, sol.transfer_amplitude);
        break;
    }
    case Regime::Broken: {
        if (!(d < 0.0)) {
            throw std::invalid_argument("broken formula needs a^2 < b^2");
        }
        const Trig tr = hyperbolic(std::sqrt(-d));
        sol.feedback_amplitude = tr.c + b * tr.sinc;
        sol.transfer_amplitude = a * tr.sinc;
        sol.coefficient = coherence_coefficient(sol.feedback_amplitude, sol.transfer_amplitude);
        break;
    }
    case Regime::ExceptionalPoint: {
        // B^2 = 0, so U = I - iB: K = 1 + b, s = a with a^2 = b^2.
        const double denom = 2.0 * b + 1.0;
        if (std::abs(denom) < kSingularDenominator) {
            throw NumericError(NumericErrorKind::SingularCoefficient,
                               "exceptional-point coefficient diverges at b = -1/2");
        }
        sol.feedback_amplitude = 1.0 + b;
        sol.transfer_amplitude = std::copysign(std::abs(b), a);
        sol.coefficient = -kI * ((1.0 + b) * sol.transfer_amplitude / denom);
        break;
    }
    }
    return sol;
}

DensityMatrix rho_analytic(const FeedbackConfig& cfg, double t) {
    return analytic_solution(cfg).at(t);
}

DensityMatrix rho_no_feedback(double gamma, double t) {
    if (!(gamma > 0.0)) {
        throw std::invalid_argument("rho_no_feedback: gamma must be > 0");
    }
    if (!(t >= 0.0)) {
        throw std::invalid_argument("rho_no_feedback: t must be >= 0");
    }
    const double decay = std::exp(-gamma * t);
    ComplexMat2 m;
    m << 1.0 - 0.5 * decay, 0.5 * std::sqrt(decay), 0.5 * std::sqrt(decay), 0.5 * decay;
    return DensityMatrix(m);
}

DensityMatrix initial_superposition() {
    ComplexMat2 m;
    m << 0.5, 0.5, 0.5, 0.5;
    return DensityMatrix(m);
}

double feedback_factor(double a, double b) {
    const double d = (a - b) * (a + b);
    const PtRegime regime = classify_regime(a, b);
    double k = 1.0 + b;
    if (regime.kind == Regime::Unbroken) {
        const Trig tr = circular(std::sqrt(d));
        k = tr.c + b * tr.sinc;
    } else if (regime.kind == Regime::Broken) {
        const Trig tr = hyperbolic(std::sqrt(-d));
        k = tr.c + b * tr.sinc;
    }
    return k * k;
}

ComplexMat2 feedback_propagator(const FeedbackConfig& cfg) {
    return mat_exp_2x2(-kI * cfg.delta_t * feedback_operator(cfg.a, cfg.b));
}

MasterEquation::MasterEquation(const FeedbackConfig& cfg) : cfg_(cfg) {
    cfg_.validate();
    hamiltonian_ = cfg_.omega * ops::sigma_x();
    jump_ = feedback_propagator(cfg_) * ops::sigma_minus();
    jump_dag_ = jump_.adjoint();
    jump_norm_ = jump_dag_ * jump_;
}

ComplexMat2 MasterEquation::rhs(const ComplexMat2& rho) const {
    const ComplexMat2 unitary = -kI * (hamiltonian_ * rho - rho * hamiltonian_);
    const ComplexMat2 dissipator =
        jump_ * rho * jump_dag_ - 0.5 * (jump_norm_ * rho + rho * jump_norm_);
    return unitary + cfg_.gamma * dissipator;
}

ComplexMat2 lindblad_rhs(const ComplexMat2& rho, const FeedbackConfig& cfg) {
    return MasterEquation(cfg).rhs(rho);
}

DensityMatrix integrate_master(const FeedbackConfig& cfg, const DensityMatrix& rho0,
                               double t_final, double dt) {
    if (!(dt > 0.0)) {
        throw std::invalid_argument("integrate_master: dt must be > 0");
    }
    if (!(t_final >= 0.0)) {
        throw std::invalid_argument("integrate_master: t_final must be >= 0");
    }
    if (t_final == 0.0) {
        return rho0;
    }
    const MasterEquation eq(cfg);
    const auto steps = static_cast<long>(std::ceil(t_final / dt));
    const double h = t_final / static_cast<double>(steps);
    const double trace0 = rho0.matrix().trace().real();

    ComplexMat2 rho = rho0.matrix();
    for (long n = 0; n < steps; ++n) {
        const ComplexMat2 k1 = eq.rhs(rho);
        const ComplexMat2 k2 = eq.rhs(rho + (0.5 * h) * k1);
        const ComplexMat2 k3 = eq.rhs(rho + (0.5 * h) * k2);
        const ComplexMat2 k4 = eq.rhs(rho + h * k3);
        rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        rho = 0.5 * (rho + rho.adjoint()).eval();

        const double drift = std::abs(rho.trace().real() - trace0);
        if (drift > kTraceDriftLimit || !is_finite(rho)) {
            std::ostringstream os;
            os << "trace drifted by " << drift << " at step " << n << " (dt = " << h << ")";
            throw NumericError(NumericErrorKind::TraceDrift, os.str());
        }
    }
    return DensityMatrix(rho);
}

}  // namespace ptqfi
