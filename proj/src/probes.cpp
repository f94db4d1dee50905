#include "ptqfi/probes.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ptqfi {

void ProbeConfig::validate() const {
    if (!std::isfinite(theta) || !std::isfinite(gamma) || !std::isfinite(t) ||
        !std::isfinite(omega) || !std::isfinite(total_time)) {
        throw std::invalid_argument("probe config: non-finite parameter");
    }
    if (n_qubits < 1) {
        throw std::invalid_argument("probe config: n_qubits must be >= 1");
    }
    if (gamma <= 0.0) {
        throw std::invalid_argument("probe config: gamma must be > 0");
    }
    if (t < 0.0) {
        throw std::invalid_argument("probe config: t must be >= 0");
    }
    if (omega < 0.0) {
        throw std::invalid_argument("probe config: omega must be >= 0");
    }
    if (total_time <= 0.0) {
        throw std::invalid_argument("probe config: total_time must be > 0");
    }
}

namespace {

void require_undriven(const ProbeConfig& cfg) {
    cfg.validate();
    if (cfg.omega != 0.0) {
        throw std::invalid_argument("entangled probe requires omega = 0");
    }
}

double decay_exponent(const ProbeConfig& cfg) {
    return cfg.gamma * static_cast<double>(cfg.n_qubits) * cfg.t;
}

}  // namespace

EffectiveProbeState evolve_probe(const ProbeConfig& cfg) {
    require_undriven(cfg);
    const double e = std::cos(cfg.theta) * std::exp(-decay_exponent(cfg));
    const double g = std::sin(cfg.theta);
    const double norm = std::hypot(e, g);
    return {e / norm, g / norm};
}

double qfi_probe_closed(const ProbeConfig& cfg) {
    require_undriven(cfg);
    const double c = std::cos(cfg.theta);
    const double s = std::sin(cfg.theta);
    if (c == 0.0 || s == 0.0) {
        return 0.0;
    }
    // With p = c^2 / (c^2 + s^2 E), E = exp(2 gamma N t), the expression is
    // 2 (N t)^2 p (1 - p) = (N t)^2 / (2 cosh^2(z / 2)), z = ln(s^2 E / c^2).
    const double nt = static_cast<double>(cfg.n_qubits) * cfg.t;
    const double z = 2.0 * decay_exponent(cfg) + 2.0 * (std::log(std::abs(s)) - std::log(std::abs(c)));
    const double ch = std::cosh(0.5 * z);
    return nt * nt / (2.0 * ch * ch);
}

double qfi_probe_oracle(const ProbeConfig& cfg, double h) {
    require_undriven(cfg);
    const PureFamily family = [cfg](double gamma) {
        ProbeConfig shifted = cfg;
        shifted.gamma = gamma;
        const EffectiveProbeState st = evolve_probe(shifted);
        return Vec2(st.amp_g, st.amp_e);
    };
    return qfi_pure(family, cfg.gamma, h);
}

double qfi_probe_oracle(const ProbeConfig& cfg) {
    return qfi_probe_oracle(cfg, default_step(cfg.gamma));
}

double precision_bound(const ProbeConfig& cfg) {
    const double f = qfi_probe_closed(cfg);
    if (!(f > 0.0) || !(cfg.t > 0.0)) {
        std::ostringstream os;
        os << "precision bound diverges (F = " << f << ", t = " << cfg.t << ")";
        throw NumericError(NumericErrorKind::DivergentBound, os.str());
    }
    return 1.0 / ((cfg.total_time / cfg.t) * f);
}

OptimalProbe optimal_theta(std::int64_t n_qubits, double gamma, double t) {
    if (n_qubits < 1 || !(gamma > 0.0) || !(t > 0.0)) {
        throw std::invalid_argument("optimal_theta: requires N >= 1, gamma > 0, t > 0");
    }
    const double nt = static_cast<double>(n_qubits) * t;
    const double x = 2.0 * gamma * nt;
    OptimalProbe out;
    out.sin2_theta = 1.0 / (std::exp(x) + 1.0);
    out.theta = std::asin(std::sqrt(out.sin2_theta));
    out.f_max = nt * nt / 2.0;
    return out;
}

ComplexMat2 effective_hamiltonian(double omega, double gamma) {
    return omega * ops::sigma_x() - (kI * gamma) * ops::excited_projector();
}

ComplexMat2 balanced_hamiltonian(double omega, double gamma) {
    return omega * ops::sigma_x() + (kI * gamma) * ops::sigma_z();
}

HeffEigenstates eigenstates_heff(double omega, double gamma) {
    if (!(omega >= 0.0) || !(gamma > 0.0)) {
        throw std::invalid_argument("eigenstates_heff: requires omega >= 0, gamma > 0");
    }
    const cplx root = std::sqrt(cplx((omega - gamma) * (omega + gamma), 0.0));
    HeffEigenstates out;
    out.psi_minus = Vec2(-omega, kI * gamma - root);
    out.psi_plus = Vec2(-omega, kI * gamma + root);
    out.lambda_minus = root;
    out.lambda_plus = -root;
    out.coalesced = omega > 0.0 ? std::abs(omega - gamma) / omega < kCoalescenceTol : false;
    return out;
}

PureFamily eigenstate_family(double omega) {
    return [omega](double gamma) {
        const Vec2 v = eigenstates_heff(omega, gamma).psi_minus;
        return Vec2(v / v.norm());
    };
}

EigenstateQfi qfi_eigenstate(double omega, double gamma, double h) {
    if (!(gamma > 0.0) || !(omega > 0.0)) {
        throw std::invalid_argument("qfi_eigenstate: requires omega > 0, gamma > 0");
    }
    if (std::abs(omega - gamma) / omega < kCoalescenceTol) {
        throw NumericError(NumericErrorKind::ExceptionalPoint,
                           "eigenstate QFI diverges at the exceptional point omega = gamma");
    }
    if (omega < gamma) {
        throw std::invalid_argument("qfi_eigenstate: requires omega >= gamma");
    }
    EigenstateQfi out;
    out.closed = 2.0 / ((omega - gamma) * (omega + gamma));
    out.step = h > 0.0 ? h : std::min(default_step(gamma), 1e-2 * (omega - gamma));
    out.finite_difference = qfi_pure(eigenstate_family(omega), gamma, out.step);
    return out;
}

}  // namespace ptqfi
