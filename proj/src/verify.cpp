#include "ptqfi/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>

#include "ptqfi/optimize.hpp"
#include "ptqfi/probes.hpp"
#include "ptqfi/scan.hpp"

namespace ptqfi::verify {

std::string_view to_string(Status status) {
    switch (status) {
    case Status::Pass:
        return "pass";
    case Status::Fail:
        return "fail";
    case Status::Info:
        return "info";
    }
    return "unknown";
}

namespace {

constexpr double kGamma = 0.1;

struct CaptionSet {
    const char* name;
    double a;
    double b;
};

const std::vector<CaptionSet>& dynamics_sets() {
    static const std::vector<CaptionSet> sets = {
        {"fig2", 10.0 * std::sqrt(2.0), 10.0}, {"fig3", 0.8, -0.8}, {"fig4", 1.0, -2.0}};
    return sets;
}

FeedbackConfig feedback(double a, double b, double gamma = kGamma) {
    FeedbackConfig cfg;
    cfg.a = a;
    cfg.b = b;
    cfg.gamma = gamma;
    return cfg;
}

CheckResult make(std::string name, bool ok, std::string detail) {
    return {std::move(name), ok ? Status::Pass : Status::Fail, std::move(detail), {}};
}

std::string fmt_double(double x) {
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

}  // namespace

RegimeSolver default_solver() {
    return [](const FeedbackConfig& cfg, Regime r) { return analytic_solution(cfg, r); };
}

StateFamily random_full_rank_family(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const double a0 = 3.0 * u(rng), a1 = 3.0 * u(rng);
    const double b0 = 3.0 * u(rng), b1 = 3.0 * u(rng);
    const double m0 = u(rng), m1 = 2.0 * u(rng);
    return {[=](double gamma, double) {
                const double polar = a0 + a1 * gamma;
                const double azimuth = b0 + b1 * gamma;
                const double len = 0.05 + 0.85 / (1.0 + std::exp(-(m0 + m1 * gamma)));
                const double x = len * std::sin(polar) * std::cos(azimuth);
                const double y = len * std::sin(polar) * std::sin(azimuth);
                const double z = len * std::cos(polar);
                const ComplexMat2 m =
                    0.5 * (ops::identity() + x * ops::sigma_x() + y * ops::sigma_y() +
                           z * ops::sigma_z());
                return DensityMatrix(m);
            },
            "random-bloch"};
}

CheckResult rk4_oracle() {
    double worst = 0.0;
    for (const auto& set : dynamics_sets()) {
        const FeedbackConfig cfg = feedback(set.a, set.b);
        for (double t : {0.1, 1.0, 5.0, 20.0}) {
            const DensityMatrix numeric = integrate_master(cfg, initial_superposition(), t);
            worst = std::max(worst, max_abs_diff(numeric.matrix(), rho_analytic(cfg, t).matrix()));
        }
    }
    CheckResult r = make("oracle.dynamics_rk4", worst < 1e-6,
                         "max entrywise |analytic - RK4| = " + fmt_double(worst) + " (tol 1e-6)");
    r.data["max_error"] = worst;
    return r;
}

CheckResult no_feedback_oracle() {
    const FeedbackConfig cfg = feedback(0.0, 0.0);
    const DensityMatrix numeric = integrate_master(cfg, initial_superposition(), 5.0);
    const double err = max_abs_diff(numeric.matrix(), rho_no_feedback(kGamma, 5.0).matrix());
    CheckResult r = make("oracle.no_feedback_rk4", err < 1e-6,
                         "max entrywise error at t=5: " + fmt_double(err) + " (tol 1e-6)");
    r.data["max_error"] = err;
    return r;
}

CheckResult regime_continuity(const RegimeSolver& solver) {
    constexpr double q = 1e-6;
    double worst = 0.0;
    for (double b : {0.5, 1.0}) {
        const double a_ep = std::abs(b);
        const double a_unbroken = std::sqrt(b * b + q * q);
        const double a_broken = std::sqrt(b * b - q * q);
        const AnalyticSolution ep = solver(feedback(a_ep, b), Regime::ExceptionalPoint);
        const AnalyticSolution ub = solver(feedback(a_unbroken, b), Regime::Unbroken);
        const AnalyticSolution br = solver(feedback(a_broken, b), Regime::Broken);
        for (double t : {0.5, 1.0, 5.0}) {
            const ComplexMat2 mid = ep.at(t).matrix();
            worst = std::max(worst, max_abs_diff(ub.at(t).matrix(), mid));
            worst = std::max(worst, max_abs_diff(br.at(t).matrix(), mid));
        }
    }
    // Classification-driven evaluation around a = b = 1.
    for (double t : {0.5, 1.0, 5.0}) {
        const auto eval = [&](double a) {
            const FeedbackConfig cfg = feedback(a, 1.0);
            return solver(cfg, cfg.regime().kind).at(t).matrix();
        };
        const ComplexMat2 mid = eval(1.0);
        worst = std::max(worst, max_abs_diff(eval(1.0 + 1e-6), mid));
        worst = std::max(worst, max_abs_diff(eval(1.0 - 1e-6), mid));
    }
    CheckResult r = make("continuity.regimes", worst < 1e-4,
                         "max entrywise jump across regimes = " + fmt_double(worst) +
                             " (tol 1e-4)");
    r.data["max_jump"] = worst;
    return r;
}

CheckResult physicality_sweep() {
    std::size_t checked = 0;
    std::string first_failure;
    for (int fig = 2; fig <= 7; ++fig) {
        const FigureSpec fs = figure_spec(fig);
        const AnalyticSolution sol = analytic_solution(feedback(fs.a, fs.b, fs.gamma));
        for (int i = 0; i <= 5000; ++i) {
            const double t = 50.0 * i / 5000.0;
            ComplexMat2 m;
            const cplx c = sol.rho12(t);
            m << sol.rho11(t), c, std::conj(c), 1.0 - sol.rho11(t);
            ++checked;
            if (auto why = DensityMatrix::violation(m); why && first_failure.empty()) {
                first_failure = "fig" + std::to_string(fig) + " t=" + fmt_double(t) + ": " + *why;
            }
        }
    }
    CheckResult r = make("physicality.sweep", first_failure.empty(),
                         first_failure.empty()
                             ? std::to_string(checked) + " states on t in [0, 50] are physical"
                             : first_failure);
    r.data["states"] = checked;
    return r;
}

CheckResult qfi_triangle(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> gdist(0.2, 2.0);
    double worst_closed = 0.0;
    double worst_family = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const StateFamily fam = random_full_rank_family(rng);
        const double gamma = gdist(rng);
        const double h = default_step(gamma);
        const DensityMatrix rho = fam.eval(gamma, 0.0);
        const ComplexMat2 d = drho_dgamma(fam, gamma, 0.0, h);
        const double spectral = qfi_spectral(rho, d);
        worst_closed = std::max(worst_closed, std::abs(qfi_closed_2x2(rho, d) - spectral));
        worst_family = std::max(
            worst_family, std::abs(qfi_spectral_family(fam, gamma, 0.0, h) - spectral) /
                              std::max(spectral, 1.0));
    }
    CheckResult r = make("qfi.triangle", worst_closed < 1e-8 && worst_family < 1e-6,
                         "|closed - spectral| = " + fmt_double(worst_closed) +
                             " (tol 1e-8); eigen-FD route rel. dev. " +
                             fmt_double(worst_family) + " (tol 1e-6)");
    r.data["closed_vs_spectral"] = worst_closed;
    r.data["spectral_vs_eigen_fd"] = worst_family;
    return r;
}

CheckResult fisher_below_qfi() {
    double worst = -1e300;
    for (const auto& set : dynamics_sets()) {
        const StateFamily fam = feedback_family(set.a, set.b);
        for (double t : {0.5, 1.0, 2.0, 5.0, 10.0}) {
            const double cl = classical_fisher_projective(fam, kGamma, t);
            const double q = qfi_spectral(fam.eval(kGamma, t),
                                          drho_dgamma(fam, kGamma, t, default_step(kGamma)));
            worst = std::max(worst, cl - q);
        }
    }
    CheckResult r = make("fisher.below_qfi", worst <= 1e-8,
                         "max(f - F) = " + fmt_double(worst) + " (must be <= 1e-8)");
    r.data["max_excess"] = worst;
    return r;
}

CheckResult projective_closed_form() {
    const double a = 10.0 * std::sqrt(2.0);
    const double b = 10.0;
    const double fd = classical_fisher_projective(feedback_family(a, b), kGamma, 1.0);
    const double closed = fisher_projective_closed(a, b, kGamma, 1.0);
    const double baseline_fd = classical_fisher_projective(no_feedback_family(), kGamma, 10.0);
    const double baseline = fisher_projective_from_factor(1.0, kGamma, 10.0);
    const double err = std::max(std::abs(fd - closed), std::abs(baseline_fd - baseline) / baseline);
    CheckResult r = make("fisher.projective_closed_form", err < 1e-8,
                         "finite-difference vs closed projective Fisher, max dev " +
                             fmt_double(err) + " (tol 1e-8)");
    r.data["fig2_t1"] = closed;
    r.data["baseline_t10"] = baseline;
    return r;
}

CheckResult step_stability() {
    double worst = 0.0;
    for (const auto& set : dynamics_sets()) {
        const StateFamily fam = feedback_family(set.a, set.b);
        for (double t : {1.0, 5.0, 20.0}) {
            const double h = default_step(kGamma);
            const double full = quantum_fisher(fam, kGamma, t, h).value;
            const double half = quantum_fisher(fam, kGamma, t, 0.5 * h).value;
            worst = std::max(worst, std::abs(full - half) / std::abs(full));
        }
    }
    CheckResult r = make("fd.step_stability", worst < 1e-6,
                         "relative change when halving h: " + fmt_double(worst) + " (tol 1e-6)");
    r.data["max_relative_change"] = worst;
    return r;
}

CheckResult two_peaks() {
    const Grid grid = default_figure_grid();
    bool ok = true;
    std::ostringstream detail;
    CheckResult r{"claim.two_peaks", Status::Pass, "", nlohmann::json::object()};
    for (int fig : {2, 3, 4}) {
        const FigureData d = run_figure(fig, grid);
        const auto a = find_peaks(d.with_feedback.grid, d.with_feedback.values);
        const auto b = find_peaks(d.without_feedback.grid, d.without_feedback.values);
        ok = ok && a.size() == 2 && b.size() == 1;
        detail << "fig" << fig << ": line A " << a.size() << " peak(s), line B " << b.size()
               << "; ";
        nlohmann::json peaks = nlohmann::json::array();
        for (const auto& p : a) {
            peaks.push_back({{"t", p.x}, {"F", p.value}});
        }
        r.data["fig" + std::to_string(fig)] = peaks;
    }
    r.status = ok ? Status::Pass : Status::Fail;
    r.detail = detail.str() + "expected 2 and 1 on t in (0, 50]";
    return r;
}

CheckResult short_time_rate() {
    const Grid grid = default_figure_grid();
    bool ok = true;
    std::ostringstream detail;
    CheckResult r{"claim.short_time_rate", Status::Pass, "", nlohmann::json::object()};
    for (int fig : {5, 6, 7}) {
        const FigureData d = run_figure(fig, grid);
        const std::size_t window = d.with_feedback.values.size() / 5;
        bool exceeds = false;
        for (std::size_t i = 0; i < window; ++i) {
            exceeds = exceeds || d.with_feedback.values[i] > d.without_feedback.values[i];
        }
        ok = ok && exceeds;
        detail << "fig" << fig << (exceeds ? " advantage" : " no advantage") << "; ";
        r.data["fig" + std::to_string(fig)] = {
            {"advantage", exceeds}, {"feedback_factor", feedback_factor(d.spec.a, d.spec.b)}};
    }
    r.status = ok ? Status::Pass : Status::Fail;
    r.detail = detail.str() + "first 20% of the grid";
    return r;
}

CheckResult rate_peak_approximation() {
    bool ok = true;
    std::ostringstream detail;
    CheckResult r{"claim.rate_peak", Status::Pass, "", nlohmann::json::array()};
    for (double k2 : {0.25, 1.0, 2.0}) {
        const RatePeak p = fisher_rate_peak_from_factor(k2, kGamma);
        const double rate_dev = std::abs(p.rate_approx - p.rate_numeric) / p.rate_numeric;
        const double t_dev = std::abs(p.t_approx - p.t_numeric) / p.t_numeric;
        ok = ok && rate_dev <= 0.10 && t_dev <= 0.15;
        detail << "K^2=" << k2 << ": rate dev " << fmt_double(rate_dev) << ", argmax dev "
               << fmt_double(t_dev) << "; ";
        r.data.push_back({{"k2", k2},
                          {"t_approx", p.t_approx},
                          {"t_numeric", p.t_numeric},
                          {"rate_approx", p.rate_approx},
                          {"rate_numeric", p.rate_numeric}});
    }
    r.status = ok ? Status::Pass : Status::Fail;
    r.detail = detail.str() + "tolerances 10% (rate), 15% (argmax)";
    return r;
}

CheckResult eigenstate_qfi() {
    constexpr double gamma = 1.0;
    double worst = 0.0;
    CheckResult r{"claim.eigenstate_qfi", Status::Pass, "", nlohmann::json::array()};
    for (double ratio : {1.5, 2.0, 5.0, 10.0}) {
        const EigenstateQfi q = qfi_eigenstate(ratio * gamma, gamma);
        worst = std::max(worst, std::abs(q.finite_difference - q.closed) / q.closed);
        r.data.push_back({{"omega_over_gamma", ratio},
                          {"closed", q.closed},
                          {"finite_difference", q.finite_difference},
                          {"ratio", q.finite_difference / q.closed}});
    }
    r.status = worst < 1e-5 ? Status::Pass : Status::Fail;
    r.detail = "pure-state QFI of normalized psi_- vs 2/(Omega^2-gamma^2): rel. dev " +
               fmt_double(worst) + " (tol 1e-5)";
    return r;
}

CheckResult eigenstate_divergence() {
    constexpr double gamma = 1.0;
    std::vector<double> eps = {1e-2, 1e-3, 1e-4};
    std::vector<double> fd;
    std::vector<double> closed;
    for (double e : eps) {
        const EigenstateQfi q = qfi_eigenstate(gamma * (1.0 + e), gamma);
        fd.push_back(q.finite_difference);
        closed.push_back(q.closed);
    }
    double worst = 0.0;
    for (std::size_t i = 0; i + 1 < eps.size(); ++i) {
        worst = std::max(worst, std::abs(fd[i + 1] / fd[i] - 10.0) / 10.0);
        worst = std::max(worst, std::abs(closed[i + 1] / closed[i] - 10.0) / 10.0);
    }
    CheckResult r = make("claim.eigenstate_divergence", worst < 0.01,
                         "F(eps)/F(10 eps) deviates from 10 by " + fmt_double(worst) +
                             " (tol 1%)");
    r.data["eps"] = eps;
    r.data["finite_difference"] = fd;
    r.data["closed"] = closed;
    r.data["eps_times_fd"] = {eps[0] * fd[0], eps[1] * fd[1], eps[2] * fd[2]};
    return r;
}

CheckResult eigenstate_residual() {
    double worst = 0.0;
    for (auto [omega, gamma] : {std::pair{2.0, 1.0}, {5.0, 1.0}, {0.5, 1.0}, {3.0, 0.1}}) {
        const HeffEigenstates e = eigenstates_heff(omega, gamma);
        const ComplexMat2 h = balanced_hamiltonian(omega, gamma);
        worst = std::max(worst, (h * e.psi_minus - e.lambda_minus * e.psi_minus).norm());
        worst = std::max(worst, (h * e.psi_plus - e.lambda_plus * e.psi_plus).norm());
    }
    return make("eigen.residual", worst < 1e-10,
                "max |H psi - lambda psi| = " + fmt_double(worst) + " (tol 1e-10)");
}

CheckResult optimal_theta_oracle(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> gdist(0.01, 1.0);
    std::uniform_int_distribution<int> ndist(1, 50);
    std::uniform_real_distribution<double> tdist(0.1, 3.0);
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        const double gamma = gdist(rng);
        const int n = ndist(rng);
        const double t = std::min(tdist(rng), 5.0 / (gamma * n));
        const OptimalProbe best = optimal_theta(n, gamma, t);
        const long double nt = static_cast<long double>(n) * t;
        const long double e = std::exp(2.0L * gamma * nt);
        const auto f = [&](long double u) {
            const long double d = (1.0L - u) + u * e;
            return 2.0L * u * (1.0L - u) * e * nt * nt / (d * d);
        };
        const auto found = golden_section_maximize(f, 0.0L, 1.0L, 1e-13L);
        worst = std::max(worst, std::abs(static_cast<double>(found.x) - best.sin2_theta));
    }
    return make("probes.optimal_theta", worst < 1e-9,
                "|closed-form sin^2 theta* - golden-section argmax| = " + fmt_double(worst) +
                    " (tol 1e-9)");
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const auto n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(x[i]);
        const double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

CheckResult heisenberg_scaling() {
    std::vector<double> ns, fmax, bound;
    for (int n = 2; n <= 1024; n *= 2) {
        const OptimalProbe best = optimal_theta(n, kGamma, 1.0);
        ProbeConfig cfg;
        cfg.n_qubits = n;
        cfg.gamma = kGamma;
        cfg.t = 1.0;
        cfg.theta = best.theta;
        ns.push_back(n);
        fmax.push_back(qfi_probe_closed(cfg));
        bound.push_back(precision_bound(cfg));
    }
    const double slope_f = loglog_slope(ns, fmax);
    const double slope_b = loglog_slope(ns, bound);
    CheckResult r = make("probes.heisenberg_scaling",
                         std::abs(slope_f - 2.0) <= 0.01 && std::abs(slope_b + 2.0) <= 0.1,
                         "slope log F_max vs log N = " + fmt_double(slope_f) +
                             " (2 +- 0.01); bound slope = " + fmt_double(slope_b) + " (-2 +- 0.1)");
    r.data["slope_fmax"] = slope_f;
    r.data["slope_bound"] = slope_b;
    return r;
}

CheckResult quantum_limit_scaling() {
    constexpr double decay = 5.0;  // gamma N t held fixed
    std::vector<double> ns, bound;
    for (int n = 4; n <= 256; n *= 2) {
        ProbeConfig cfg;
        cfg.n_qubits = n;
        cfg.gamma = kGamma;
        cfg.theta = std::numbers::pi / 4.0;
        cfg.t = decay / (kGamma * n);
        ns.push_back(n);
        bound.push_back(precision_bound(cfg));
    }
    const double slope = loglog_slope(ns, bound);
    CheckResult r = make("probes.quantum_limit", std::abs(slope + 1.0) <= 0.1,
                         "theta=pi/4, gamma N t = 5: bound slope = " + fmt_double(slope) +
                             " (-1 +- 0.1)");
    r.data["slope"] = slope;
    return r;
}

CheckResult probe_prefactor() {
    std::vector<double> ratios;
    for (int i = 1; i <= 5; ++i) {
        const double theta = i * std::numbers::pi / 12.0;
        for (double x : {0.1, 0.5, 1.0, 2.0, 3.0}) {
            ProbeConfig cfg;
            cfg.theta = theta;
            cfg.gamma = kGamma;
            cfg.t = x / kGamma;
            ratios.push_back(qfi_probe_oracle(cfg) / qfi_probe_closed(cfg));
        }
    }
    const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
    const double mean = 0.5 * (*lo + *hi);
    const double spread = (*hi - *lo) / mean;
    CheckResult r = make("finding.probe_qfi_prefactor", spread < 1e-6,
                         "pure-state QFI / closed-form probe QFI = " + fmt_double(mean) +
                             ", relative spread " + fmt_double(spread) + " (tol 1e-6)");
    r.data["ratio"] = mean;
    r.data["spread"] = spread;
    return r;
}

CheckResult heisenberg_constant() {
    CheckResult r{"finding.heisenberg_constant", Status::Info, "", nlohmann::json::array()};
    std::ostringstream detail;
    detail << "N^2 (delta gamma)^2 at sin^2 theta = exp(-2 gamma N), t = T = 1 (claimed 0.5): ";
    for (int n : {4, 16, 64, 256}) {
        ProbeConfig cfg;
        cfg.n_qubits = n;
        cfg.gamma = kGamma;
        cfg.t = 1.0;
        cfg.total_time = 1.0;
        cfg.theta = std::asin(std::exp(-kGamma * n));
        const double closed = n * static_cast<double>(n) * precision_bound(cfg);
        const double oracle = n * static_cast<double>(n) / qfi_probe_oracle(cfg);
        r.data.push_back({{"n", n}, {"closed_form", closed}, {"pure_state_oracle", oracle}});
        detail << "N=" << n << ": " << fmt_double(closed) << " (oracle " << fmt_double(oracle)
               << "); ";
    }
    r.detail = detail.str();
    return r;
}

std::vector<CheckResult> run_all() {
    using Check = CheckResult (*)();
    const std::vector<Check> checks = {
        rk4_oracle,
        no_feedback_oracle,
        [] { return regime_continuity(); },
        physicality_sweep,
        [] { return qfi_triangle(); },
        fisher_below_qfi,
        projective_closed_form,
        step_stability,
        two_peaks,
        short_time_rate,
        rate_peak_approximation,
        eigenstate_qfi,
        eigenstate_divergence,
        eigenstate_residual,
        [] { return optimal_theta_oracle(); },
        heisenberg_scaling,
        quantum_limit_scaling,
        probe_prefactor,
        heisenberg_constant,
    };
    std::vector<CheckResult> out;
    out.reserve(checks.size());
    for (Check c : checks) {
        const auto start = std::chrono::steady_clock::now();
        CheckResult r;
        try {
            r = c();
        } catch (const std::exception& e) {
            r = {"(check aborted)", Status::Fail, e.what(), {}};
        }
        const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
        r.seconds = dt.count();
        out.push_back(std::move(r));
    }
    return out;
}

bool all_passed(const std::vector<CheckResult>& results) {
    return std::none_of(results.begin(), results.end(),
                        [](const CheckResult& r) { return r.status == Status::Fail; });
}

nlohmann::json to_json(const std::vector<CheckResult>& results) {
    nlohmann::json checks = nlohmann::json::array();
    std::size_t passed = 0, failed = 0, info = 0;
    for (const auto& r : results) {
        checks.push_back(
            {{"name", r.name},
             {"status", to_string(r.status)},
             {"detail", r.detail},
             {"data", r.data},
             {"seconds", r.seconds}});
        passed += r.status == Status::Pass;
        failed += r.status == Status::Fail;
        info += r.status == Status::Info;
    }
    return {{"checks", checks},
            {"summary", {{"passed", passed}, {"failed", failed}, {"info", info}}}};
}

}  // namespace ptqfi::verify
