#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "ptqfi/dynamics.hpp"
#include "ptqfi/estimation.hpp"

/**
 * @file
 * Named self-checks: oracle cross-checks, physicality sweeps and the
 * structural claims about the feedback and probe models. Each check
 * reports pass, fail or info (findings that are recorded, not asserted).
 */
namespace ptqfi::verify {

enum class Status { Pass, Fail, Info };

std::string_view to_string(Status status);

struct CheckResult {
    std::string name;
    Status status = Status::Pass;
    std::string detail;
    nlohmann::json data = nlohmann::json::object();
    double seconds = 0.0;
};

/// Regime-specific analytic solver; swapped out by tests to confirm that
/// the continuity check catches a corrupted formula.
using RegimeSolver = std::function<AnalyticSolution(const FeedbackConfig&, Regime)>;

RegimeSolver default_solver();

/// Full-rank family (I + r(gamma) . sigma) / 2 with |r| <= 0.9 and a
/// randomly drawn smooth dependence of r on gamma; t is ignored.
StateFamily random_full_rank_family(std::mt19937_64& rng);

CheckResult rk4_oracle();
CheckResult no_feedback_oracle();
CheckResult regime_continuity(const RegimeSolver& solver = default_solver());
CheckResult physicality_sweep();
CheckResult qfi_triangle(std::uint64_t seed = 20240607);
CheckResult fisher_below_qfi();
CheckResult projective_closed_form();
CheckResult step_stability();
CheckResult two_peaks();
CheckResult short_time_rate();
CheckResult rate_peak_approximation();
CheckResult eigenstate_qfi();
CheckResult eigenstate_divergence();
CheckResult eigenstate_residual();
CheckResult optimal_theta_oracle(std::uint64_t seed = 7);
CheckResult heisenberg_scaling();
CheckResult quantum_limit_scaling();
CheckResult probe_prefactor();
CheckResult heisenberg_constant();

std::vector<CheckResult> run_all();

bool all_passed(const std::vector<CheckResult>& results);

nlohmann::json to_json(const std::vector<CheckResult>& results);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace ptqfi::verify
