#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "ptqfi/errors.hpp"
#include "ptqfi/probes.hpp"

using namespace ptqfi;

namespace {

ProbeConfig probe(double theta, std::int64_t n, double gamma, double t) {
    ProbeConfig c;
    c.theta = theta;
    c.n_qubits = n;
    c.gamma = gamma;
    c.t = t;
    return c;
}

}  // namespace

TEST(Probe, NoJumpEvolutionDampsExcitedBranch) {
    const EffectiveProbeState s = evolve_probe(probe(std::numbers::pi / 4, 3, 0.2, 1.5));
    const double damp = std::exp(-0.2 * 3 * 1.5);
    const double norm = std::sqrt(0.5 * damp * damp + 0.5);
    EXPECT_NEAR(s.amp_e, std::sqrt(0.5) * damp / norm, 1e-14);
    EXPECT_NEAR(s.amp_g, std::sqrt(0.5) / norm, 1e-14);
}

TEST(Probe, ClosedFormHandValue) {
    // theta = pi/4, x = gamma N t = 0.5: (N t)^2 / (2 cosh^2 x).
    const ProbeConfig c = probe(std::numbers::pi / 4, 5, 0.1, 1.0);
    EXPECT_NEAR(qfi_probe_closed(c), 25.0 / (2.0 * std::pow(std::cosh(0.5), 2)), 1e-12);
}

TEST(Probe, ClosedFormFiniteForStrongDecay) {
    const double f = qfi_probe_closed(probe(std::numbers::pi / 4, 1000, 1.0, 10.0));
    EXPECT_TRUE(std::isfinite(f));
    EXPECT_GE(f, 0.0);
}

TEST(Probe, OracleIsTwiceTheClosedForm) {
    for (double theta : {0.3, 0.9, 1.2}) {
        const ProbeConfig c = probe(theta, 4, 0.1, 2.0);
        EXPECT_NEAR(qfi_probe_oracle(c) / qfi_probe_closed(c), 2.0, 1e-6);
    }
}

TEST(Probe, BoundDivergesWithoutInformation) {
    try {
        precision_bound(probe(0.0, 2, 0.1, 1.0));
        FAIL() << "expected a numeric error";
    } catch (const NumericError& e) {
        EXPECT_EQ(e.kind(), NumericErrorKind::DivergentBound);
    }
}

TEST(Probe, BoundCountsRepetitions) {
    ProbeConfig c = probe(0.6, 2, 0.1, 0.5);
    c.total_time = 10.0;
    EXPECT_NEAR(precision_bound(c), 1.0 / (20.0 * qfi_probe_closed(c)), 1e-15);
}

TEST(Probe, OptimalAngleIsStationary) {
    const OptimalProbe best = optimal_theta(8, 0.05, 1.5);
    const double at = qfi_probe_closed(probe(best.theta, 8, 0.05, 1.5));
    EXPECT_NEAR(at, best.f_max, 1e-10 * best.f_max);
    EXPECT_NEAR(best.f_max, 72.0, 1e-12);
    for (double d : {-1e-3, 1e-3}) {
        EXPECT_LT(qfi_probe_closed(probe(best.theta + d, 8, 0.05, 1.5)), at);
    }
}

TEST(Probe, ConfigValidation) {
    EXPECT_THROW(probe(0.3, 0, 0.1, 1.0).validate(), std::invalid_argument);
    EXPECT_THROW(probe(0.3, 1, -0.1, 1.0).validate(), std::invalid_argument);
    ProbeConfig driven = probe(0.3, 1, 0.1, 1.0);
    driven.omega = 0.5;
    EXPECT_THROW(evolve_probe(driven), std::invalid_argument);
}

TEST(Eigenstates, SatisfyBalancedEigenproblem) {
    for (auto [omega, gamma] : {std::pair{2.0, 1.0}, {0.4, 1.0}}) {
        const HeffEigenstates e = eigenstates_heff(omega, gamma);
        const ComplexMat2 h = balanced_hamiltonian(omega, gamma);
        EXPECT_LT((h * e.psi_minus - e.lambda_minus * e.psi_minus).norm(), 1e-13);
        EXPECT_LT((h * e.psi_plus - e.lambda_plus * e.psi_plus).norm(), 1e-13);
        EXPECT_FALSE(e.coalesced);
    }
}

TEST(Eigenstates, NotEigenvectorsOfDampedHamiltonian) {
    const HeffEigenstates e = eigenstates_heff(2.0, 1.0);
    const ComplexMat2 h = effective_hamiltonian(2.0, 1.0);
    const Vec2 v = h * e.psi_minus;
    // Parallel vectors would have a vanishing 2x2 determinant.
    EXPECT_GT(std::abs(v(0) * e.psi_minus(1) - v(1) * e.psi_minus(0)), 0.1);
}

TEST(Eigenstates, CoalesceAtExceptionalPoint) {
    const HeffEigenstates e = eigenstates_heff(1.0, 1.0);
    EXPECT_TRUE(e.coalesced);
    EXPECT_LT((e.psi_minus - e.psi_plus).norm(), 1e-12);
}

TEST(Eigenstates, QfiOfNormalizedFamily) {
    // Pure-state QFI of the normalized vector, derived by hand: 1 / (Omega^2 - gamma^2).
    const EigenstateQfi q = qfi_eigenstate(3.0, 1.0);
    EXPECT_NEAR(q.finite_difference, 1.0 / 8.0, 1e-8);
    EXPECT_DOUBLE_EQ(q.closed, 2.0 / 8.0);
}

TEST(Eigenstates, QfiGuards) {
    EXPECT_THROW(qfi_eigenstate(0.5, 1.0), std::invalid_argument);
    try {
        qfi_eigenstate(1.0, 1.0);
        FAIL() << "expected a numeric error";
    } catch (const NumericError& e) {
        EXPECT_EQ(e.kind(), NumericErrorKind::ExceptionalPoint);
    }
}
