#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "ptqfi/dynamics.hpp"
#include "ptqfi/errors.hpp"
#include "ptqfi/estimation.hpp"
#include "ptqfi/verify.hpp"

using namespace ptqfi;

namespace {

// (I + r sigma_z) / 2 with r = gamma: QFI = 1 / (1 - r^2).
StateFamily diagonal_family() {
    return {[](double gamma, double) {
                return DensityMatrix(0.5 * (ops::identity() + gamma * ops::sigma_z()));
            },
            "diag"};
}

// (I + r (cos phi sigma_x + sin phi sigma_y)) / 2 with fixed r and phi = gamma:
// QFI = r^2.
StateFamily rotating_family(double r) {
    return {[r](double gamma, double) {
                return DensityMatrix(0.5 * (ops::identity() + r * std::cos(gamma) * ops::sigma_x() +
                                            r * std::sin(gamma) * ops::sigma_y()));
            },
            "rot"};
}

}  // namespace

TEST(Qfi, DiagonalFamilyMatchesFisherOfPopulations) {
    for (double r : {0.0, 0.3, 0.8}) {
        const StateFamily fam = diagonal_family();
        const ComplexMat2 d = drho_dgamma(fam, r + 0.05, 0.0, 1e-5);
        const double expected = 1.0 / (1.0 - (r + 0.05) * (r + 0.05));
        const DensityMatrix rho = fam.eval(r + 0.05, 0.0);
        EXPECT_NEAR(qfi_closed_2x2(rho, d), expected, 1e-8);
        EXPECT_NEAR(qfi_spectral(rho, d), expected, 1e-8);
    }
}

TEST(Qfi, RotatingFamilyIsCoherentOnly) {
    const StateFamily fam = rotating_family(0.6);
    const double h = 1e-5;
    EXPECT_NEAR(qfi_closed_2x2(fam.eval(0.4, 0.0), drho_dgamma(fam, 0.4, 0.0, h)), 0.36, 1e-9);
    EXPECT_NEAR(qfi_spectral_family(fam, 0.4, 0.0, h), 0.36, 1e-8);
}

TEST(Qfi, PureStateRotation) {
    const PureFamily psi = [](double g) { return Vec2(std::cos(g), std::sin(g)); };
    EXPECT_NEAR(qfi_pure(psi, 0.3, 1e-5), 4.0, 1e-8);
    const PureFamily unnormalized = [](double g) { return Vec2(1.0, g); };
    EXPECT_THROW(qfi_pure(unnormalized, 0.3, 1e-5), std::invalid_argument);
}

TEST(Qfi, RandomFamiliesAgree) {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 10; ++i) {
        const StateFamily fam = verify::random_full_rank_family(rng);
        const DensityMatrix rho = fam.eval(0.7, 0.0);
        const ComplexMat2 d = drho_dgamma(fam, 0.7, 0.0, 1e-5);
        EXPECT_NEAR(qfi_closed_2x2(rho, d), qfi_spectral(rho, d), 1e-9);
    }
}

TEST(Qfi, ClosedFormRefusesPureStates) {
    const PureFamily psi = [](double g) { return Vec2(std::cos(g), std::sin(g)); };
    const StateFamily fam{[psi](double g, double) { return DensityMatrix::pure(psi(g)); }, "pure"};
    try {
        qfi_closed_2x2(fam.eval(0.2, 0.0), drho_dgamma(fam, 0.2, 0.0, 1e-5));
        FAIL() << "expected a numeric error";
    } catch (const NumericError& e) {
        EXPECT_EQ(e.kind(), NumericErrorKind::NearSingular);
    }
    const FisherResult r = quantum_fisher(fam, 0.2, 0.0);
    EXPECT_EQ(r.method, FisherMethod::Spectral);
    EXPECT_NEAR(r.value, 4.0, 1e-6);
}

TEST(Qfi, StepMustStayInDomain) {
    EXPECT_THROW(drho_dgamma(no_feedback_family(), 0.1, 1.0, 0.0), std::invalid_argument);
    EXPECT_THROW(drho_dgamma(no_feedback_family(), 0.1, 1.0, 0.2), std::invalid_argument);
}

TEST(Fisher, ProjectiveClosedFormMatchesFiniteDifference) {
    for (double t : {0.5, 3.0, 12.0}) {
        EXPECT_NEAR(classical_fisher_projective(feedback_family(4.0, 5.0), 0.1, t),
                    fisher_projective_closed(4.0, 5.0, 0.1, t),
                    1e-7 * fisher_projective_closed(4.0, 5.0, 0.1, t) + 1e-9);
    }
}

TEST(Fisher, BaselineHandValue) {
    // K = 1, gamma t = 1: e^{-1} / (2 - e^{-1}) t^2 with t = 10.
    const double e = std::exp(-1.0);
    EXPECT_NEAR(fisher_projective_from_factor(1.0, 0.1, 10.0), 100.0 * e / (2.0 - e), 1e-12);
}

TEST(Fisher, ClassicalNeverExceedsQuantum) {
    for (auto [a, b] : {std::pair{5.0, 4.0}, {1.0, 1.0}, {4.0, 5.0}, {0.0, 0.0}}) {
        const StateFamily fam = feedback_family(a, b);
        for (double t : {0.2, 2.0, 20.0}) {
            EXPECT_LE(classical_fisher_projective(fam, 0.1, t),
                      quantum_fisher(fam, 0.1, t).value + 1e-8);
        }
    }
}

TEST(Fisher, QfiVanishesAtTimeZero) {
    EXPECT_NEAR(quantum_fisher(no_feedback_family(), 0.1, 0.0).value, 0.0, 1e-10);
}

TEST(RatePeak, ApproximationFormulas) {
    const RatePeak p = fisher_rate_peak_from_factor(2.0, 0.1);
    EXPECT_NEAR(p.t_approx, 5.0, 1e-12);
    EXPECT_NEAR(p.rate_approx, 2.0 / ((2.0 * std::numbers::e - 1.0) * 0.1), 1e-12);
    // The numeric maximum is a maximum of f/t.
    const double at = fisher_projective_from_factor(2.0, 0.1, p.t_numeric) / p.t_numeric;
    EXPECT_NEAR(at, p.rate_numeric, 1e-12);
    for (double t : {0.9 * p.t_numeric, 1.1 * p.t_numeric}) {
        EXPECT_LT(fisher_projective_from_factor(2.0, 0.1, t) / t, p.rate_numeric);
    }
}
