#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "ptqfi/core.hpp"
#include "ptqfi/errors.hpp"

using namespace ptqfi;

namespace {

// Truncated Taylor series with enough terms for |m| of order a few.
ComplexMat2 taylor_exp(const ComplexMat2& m, int terms = 30) {
    ComplexMat2 sum = ComplexMat2::Identity();
    ComplexMat2 term = ComplexMat2::Identity();
    for (int k = 1; k < terms; ++k) {
        term = term * m / static_cast<double>(k);
        sum += term;
    }
    return sum;
}

ComplexMat2 random_matrix(std::mt19937_64& rng, double scale) {
    std::normal_distribution<double> n(0.0, scale);
    ComplexMat2 m;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            m(i, j) = cplx(n(rng), n(rng));
        }
    }
    return m;
}

}  // namespace

TEST(MatExp, MatchesTaylorSeries) {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 50; ++i) {
        const ComplexMat2 m = random_matrix(rng, 0.8);
        EXPECT_LT(max_abs_diff(mat_exp_2x2(m), taylor_exp(m)), 1e-12) << m;
    }
}

TEST(MatExp, SmallMuUsesSeriesAccurately) {
    ComplexMat2 m = 1e-6 * ops::sigma_x() + cplx(0.3, 0.1) * ops::identity();
    EXPECT_LT(max_abs_diff(mat_exp_2x2(m), taylor_exp(m)), 1e-14);
}

TEST(MatExp, NilpotentIsExact) {
    const ComplexMat2 m = 2.5 * ops::sigma_minus();
    ComplexMat2 expected = ComplexMat2::Identity() + m;
    EXPECT_LT(max_abs_diff(mat_exp_2x2(m), expected), 1e-15);
}

TEST(MatExp, RotationAboutX) {
    const double theta = 0.7;
    const ComplexMat2 u = mat_exp_2x2(kI * theta * ops::sigma_x());
    const ComplexMat2 expected = std::cos(theta) * ops::identity() + kI * std::sin(theta) * ops::sigma_x();
    EXPECT_LT(max_abs_diff(u, expected), 1e-15);
}

TEST(FeedbackOperator, HermitianPartGivesUnitaryPropagator) {
    const ComplexMat2 u = mat_exp_2x2(-kI * feedback_operator(1.3, 0.0));
    EXPECT_LT(max_abs_diff(u.adjoint() * u, ops::identity()), 1e-14);
}

TEST(FeedbackOperator, ImaginaryPartBreaksUnitarity) {
    const ComplexMat2 u = mat_exp_2x2(-kI * feedback_operator(1.0, 1.0));
    EXPECT_GT(max_abs_diff(u.adjoint() * u, ops::identity()), 0.1);
}

TEST(Operators, LoweringTakesExcitedToGround) {
    Vec2 e(0.0, 1.0);
    const Vec2 g = ops::sigma_minus() * e;
    EXPECT_EQ(g(0), cplx(1.0));
    EXPECT_EQ(g(1), cplx(0.0));
    EXPECT_LT(max_abs_diff(ops::sigma_z() * ops::ground_projector(), ops::ground_projector()), 1e-15);
}

TEST(HermitianEigen, ReconstructsMatrix) {
    ComplexMat2 h;
    h << 0.3, cplx(0.1, -0.2), cplx(0.1, 0.2), -0.5;
    const HermitianEigen e = hermitian_eigen(h);
    EXPECT_LE(e.values[0], e.values[1]);
    ComplexMat2 rebuilt = ComplexMat2::Zero();
    for (int k = 0; k < 2; ++k) {
        rebuilt += e.values[k] * e.vectors[k] * e.vectors[k].adjoint();
    }
    EXPECT_LT(max_abs_diff(rebuilt, h), 1e-14);
}

TEST(DensityMatrix, AcceptsMaximallyMixed) {
    const DensityMatrix rho(0.5 * ops::identity());
    EXPECT_DOUBLE_EQ(rho.ground_population(), 0.5);
    EXPECT_NEAR(rho.det(), 0.25, 1e-15);
}

TEST(DensityMatrix, RejectsBrokenInvariants) {
    ComplexMat2 not_hermitian;
    not_hermitian << 0.5, 0.1, 0.0, 0.5;
    ComplexMat2 bad_trace = 0.6 * ops::identity();
    ComplexMat2 negative;
    negative << 1.2, 0.0, 0.0, -0.2;
    for (const ComplexMat2& m : {not_hermitian, bad_trace, negative}) {
        EXPECT_TRUE(DensityMatrix::violation(m).has_value());
        try {
            DensityMatrix rho(m);
            ADD_FAILURE() << "accepted " << m;
        } catch (const NumericError& e) {
            EXPECT_EQ(e.kind(), NumericErrorKind::Unphysical);
        }
    }
}

TEST(DensityMatrix, PureStateHasZeroDeterminant) {
    const DensityMatrix rho = DensityMatrix::pure(Vec2(1.0, kI) / std::sqrt(2.0));
    EXPECT_NEAR(rho.det(), 0.0, 1e-15);
    EXPECT_NEAR(rho.coherence().imag(), -0.5, 1e-15);
}

TEST(Regime, ClassifiesFigureParameters) {
    const PtRegime fig2 = classify_regime(10.0 * std::sqrt(2.0), 10.0);
    EXPECT_EQ(fig2.kind, Regime::Unbroken);
    EXPECT_NEAR(fig2.q, 10.0, 1e-12);
    EXPECT_EQ(classify_regime(1.0, 1.0).kind, Regime::ExceptionalPoint);
    EXPECT_EQ(classify_regime(0.8, -0.8).kind, Regime::ExceptionalPoint);
    const PtRegime fig7 = classify_regime(4.0, 5.0);
    EXPECT_EQ(fig7.kind, Regime::Broken);
    EXPECT_NEAR(fig7.q, 3.0, 1e-12);
}

TEST(FeedbackConfig, ValidateRejectsNonsense) {
    FeedbackConfig cfg;
    cfg.gamma = 0.0;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
    cfg.gamma = 0.1;
    cfg.omega = -1.0;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
    cfg.omega = 0.0;
    cfg.a = std::nan("");
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
}
