#include "fockherald/optimize.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace fockherald;

TEST(MaximizeScalar, QuadraticPeak) {
    const auto res = maximize_scalar([](double x) { return -(x - 0.3) * (x - 0.3); }, 0.0, 1.0);
    EXPECT_NEAR(res.x_star, 0.3, 1e-9);
    EXPECT_DOUBLE_EQ(res.f_star, -(res.x_star - 0.3) * (res.x_star - 0.3));
    EXPECT_EQ(res.method, SearchMethod::golden_section);
    EXPECT_GT(res.evaluations, 1001);
}

TEST(MaximizeScalar, FindsAnalyticOptimum) {
    const auto res =
        maximize_scalar([](double r) { return closed_form_p0(4.0, r); }, 0.0, 1.0);
    EXPECT_NEAR(res.x_star, optimal_reflectivity(4.0), 1e-6);
    EXPECT_NEAR(res.x_star, 0.798145, 1e-6);
}

TEST(MaximizeScalar, ConstantObjectiveTiesBreakLow) {
    const auto res = maximize_scalar([](double) { return 2.5; }, 0.25, 0.75);
    EXPECT_EQ(res.x_star, 0.25);
    EXPECT_EQ(res.f_star, 2.5);
}

TEST(MaximizeScalar, MonotoneEdgesAreUnimodal) {
    const auto rising = maximize_scalar([](double x) { return x; }, 0.0, 1.0);
    EXPECT_EQ(rising.method, SearchMethod::golden_section);
    EXPECT_NEAR(rising.x_star, 1.0, 1e-9);
    const auto falling = maximize_scalar([](double x) { return -x; }, 0.0, 1.0);
    EXPECT_EQ(falling.x_star, 0.0);
}

TEST(MaximizeScalar, MultimodalFallsBackAndBracketsGrid) {
    auto wiggly = [](double x) { return std::sin(13.0 * x) + 0.5 * x; };
    const auto res = maximize_scalar(wiggly, 0.0, 1.0);
    EXPECT_EQ(res.method, SearchMethod::grid_fallback);
    for (int i = 0; i <= 1000; ++i) {
        const double x = i / 1000.0;
        EXPECT_GE(res.f_star, wiggly(x)) << "x = " << x;
    }
}

TEST(MaximizeScalar, RejectsBadInputs) {
    auto f = [](double x) { return x; };
    EXPECT_THROW(maximize_scalar(f, 1.0, 0.0), std::invalid_argument);
    EXPECT_THROW(maximize_scalar(f, 0.0, 1.0, 0.0), std::invalid_argument);
    EXPECT_THROW(maximize_scalar([](double x) { return x < 0.5 ? x : std::nan(""); }, 0.0, 1.0),
                 std::runtime_error);
}

TEST(MaximizeScalar, Deterministic) {
    auto f = [](double r) { return closed_form_p0(2.0, r); };
    const auto a = maximize_scalar(f, 0.0, 1.0);
    const auto b = maximize_scalar(f, 0.0, 1.0);
    EXPECT_EQ(a.x_star, b.x_star);
    EXPECT_EQ(a.f_star, b.f_star);
    EXPECT_EQ(a.evaluations, b.evaluations);
}

TEST(OptimizeSingleBs, ProbabilityObjectiveMatchesAnalyticForm) {
    const auto best = optimize_single_bs(2.0, 1.0, Objective::probability);
    EXPECT_NEAR(best.r_sq, optimal_reflectivity(4.0), 1e-6);
    EXPECT_NEAR(best.outcome.p_success, closed_form_p0(4.0, optimal_reflectivity(4.0)), 1e-10);
}

TEST(OptimizeSingleBs, FidelityAndProbabilityOptimaCoincideAtLargeAlpha) {
    const auto prob = optimize_single_bs(3.0, 1.0, Objective::probability);
    const auto fid = optimize_single_bs(3.0, 1.0, Objective::fidelity);
    EXPECT_LT(std::abs(prob.r_sq - fid.r_sq), 0.02);
    EXPECT_GE(fid.outcome.fidelity_vs_bare, prob.outcome.fidelity_vs_bare);
}
