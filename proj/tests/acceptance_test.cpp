// End-to-end acceptance suite. Each test pins one headline quantitative
// claim of the library at its stated tolerance and prints its own pass/fail
// line; run via ctest or directly.

#include <gtest/gtest.h>

#include <random>

#include "fockherald/fockherald.hpp"
#include "test_support.hpp"

using namespace fockherald;

// Raising |n> -> |n+1> with a beamsplitter tuned to t = sqrt(n/(n+1)):
// the simulated zero-count probability equals (n/(n+1))^n, exactly 1/2 at n = 1.
TEST(Acceptance, FockLadderStageMatchesClosedForm) {
    for (int n = 1; n <= 20; ++n) {
        const FockRaiseStage stage = fock_raise_stage(n);
        EXPECT_DOUBLE_EQ(stage.p_zero, std::pow(n / (n + 1.0), static_cast<double>(n)));

        const BeamsplitterParams bs{stage.t_mag, std::sqrt(1.0 - stage.t_mag * stage.t_mag)};
        const TwoModeState out = beamsplitter(tensor(make_fock(n, n), make_fock(1, 1)), bs);
        const double simulated = project_counts(out, Mode::second, 0).prob;
        EXPECT_NEAR(simulated, stage.p_zero, 1e-12) << "n = " << n;
    }
    EXPECT_EQ(fock_raise_stage(1).p_zero, 0.5);
}

// The numerical argmax of the closed-form success probability agrees with
// the analytic optimal reflection probability.
TEST(Acceptance, NumericalArgmaxMatchesAnalyticOptimum) {
    for (const double a_sq : {1.0, 2.0, 4.0, 9.0, 25.0}) {
        const auto res =
            maximize_scalar([a_sq](double r) { return closed_form_p0(a_sq, r); }, 0.0, 1.0);
        EXPECT_NEAR(res.x_star, optimal_reflectivity(a_sq), 1e-6) << "A = " << a_sq;
    }
    EXPECT_NEAR(optimal_reflectivity(4.0), (1.0 + std::sqrt(29.0)) / 8.0, 1e-12);
    EXPECT_NEAR(optimal_reflectivity(4.0), 0.798145, 1e-6);
}

// The optimized success probability decreases strictly with alpha toward 1/e
// from above; at alpha = 10 it sits within 0.01 of 1/e and rounds to 0.3679.
TEST(Acceptance, OptimizedSuccessProbabilityApproachesInverseE) {
    const double inv_e = std::exp(-1.0);
    double prev = 1.0;
    for (const double alpha : {2.0, 3.0, 5.0, 10.0}) {
        const auto best = optimize_single_bs(alpha, 1.0, Objective::probability);
        EXPECT_LT(best.outcome.p_success, prev) << "alpha = " << alpha;
        EXPECT_GT(best.outcome.p_success, inv_e) << "alpha = " << alpha;
        prev = best.outcome.p_success;
        if (alpha == 10.0) {
            EXPECT_LE(best.outcome.p_success, inv_e + 0.01);
            EXPECT_NEAR(best.outcome.p_success, 0.3679, 5e-5);
        }
    }
}

// Brute-force partial sums of the success series agree with the closed form
// across a 20 x 20 grid of (A, R).
TEST(Acceptance, SuccessSeriesMatchesClosedFormOnGrid) {
    for (int i = 0; i < 20; ++i) {
        const double a_sq = 25.0 * i / 19.0;
        for (int j = 0; j < 20; ++j) {
            const double r_sq = 0.99 * j / 19.0;
            EXPECT_NEAR(testsupport::p0_series(a_sq, r_sq), closed_form_p0(a_sq, r_sq), 1e-10)
                << "A = " << a_sq << ", R = " << r_sq;
        }
    }
}

// lower(raise(.)) is the identity and raise(lower(.)) is the identity minus
// the vacuum projector, elementwise on a cutoff-60 basis.
TEST(Acceptance, BareLadderAlgebraOnTruncatedBasis) {
    const int cutoff = 60;
    for (int n = 0; n <= cutoff; ++n) {
        const PureState basis = make_fock(n, cutoff);

        const PureState lower_raise = bare_lower(bare_raise(basis));
        ASSERT_EQ(lower_raise.size(), basis.size());
        for (int m = 0; m <= cutoff; ++m) EXPECT_EQ(lower_raise.amps[m], basis.amps[m]);

        const PureState raise_lower = bare_raise(bare_lower(basis));
        for (int m = 0; m < raise_lower.size(); ++m) {
            const Amplitude expected = (n == 0) ? Amplitude{0.0, 0.0} : basis.amps[m];
            EXPECT_EQ(raise_lower.amps[m], expected);
        }
    }
}

// At alpha = 1 the fidelity-optimized accepted state beats the normalized
// standard-raised state as an approximation of the bare-raised input; both
// fidelities sit in [0.94, 1].
TEST(Acceptance, FidelityOrderingAtUnitAlpha) {
    const auto best = optimize_single_bs(1.0, 1.0, Objective::fidelity);
    const PureState coh = make_coherent(1.0);
    const PureState target = bare_raise(coh).normalized();
    const double fid_std = fidelity(std_raise(coh), target);

    EXPECT_GT(best.outcome.fidelity_vs_bare, fid_std);
    EXPECT_GE(fid_std, 0.94);
    EXPECT_LE(fid_std, 1.0);
    EXPECT_GE(best.outcome.fidelity_vs_bare, 0.94);
    EXPECT_LE(best.outcome.fidelity_vs_bare, 1.0);
}

// A failed (one-count) herald at alpha = 2 leaves a hole in the photon
// number distribution at n = 4 +- 1, in line with the analytic zero R/(1-R).
TEST(Acceptance, FailedBranchHasPhotonNumberHole) {
    const double r_sq = optimal_reflectivity(4.0);
    const CountOutcome failed = failed_branch(2.0, r_sq);
    ASSERT_TRUE(failed.state.has_value());
    const int hole = testsupport::interior_argmin(photon_distribution(*failed.state));
    EXPECT_NEAR(static_cast<double>(hole), 4.0, 1.0);

    const double analytic_zero = r_sq / (1.0 - r_sq);
    EXPECT_NEAR(analytic_zero, 3.95, 0.01);
    EXPECT_LE(std::abs(hole - analytic_zero), 1.0);
}

// No point of the 50 x 50 (R1, R2) cascade grid improves on the best
// single-stage fidelity at alpha = 2.
TEST(Acceptance, CascadeNeverBeatsSingleStageFidelity) {
    const double single_best =
        optimize_single_bs(2.0, 1.0, Objective::fidelity).outcome.fidelity_vs_bare;
    double best_mean = 0.0;
    for (int i = 0; i < 50; ++i) {
        const double r1 = 0.01 + (0.99 - 0.01) * i / 49.0;
        for (int j = 0; j < 50; ++j) {
            const double r2 = 0.01 + (0.99 - 0.01) * j / 49.0;
            best_mean = std::max(best_mean, run_cascade(2.0, r1, r2, 1.0).f_mean);
        }
    }
    EXPECT_LE(best_mean, single_best + 1e-6);
}

// At eta = 0.4 the do-nothing baseline overtakes the scheme fidelity (at the
// fixed reflectivity of the efficiency figures) inside (0, 2), and the gap
// keeps growing from there on. At eta above 1 - 1/e no such crossing exists.
TEST(Acceptance, DoNothingOvertakesLossySchemeFidelity) {
    const double eta = 0.4;
    const double r_sq = 0.869;
    std::vector<double> alphas;
    for (double a = 0.05; a <= 2.0 + 1e-9; a += 0.05) alphas.push_back(a);

    std::vector<double> gap;
    int crossing = -1;
    for (std::size_t i = 0; i < alphas.size(); ++i) {
        const double dn = do_nothing_fidelity(alphas[i]);
        const double scheme = run_single_bs(alphas[i], r_sq, eta).fidelity_vs_bare;
        gap.push_back(dn - scheme);
        if (crossing < 0 && dn > scheme) crossing = static_cast<int>(i);
    }
    ASSERT_GE(crossing, 1);
    ASSERT_LT(crossing, static_cast<int>(alphas.size()) - 1);
    for (std::size_t i = crossing + 1; i < gap.size(); ++i)
        EXPECT_GT(gap[i], gap[i - 1]) << "alpha = " << alphas[i];

    for (const double a : alphas)
        EXPECT_LT(do_nothing_fidelity(a), run_single_bs(a, r_sq, 0.8).fidelity_vs_bare)
            << "alpha = " << a;
}

// The alpha-scan of the zero-count probability for a highly reflecting
// beamsplitter peaks at the analytic location and value, strictly above 1/e.
TEST(Acceptance, CharacterizationPeakMatchesAnalyticForm) {
    const double step = 0.05;
    std::vector<double> grid;
    for (double a = 0.0; a <= 40.0 + 1e-9; a += step) grid.push_back(a);

    for (const double r_sq : {0.9, 0.95, 0.99, 0.999}) {
        const auto curve = characterization_curve(r_sq, grid);
        std::size_t arg = 0;
        for (std::size_t i = 1; i < curve.size(); ++i)
            if (curve[i].p_zero_counts > curve[arg].p_zero_counts) arg = i;

        const double peak_value = r_sq * std::exp(-2.0 + 1.0 / r_sq);
        EXPECT_NEAR(curve[arg].p_zero_counts, peak_value, 1e-4) << "R = " << r_sq;
        EXPECT_GT(curve[arg].p_zero_counts, std::exp(-1.0)) << "R = " << r_sq;

        const double peak_alpha = std::sqrt((2.0 * r_sq - 1.0) / (r_sq * (1.0 - r_sq)));
        EXPECT_LE(std::abs(curve[arg].alpha - peak_alpha), step + 1e-12) << "R = " << r_sq;
    }
}

// Every ideal-detector accepted output carries exactly zero vacuum amplitude.
TEST(Acceptance, AcceptedOutputHasNoVacuumComponent) {
    for (const double alpha : {0.0, 0.5, 1.0, 2.0, 3.0}) {
        for (const double r_sq : {0.1, 0.3, 0.5, 0.7, 0.9}) {
            const SingleBsOutcome out = run_single_bs(alpha, r_sq, 1.0);
            ASSERT_EQ(out.output.size(), 1u) << "alpha = " << alpha << ", R = " << r_sq;
            EXPECT_EQ(out.output[0].state.amps[0], Amplitude(0.0, 0.0))
                << "alpha = " << alpha << ", R = " << r_sq;
        }
    }
}

// POVM limits: eta = 1 reproduces the ideal zero-count projection branch for
// branch, and eta = 0 accepts with probability one.
TEST(Acceptance, InefficientDetectorLimits) {
    std::mt19937 rng(97);
    for (int trial = 0; trial < 8; ++trial) {
        const TwoModeState s = testsupport::random_two_mode(rng, 10);
        for (const Mode mode : {Mode::first, Mode::second}) {
            const CountOutcome proj = project_counts(s, mode, 0);
            const HeraldOutcome ideal = condition_zero_counts_inefficient(s, mode, {1.0});
            ASSERT_EQ(ideal.output.size(), 1u);
            EXPECT_DOUBLE_EQ(ideal.prob, proj.prob);
            EXPECT_DOUBLE_EQ(ideal.output[0].weight, 1.0);
            ASSERT_TRUE(proj.state.has_value());
            ASSERT_EQ(ideal.output[0].state.size(), proj.state->size());
            for (int k = 0; k < proj.state->size(); ++k)
                EXPECT_EQ(ideal.output[0].state.amps[k], proj.state->amps[k]);

            EXPECT_NEAR(condition_zero_counts_inefficient(s, mode, {0.0}).prob, 1.0, 1e-12);
        }
    }
}
