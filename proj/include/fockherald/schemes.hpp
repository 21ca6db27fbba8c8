// schemes.hpp
// End-to-end heralded photon-addition schemes: the single-beamsplitter
// implementation of the bare raising operator on a coherent state, the
// failed-branch analysis, the two-stage feedforward cascade, the Fock-state
// synthesis ladder, the do-nothing baseline, and beamsplitter/amplitude
// characterization curves.
//
// Geometry of the single stage: the coherent state enters the first input,
// a single photon the second; the detector watches the first output mode and
// the scheme succeeds on zero counts. With the default phase convention the
// accepted output is sum_n q_n |t| |r|^n sqrt(n+1) |n+1>, a photon-shifted
// coherent profile.

#pragma once

#include <algorithm>
#include <span>

#include "measurement.hpp"
#include "operators.hpp"

namespace fockherald {

struct SingleBsOutcome {
    double r_sq = 0.0;
    double eta = 1.0;
    double p_success = 0.0;
    double fidelity_vs_bare = 0.0;      // against the normalized bare-raised input
    BranchEnsemble output;              // empty when the heralding event is impossible
};

struct CascadeOutcome {
    double p1_0 = 0.0;   // zero counts at detector 1 (accept)
    double f1 = 0.0;
    double p1_1 = 0.0;   // one count at detector 1 (retry)
    double p2_0 = 0.0;   // zero counts at detector 2 given a retry
    double f2 = 0.0;
    double f_mean = 0.0;
    double p_total = 0.0;
    BranchEnsemble accepted;  // mixture over both accepted paths
};

struct CharacterizationPoint {
    double alpha = 0.0;
    double r_sq = 0.0;
    double p_zero_counts = 0.0;
};

struct FockRaiseStage {
    double t_mag = 0.0;
    double p_zero = 0.0;
};

// Closed form of the zero-count success probability
//   sum_n |q_n|^2 |t|^2 |r|^{2n} (n+1) = (1-R) e^{-A(1-R)} (1 + A R)
// with A the mean photon number and R the reflection probability.
inline double closed_form_p0(double alpha_sq, double r_sq) {
    if (!(alpha_sq >= 0.0)) throw std::invalid_argument("alpha_sq must be >= 0");
    if (!(r_sq >= 0.0 && r_sq <= 1.0)) throw std::invalid_argument("r_sq must lie in [0, 1]");
    return (1.0 - r_sq) * std::exp(-alpha_sq * (1.0 - r_sq)) * (1.0 + alpha_sq * r_sq);
}

// Zero-count probability with detector efficiency eta. The reduced state of
// the watched mode is a displaced mixture (weight 1-R coherent, weight R a
// displaced single photon, both displaced by t*alpha), which sums to
//   e^{-eta (1-R) A} [ (1-R) + R (1-eta) + R eta^2 (1-R) A ].
inline double closed_form_p0_inefficient(double alpha_sq, double r_sq, double eta) {
    if (!(alpha_sq >= 0.0)) throw std::invalid_argument("alpha_sq must be >= 0");
    if (!(r_sq >= 0.0 && r_sq <= 1.0)) throw std::invalid_argument("r_sq must lie in [0, 1]");
    if (!(eta >= 0.0 && eta <= 1.0)) throw std::invalid_argument("eta must lie in [0, 1]");
    const double beta_sq = (1.0 - r_sq) * alpha_sq;  // transmitted mean photon number
    return std::exp(-eta * beta_sq) *
           ((1.0 - r_sq) + r_sq * (1.0 - eta) + r_sq * eta * eta * beta_sq);
}

// Reflection probability maximizing the zero-count success probability:
//   R = (A - 3 + sqrt(A^2 + 2A + 5)) / (2A),
// positive above A = 0.5; below that the maximum sits at R = 0.
inline double optimal_reflectivity(double alpha_sq) {
    if (!(alpha_sq >= 0.0)) throw std::invalid_argument("alpha_sq must be >= 0");
    if (alpha_sq < 0.5) return 0.0;
    const double root = std::sqrt(alpha_sq * alpha_sq + 2.0 * alpha_sq + 5.0);
    return std::clamp((alpha_sq - 3.0 + root) / (2.0 * alpha_sq), 0.0, 1.0);
}

// Fidelity of the ideal-detector accepted output with the bare-raised input,
// evaluated by direct series summation:
//   F = |t|^2 ( sum_n e^{-A} A^n/n! r^n sqrt(n+1) )^2 / P(0).
// Matches run_single_bs(..., eta = 1).fidelity_vs_bare; this form is cheap
// enough to sit inside optimization loops.
inline double ideal_fidelity_series(double alpha_sq, double r_sq) {
    const double p0 = closed_form_p0(alpha_sq, r_sq);
    if (p0 == 0.0) return 0.0;
    const double r = std::sqrt(r_sq);
    double g = std::exp(-alpha_sq);  // e^{-A} A^n r^n / n!
    double s = 0.0;
    for (int n = 0;; ++n) {
        const double term = g * std::sqrt(static_cast<double>(n + 1));
        s += term;
        if (n > alpha_sq * r && term < s * 1e-18) break;
        if (n > 100000) break;
        g *= alpha_sq * r / (n + 1);
    }
    return (1.0 - r_sq) * s * s / p0;
}

// One attempt of the basic scheme: coherent state and single photon in,
// beamsplitter of reflection probability r_sq, accept on zero counts at a
// detector of efficiency eta watching the first output mode.
inline SingleBsOutcome run_single_bs(Amplitude alpha, double r_sq, double eta) {
    const PureState coh = make_coherent(alpha);
    const TwoModeState joint = tensor(coh, make_fock(1, 1));
    const TwoModeState mixed = beamsplitter(joint, BeamsplitterParams::from_reflectivity(r_sq));
    const HeraldOutcome herald = condition_zero_counts_inefficient(mixed, Mode::first, {eta});

    SingleBsOutcome out;
    out.r_sq = r_sq;
    out.eta = eta;
    out.p_success = herald.prob;
    if (!herald.output.empty()) {
        const PureState target = bare_raise(coh).normalized();
        out.fidelity_vs_bare = ensemble_fidelity(herald.output, target);
        out.output = herald.output;
    }
    return out;
}

// Conditional output after exactly one count at an ideal detector. The
// photon-number distribution of the failed state has an interior minimum
// near n = R / (1 - R).
inline CountOutcome failed_branch(Amplitude alpha, double r_sq) {
    if (!(r_sq > 0.0 && r_sq < 1.0))
        throw std::invalid_argument("failed_branch: r_sq must lie in (0, 1)");
    const PureState coh = make_coherent(alpha);
    const TwoModeState joint = tensor(coh, make_fock(1, 1));
    const TwoModeState mixed = beamsplitter(joint, BeamsplitterParams::from_reflectivity(r_sq));
    return project_counts(mixed, Mode::first, 1);
}

// Two-stage feedforward cascade: a single count at detector 1 routes the
// failed state into a second beamsplitter with a fresh single photon; the
// correction is accepted on zero counts at detector 2. Two or more counts at
// detector 1, or any count at detector 2, is terminal failure. With an
// inefficient detector the one-count herald keeps every true photon number
// k >= 1 with binomial weight k eta (1 - eta)^{k-1}.
inline CascadeOutcome run_cascade(Amplitude alpha, double r1_sq, double r2_sq, double eta) {
    const auto bs1 = BeamsplitterParams::from_reflectivity(r1_sq);
    const auto bs2 = BeamsplitterParams::from_reflectivity(r2_sq);
    const DetectorModel det{eta};
    det.validate();

    const PureState coh = make_coherent(alpha);
    const PureState target = bare_raise(coh).normalized();
    const TwoModeState mixed = beamsplitter(tensor(coh, make_fock(1, 1)), bs1);

    CascadeOutcome out;
    const HeraldOutcome accept1 = condition_zero_counts_inefficient(mixed, Mode::first, det);
    out.p1_0 = accept1.prob;
    if (!accept1.output.empty()) out.f1 = ensemble_fidelity(accept1.output, target);

    const HeraldOutcome retry = condition_one_count_inefficient(mixed, Mode::first, det);
    out.p1_1 = retry.prob;

    BranchEnsemble accepted2;
    if (!retry.output.empty()) {
        for (const auto& branch : retry.output) {
            const TwoModeState joint2 = tensor(branch.state, make_fock(1, 1));
            const TwoModeState mixed2 = beamsplitter(joint2, bs2);
            const HeraldOutcome accept2 = condition_zero_counts_inefficient(mixed2, Mode::first, det);
            out.p2_0 += branch.weight * accept2.prob;
            for (const auto& b2 : accept2.output)
                accepted2.push_back({branch.weight * accept2.prob * b2.weight, b2.state});
        }
        if (out.p2_0 > 0.0) {
            for (auto& b : accepted2) b.weight /= out.p2_0;
            out.f2 = ensemble_fidelity(accepted2, target);
        }
    }

    out.p_total = out.p1_0 + out.p1_1 * out.p2_0;
    if (out.p_total > 0.0) {
        out.f_mean = (out.p1_0 * out.f1 + out.p1_1 * out.p2_0 * out.f2) / out.p_total;
        for (const auto& b : accept1.output)
            out.accepted.push_back({b.weight * out.p1_0 / out.p_total, b.state});
        for (const auto& b : accepted2)
            out.accepted.push_back({b.weight * out.p1_1 * out.p2_0 / out.p_total, b.state});
    }
    return out;
}

// Optimal single stage of the Fock-state synthesis ladder |n> -> |n+1>:
// transmission t_n = sqrt(n/(n+1)) gives zero-count probability (n/(n+1))^n.
inline FockRaiseStage fock_raise_stage(int n) {
    if (n < 1) throw std::invalid_argument("fock_raise_stage: n must be >= 1");
    const double ratio = static_cast<double>(n) / (n + 1.0);
    return {std::sqrt(ratio), std::pow(ratio, static_cast<double>(n))};
}

// Probability of synthesizing |N> from N single photons through N-1
// per-stage-optimal beamsplitters with all detectors silent.
inline double fock_synthesis_probability(int n_target) {
    if (n_target < 1) throw std::invalid_argument("fock_synthesis_probability: N must be >= 1");
    double p = 1.0;
    for (int n = 1; n < n_target; ++n) p *= fock_raise_stage(n).p_zero;
    return p;
}

// Fidelity of the untouched coherent state with its bare-raised version --
// the baseline an inefficient-detector scheme has to beat.
inline double do_nothing_fidelity(Amplitude alpha) {
    const PureState coh = make_coherent(alpha);
    return fidelity(coh, bare_raise(coh));
}

// Zero-count probability against alpha for a fixed highly reflecting
// beamsplitter. The curve peaks at alpha^2 = (2R-1)/(R(1-R)) with value
// R e^{1/R - 2}, strictly above 1/e for R in (0.5, 1).
inline std::vector<CharacterizationPoint> characterization_curve(double r_sq,
                                                                 std::span<const double> alpha_grid,
                                                                 double eta = 1.0) {
    if (!(r_sq > 0.5 && r_sq < 1.0))
        throw std::invalid_argument("characterization_curve: r_sq must lie in (0.5, 1)");
    if (alpha_grid.empty()) throw std::invalid_argument("characterization_curve: empty grid");
    std::vector<CharacterizationPoint> curve;
    curve.reserve(alpha_grid.size());
    for (const double a : alpha_grid) {
        const double p = eta == 1.0 ? closed_form_p0(a * a, r_sq)
                                    : closed_form_p0_inefficient(a * a, r_sq, eta);
        curve.push_back({a, r_sq, p});
    }
    return curve;
}

}  // namespace fockherald
