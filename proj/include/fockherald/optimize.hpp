// optimize.hpp
// Deterministic one-dimensional maximization over the reflection probability.

#pragma once

#include <limits>
#include <string>

#include "schemes.hpp"

namespace fockherald {

enum class SearchMethod { golden_section, grid_fallback };

struct OptimizationResult {
    double x_star = 0.0;
    double f_star = 0.0;
    int evaluations = 0;
    SearchMethod method = SearchMethod::golden_section;
};

// Maximizes f on [lo, hi] by golden-section search to interval width tol.
// A 1001-point pre-scan first validates unimodality (within noise 1e-12, f
// may rise, then fall, but never rise again); if that fails the search
// instead refines the best pre-scan cell and reports grid_fallback. Ties
// break toward smaller x, so a constant objective returns lo. The best
// evaluated point is returned, so f(x_star) dominates the whole pre-scan
// grid by construction.
template <typename F>
OptimizationResult maximize_scalar(F&& f, double lo, double hi, double tol = 1e-9) {
    if (!(lo < hi)) throw std::invalid_argument("maximize_scalar: need lo < hi");
    if (!(tol > 0.0)) throw std::invalid_argument("maximize_scalar: need tol > 0");

    int evaluations = 0;
    double best_x = lo;
    double best_f = -std::numeric_limits<double>::infinity();
    auto eval = [&](double x) {
        const double v = f(x);
        ++evaluations;
        if (!std::isfinite(v))
            throw std::runtime_error("maximize_scalar: objective not finite at x = " +
                                     std::to_string(x));
        if (v > best_f || (v == best_f && x < best_x)) {
            best_f = v;
            best_x = x;
        }
        return v;
    };

    constexpr int kScan = 1001;
    std::vector<double> fs(kScan);
    for (int i = 0; i < kScan; ++i)
        fs[i] = eval(lo + (hi - lo) * static_cast<double>(i) / (kScan - 1));

    constexpr double kNoise = 1e-12;
    bool seen_fall = false;
    bool unimodal = true;
    for (int i = 1; i < kScan; ++i) {
        const double d = fs[i] - fs[i - 1];
        if (d > kNoise && seen_fall) {
            unimodal = false;
            break;
        }
        if (d < -kNoise) seen_fall = true;
    }

    double a = lo;
    double b = hi;
    SearchMethod method = SearchMethod::golden_section;
    if (!unimodal) {
        const double h = (hi - lo) / (kScan - 1);
        a = std::max(lo, best_x - h);
        b = std::min(hi, best_x + h);
        method = SearchMethod::grid_fallback;
    }

    const double inv_phi = 2.0 / (1.0 + std::sqrt(5.0));
    double c = b - (b - a) * inv_phi;
    double d = a + (b - a) * inv_phi;
    double fc = eval(c);
    double fd = eval(d);
    while (b - a > tol) {
        if (fc >= fd) {  // ties shrink from above, biasing toward smaller x
            b = d;
            d = c;
            fd = fc;
            c = b - (b - a) * inv_phi;
            fc = eval(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + (b - a) * inv_phi;
            fd = eval(d);
        }
    }
    eval(0.5 * (a + b));

    return {best_x, best_f, evaluations, method};
}

enum class Objective { probability, fidelity };

struct SingleBsOptimum {
    double r_sq = 0.0;
    SingleBsOutcome outcome;
};

// Maximizes the chosen figure of merit of run_single_bs over the reflection
// probability.
inline SingleBsOptimum optimize_single_bs(Amplitude alpha, double eta, Objective objective) {
    auto merit = [&](double r_sq) {
        const SingleBsOutcome o = run_single_bs(alpha, r_sq, eta);
        return objective == Objective::probability ? o.p_success : o.fidelity_vs_bare;
    };
    const OptimizationResult res = maximize_scalar(merit, 0.0, 1.0);
    return {res.x_star, run_single_bs(alpha, res.x_star, eta)};
}

}  // namespace fockherald
