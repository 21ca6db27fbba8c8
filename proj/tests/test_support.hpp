// Shared test helpers: deterministic random states and independent
// brute-force oracles kept apart from the implementation paths they check.

#pragma once

#include <random>
#include <stdexcept>
#include <vector>

#include "fockherald/fockherald.hpp"

namespace testsupport {

inline fockherald::PureState random_pure(std::mt19937& rng, int cutoff) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    fockherald::PureState s(cutoff);
    for (auto& a : s.amps) a = {gauss(rng), gauss(rng)};
    return s.normalized();
}

// Random normalized two-mode state supported on total photon number <= max_total.
inline fockherald::TwoModeState random_two_mode(std::mt19937& rng, int max_total) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    fockherald::TwoModeState s(max_total, max_total);
    for (int j = 0; j <= max_total; ++j)
        for (int k = 0; k <= max_total - j; ++k) s.at(j, k) = {gauss(rng), gauss(rng)};
    const double inv = 1.0 / std::sqrt(s.norm_sq());
    for (auto& a : s.amps) a *= inv;
    return s;
}

// Brute-force partial sum of the zero-count success series
//   sum_n e^-A A^n/n! (1-R) R^n (n+1)
// summed directly until the terms die out.
inline double p0_series(double alpha_sq, double r_sq) {
    double g = std::exp(-alpha_sq);  // e^-A (A R)^n / n!
    double acc = 0.0;
    for (int n = 0; n < 100000; ++n) {
        const double term = g * (1.0 - r_sq) * (n + 1);
        acc += term;
        if (n > alpha_sq * r_sq && term < acc * 1e-18) break;
        g *= alpha_sq * r_sq / (n + 1);
    }
    return acc;
}

// Index of the unique strict interior local minimum of a distribution;
// throws when there is none or more than one.
inline int interior_argmin(const std::vector<double>& p) {
    int found = -1;
    for (std::size_t i = 1; i + 1 < p.size(); ++i) {
        if (p[i - 1] > p[i] && p[i] < p[i + 1]) {
            if (found >= 0) throw std::runtime_error("distribution has several interior minima");
            found = static_cast<int>(i);
        }
    }
    if (found < 0) throw std::runtime_error("distribution has no interior minimum");
    return found;
}

}  // namespace testsupport
