// fock_state.hpp
// Finite photon-number-basis states: construction, truncation policy,
// inner products and fidelity.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace fockherald {

using Amplitude = std::complex<double>;

// Which of the two modes of a TwoModeState an operation refers to.
enum class Mode { first = 0, second = 1 };

// Truncation policy: keep enough Fock levels that the Poisson tail of the
// intended state is below tail_tol, then add padding slots of headroom.
struct CutoffPolicy {
    double tail_tol = 1e-12;
    int padding = 20;
};

// Single-mode state over |0>..|cutoff>. amps[n] is the amplitude of |n>.
// Sub-normalized vectors are first class: a conditional branch carries its
// probability in its squared norm.
struct PureState {
    std::vector<Amplitude> amps;

    PureState() = default;
    explicit PureState(int cutoff) : amps(static_cast<std::size_t>(cutoff) + 1) {}
    explicit PureState(std::vector<Amplitude> a) : amps(std::move(a)) {}

    int cutoff() const { return static_cast<int>(amps.size()) - 1; }
    int size() const { return static_cast<int>(amps.size()); }

    double norm_sq() const {
        double s = 0.0;
        for (const auto& a : amps) s += std::norm(a);
        return s;
    }

    PureState normalized() const {
        const double n2 = norm_sq();
        if (n2 == 0.0) throw std::invalid_argument("cannot normalize a zero-norm state");
        PureState out = *this;
        const double inv = 1.0 / std::sqrt(n2);
        for (auto& a : out.amps) a *= inv;
        return out;
    }
};

// Joint state of two modes. amps is row-major over (j, k) with j indexing
// the first mode and k the second.
struct TwoModeState {
    std::vector<Amplitude> amps;
    int cutoff_first = 0;
    int cutoff_second = 0;

    TwoModeState() = default;
    TwoModeState(int c1, int c2)
        : amps(static_cast<std::size_t>(c1 + 1) * static_cast<std::size_t>(c2 + 1)),
          cutoff_first(c1),
          cutoff_second(c2) {
        if (c1 < 0 || c2 < 0) throw std::invalid_argument("negative cutoff");
    }

    int dim_first() const { return cutoff_first + 1; }
    int dim_second() const { return cutoff_second + 1; }

    Amplitude& at(int j, int k) {
        return amps[static_cast<std::size_t>(j) * static_cast<std::size_t>(dim_second()) + k];
    }
    const Amplitude& at(int j, int k) const {
        return amps[static_cast<std::size_t>(j) * static_cast<std::size_t>(dim_second()) + k];
    }

    double norm_sq() const {
        double s = 0.0;
        for (const auto& a : amps) s += std::norm(a);
        return s;
    }

    // Largest j + k carrying a nonzero amplitude; -1 for the zero vector.
    int max_total_photons() const {
        int best = -1;
        for (int j = 0; j <= cutoff_first; ++j)
            for (int k = 0; k <= cutoff_second; ++k)
                if (at(j, k) != Amplitude{0.0, 0.0}) best = std::max(best, j + k);
        return best;
    }
};

// Smallest N whose Poisson(mean_photons) tail mass beyond N is below
// policy.tail_tol, plus policy.padding slots of headroom. Works in log space
// so large means do not underflow the term recurrence.
inline int choose_cutoff(double mean_photons, CutoffPolicy policy = {}) {
    if (!(mean_photons >= 0.0) || !std::isfinite(mean_photons))
        throw std::invalid_argument("mean_photons must be finite and >= 0");
    if (!(policy.tail_tol > 0.0 && policy.tail_tol < 1.0))
        throw std::invalid_argument("tail_tol must lie in (0, 1)");
    if (policy.padding < 0) throw std::invalid_argument("padding must be >= 0");

    if (mean_photons == 0.0) return policy.padding;

    const double lambda = mean_photons;
    const double log_lambda = std::log(lambda);
    double cdf = 0.0;
    double log_fact = 0.0;  // ln(n!)
    int n = 0;
    while (cdf < 1.0 - policy.tail_tol) {
        const double log_pmf = -lambda + n * log_lambda - log_fact;
        cdf += std::exp(log_pmf);
        ++n;
        log_fact += std::log(static_cast<double>(n));
        if (n > 100000) throw std::runtime_error("choose_cutoff: tail summation did not converge");
    }
    return (n - 1) + policy.padding;
}

// Coherent state |alpha> truncated at cutoff: amps[n] = e^{-|a|^2/2} a^n / sqrt(n!).
// A cutoff that discards tail mass >= 1e-6 is rejected as unusably aggressive.
inline PureState make_coherent(Amplitude alpha, int cutoff) {
    if (cutoff < 0) throw std::invalid_argument("cutoff must be >= 0");
    PureState s(cutoff);
    const double a2 = std::norm(alpha);
    Amplitude q = std::exp(-0.5 * a2);
    for (int n = 0; n <= cutoff; ++n) {
        s.amps[n] = q;
        q *= alpha / std::sqrt(static_cast<double>(n + 1));
    }
    const double tail = 1.0 - s.norm_sq();
    if (tail >= 1e-6)
        throw std::invalid_argument("make_coherent: cutoff " + std::to_string(cutoff) +
                                    " leaves tail mass " + std::to_string(tail));
    return s;
}

// Coherent state with the cutoff chosen by policy from the mean photon number.
inline PureState make_coherent(Amplitude alpha, CutoffPolicy policy = {}) {
    return make_coherent(alpha, choose_cutoff(std::norm(alpha), policy));
}

inline PureState make_fock(int n, int cutoff) {
    if (n < 0 || n > cutoff) throw std::invalid_argument("make_fock: need 0 <= n <= cutoff");
    PureState s(cutoff);
    s.amps[n] = 1.0;
    return s;
}

// <a|b> with the shorter state zero-padded, never truncated.
inline Amplitude inner_product(const PureState& a, const PureState& b) {
    const int n = std::min(a.size(), b.size());
    Amplitude acc{0.0, 0.0};
    for (int i = 0; i < n; ++i) acc += std::conj(a.amps[i]) * b.amps[i];
    return acc;
}

// |<a|b>|^2 / (|a|^2 |b|^2), insensitive to normalization and global phase.
inline double fidelity(const PureState& a, const PureState& b) {
    const double na = a.norm_sq();
    const double nb = b.norm_sq();
    if (na == 0.0 || nb == 0.0)
        throw std::invalid_argument("fidelity: zero-norm input");
    return std::norm(inner_product(a, b)) / (na * nb);
}

// Normalized photon-number distribution p_n = |amps_n|^2 / |s|^2.
inline std::vector<double> photon_distribution(const PureState& s) {
    const double n2 = s.norm_sq();
    if (n2 == 0.0) throw std::invalid_argument("photon_distribution: zero-norm input");
    std::vector<double> p(s.amps.size());
    for (std::size_t n = 0; n < s.amps.size(); ++n) p[n] = std::norm(s.amps[n]) / n2;
    return p;
}

}  // namespace fockherald
