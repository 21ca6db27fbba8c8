// operators.hpp
// Ladder operators (bare and standard), two-mode tensor products, and the
// exact beamsplitter unitary on the truncated joint Fock basis.

#pragma once

#include <algorithm>
#include <numbers>
#include <optional>
#include <utility>

#include "fock_state.hpp"

namespace fockherald {

// Beamsplitter mode transformation on creation operators:
//   a1+ -> |t| e^{+i phi_t} a3+  -  |r| e^{-i phi_r} a4+
//   a2+ -> |r| e^{+i phi_r} a3+  +  |t| e^{-i phi_t} a4+
// with |t|^2 + |r|^2 = 1. The default phases (phi_t = 0, phi_r = pi) leave
// the relative Fock phases of the heralded output unchanged.
struct BeamsplitterParams {
    double t_mag = 1.0;
    double r_mag = 0.0;
    double phi_t = 0.0;
    double phi_r = std::numbers::pi;

    static BeamsplitterParams from_reflectivity(double r_sq) {
        if (!(r_sq >= 0.0 && r_sq <= 1.0))
            throw std::invalid_argument("reflectivity must lie in [0, 1]");
        return {std::sqrt(1.0 - r_sq), std::sqrt(r_sq)};
    }

    // Parameters implementing the inverse mode transformation.
    BeamsplitterParams inverted() const {
        return {t_mag, r_mag, -phi_t, phi_r + std::numbers::pi};
    }

    void validate() const {
        if (t_mag < 0.0 || r_mag < 0.0 ||
            std::abs(t_mag * t_mag + r_mag * r_mag - 1.0) > 1e-12)
            throw std::invalid_argument("beamsplitter magnitudes must satisfy |t|^2 + |r|^2 = 1");
    }
};

// Shift every amplitude up one rung without bosonic weights. The output gains
// one slot of cutoff headroom; norm is preserved exactly.
inline PureState bare_raise(const PureState& s) {
    PureState out(s.cutoff() + 1);
    std::copy(s.amps.begin(), s.amps.end(), out.amps.begin() + 1);
    return out;
}

// Shift every amplitude down one rung; the vacuum amplitude is discarded.
// Lowering the vacuum yields the zero vector.
inline PureState bare_lower(const PureState& s) {
    PureState out(std::max(s.cutoff() - 1, 0));
    for (int n = 1; n <= s.cutoff(); ++n) out.amps[n - 1] = s.amps[n];
    return out;
}

// Standard creation operator: amps[n+1] = sqrt(n+1) * s[n], unnormalized.
inline PureState std_raise(const PureState& s) {
    PureState out(s.cutoff() + 1);
    for (int n = 0; n <= s.cutoff(); ++n)
        out.amps[n + 1] = std::sqrt(static_cast<double>(n + 1)) * s.amps[n];
    return out;
}

// Standard annihilation operator: amps[n-1] = sqrt(n) * s[n], unnormalized.
inline PureState std_lower(const PureState& s) {
    PureState out(std::max(s.cutoff() - 1, 0));
    for (int n = 1; n <= s.cutoff(); ++n)
        out.amps[n - 1] = std::sqrt(static_cast<double>(n)) * s.amps[n];
    return out;
}

inline TwoModeState tensor(const PureState& a, const PureState& b) {
    TwoModeState out(a.cutoff(), b.cutoff());
    for (int j = 0; j <= a.cutoff(); ++j)
        for (int k = 0; k <= b.cutoff(); ++k) out.at(j, k) = a.amps[j] * b.amps[k];
    return out;
}

// Applies the beamsplitter unitary blockwise per total photon number. Each
// input basis state |j, k> is expanded through the mode transformation,
//   |j, k>  ->  sum_{p, q} C(j,p) C(k,q) u^p v^{j-p} w^q x^{k-q}
//               * sqrt(m! l! / (j! k!)) |m, l>,   m = p + q, l = j + k - m,
// so total photon number is conserved exactly and amplitudes outside the
// input's support are never touched. Combinatorial factors are assembled in
// long double to keep the per-coefficient error far below test tolerances.
//
// By default the output cutoffs are sized to the input's largest occupied
// total photon number; explicit cutoffs smaller than that are rejected.
inline TwoModeState beamsplitter(const TwoModeState& s, const BeamsplitterParams& bs,
                                 std::optional<std::pair<int, int>> out_cutoffs = std::nullopt) {
    bs.validate();
    const int total = s.max_total_photons();

    int oc1 = total < 0 ? s.cutoff_first : total;
    int oc2 = total < 0 ? s.cutoff_second : total;
    if (out_cutoffs) {
        if (out_cutoffs->first < total || out_cutoffs->second < total)
            throw std::invalid_argument(
                "beamsplitter: output cutoffs cannot hold the total photon number");
        oc1 = out_cutoffs->first;
        oc2 = out_cutoffs->second;
    }
    TwoModeState out(oc1, oc2);
    if (total < 0) return out;

    using CL = std::complex<long double>;
    const CL u = static_cast<long double>(bs.t_mag) * std::polar(1.0L, static_cast<long double>(bs.phi_t));
    const CL v = -static_cast<long double>(bs.r_mag) * std::polar(1.0L, -static_cast<long double>(bs.phi_r));
    const CL w = static_cast<long double>(bs.r_mag) * std::polar(1.0L, static_cast<long double>(bs.phi_r));
    const CL x = static_cast<long double>(bs.t_mag) * std::polar(1.0L, -static_cast<long double>(bs.phi_t));

    const int maxj = s.cutoff_first;
    const int maxk = s.cutoff_second;
    std::vector<CL> pu(maxj + 1), pv(maxj + 1), pw(maxk + 1), px(maxk + 1);
    pu[0] = pv[0] = pw[0] = px[0] = 1.0L;
    for (int i = 1; i <= maxj; ++i) {
        pu[i] = pu[i - 1] * u;
        pv[i] = pv[i - 1] * v;
    }
    for (int i = 1; i <= maxk; ++i) {
        pw[i] = pw[i - 1] * w;
        px[i] = px[i - 1] * x;
    }

    // sqf[n] = sqrt(n!)
    std::vector<long double> sqf(total + 2);
    sqf[0] = 1.0L;
    for (int n = 1; n <= total + 1; ++n)
        sqf[n] = sqf[n - 1] * std::sqrt(static_cast<long double>(n));

    std::vector<long double> bin_j, bin_k;
    for (int j = 0; j <= std::min(maxj, total); ++j) {
        bin_j.assign(j + 1, 1.0L);
        for (int p = 1; p <= j; ++p) bin_j[p] = bin_j[p - 1] * (j - p + 1) / p;
        for (int k = 0; k <= std::min(maxk, total - j); ++k) {
            const Amplitude c = s.at(j, k);
            if (c == Amplitude{0.0, 0.0}) continue;
            const CL c_in(c.real(), c.imag());

            bin_k.assign(k + 1, 1.0L);
            for (int q = 1; q <= k; ++q) bin_k[q] = bin_k[q - 1] * (k - q + 1) / q;
            const long double inv_in = 1.0L / (sqf[j] * sqf[k]);

            for (int p = 0; p <= j; ++p) {
                for (int q = 0; q <= k; ++q) {
                    const int m = p + q;
                    const int l = j + k - m;
                    const long double coef = bin_j[p] * bin_k[q] * sqf[m] * sqf[l] * inv_in;
                    const CL term = c_in * pu[p] * pv[j - p] * pw[q] * px[k - q] * coef;
                    out.at(m, l) += Amplitude(static_cast<double>(term.real()),
                                              static_cast<double>(term.imag()));
                }
            }
        }
    }
    return out;
}

}  // namespace fockherald
