// measurement.hpp
// Conditioning a two-mode state on a photodetection outcome in one mode,
// for ideal and inefficient detectors. An inefficient detector with
// efficiency eta misses each incident photon independently with probability
// 1 - eta, so the zero-count POVM element weights the k-photon component of
// the watched mode by (1 - eta)^k. Conditional outputs are kept as exact
// ensembles of pure branches labelled by the true photon number.

#pragma once

#include <optional>

#include "fock_state.hpp"

namespace fockherald {

struct DetectorModel {
    double eta = 1.0;

    void validate() const {
        if (!(eta >= 0.0 && eta <= 1.0))
            throw std::invalid_argument("detector efficiency must lie in [0, 1]");
    }
};

struct Branch {
    double weight = 0.0;
    PureState state;  // unit norm
};
using BranchEnsemble = std::vector<Branch>;

// Outcome of conditioning on an exact count. A missing state flags an
// impossible heralding event (probability zero), distinct from numerical
// failure.
struct CountOutcome {
    double prob = 0.0;
    std::optional<PureState> state;
};

// Outcome of POVM conditioning with an inefficient detector. An empty
// ensemble flags an impossible event.
struct HeraldOutcome {
    double prob = 0.0;
    BranchEnsemble output;
};

// Photon-number distribution of one mode, marginalized over the other.
inline std::vector<double> mode_distribution(const TwoModeState& s, Mode watched) {
    const double n2 = s.norm_sq();
    if (n2 == 0.0) throw std::invalid_argument("mode_distribution: zero-norm input");
    const int dim = watched == Mode::first ? s.dim_first() : s.dim_second();
    const int other = watched == Mode::first ? s.dim_second() : s.dim_first();
    std::vector<double> p(dim, 0.0);
    for (int m = 0; m < dim; ++m)
        for (int k = 0; k < other; ++k)
            p[m] += std::norm(watched == Mode::first ? s.at(m, k) : s.at(k, m));
    for (auto& v : p) v /= n2;
    return p;
}

namespace detail {

// The other-mode slice at watched = m, normalized; nullopt when the slice
// carries no amplitude.
inline std::optional<PureState> conditional_slice(const TwoModeState& s, Mode watched, int m) {
    const int dim = watched == Mode::first ? s.dim_first() : s.dim_second();
    const int other = watched == Mode::first ? s.dim_second() : s.dim_first();
    if (m >= dim) return std::nullopt;
    PureState slice(other - 1);
    double n2 = 0.0;
    for (int k = 0; k < other; ++k) {
        slice.amps[k] = watched == Mode::first ? s.at(m, k) : s.at(k, m);
        n2 += std::norm(slice.amps[k]);
    }
    if (n2 == 0.0) return std::nullopt;
    const double inv = 1.0 / std::sqrt(n2);
    for (auto& a : slice.amps) a *= inv;
    return slice;
}

}  // namespace detail

// Ideal photon-number-resolving detection of exactly m photons in the
// watched mode. prob sums to 1 over all m.
inline CountOutcome project_counts(const TwoModeState& s, Mode watched, int m) {
    if (m < 0) throw std::invalid_argument("project_counts: count must be >= 0");
    const double n2 = s.norm_sq();
    if (n2 == 0.0) throw std::invalid_argument("project_counts: zero-norm input");

    const int dim = watched == Mode::first ? s.dim_first() : s.dim_second();
    if (m >= dim) return {0.0, std::nullopt};

    const int other = watched == Mode::first ? s.dim_second() : s.dim_first();
    double block = 0.0;
    for (int k = 0; k < other; ++k)
        block += std::norm(watched == Mode::first ? s.at(m, k) : s.at(k, m));

    auto slice = detail::conditional_slice(s, watched, m);
    if (!slice) return {0.0, std::nullopt};
    return {block / n2, std::move(slice)};
}

// Zero counts at a detector of efficiency eta:
//   prob = sum_k (1 - eta)^k p_k,
// with one pure branch per surviving true photon number k, weighted
// (1 - eta)^k p_k / prob.
inline HeraldOutcome condition_zero_counts_inefficient(const TwoModeState& s, Mode watched,
                                                       DetectorModel det) {
    det.validate();
    const auto p = mode_distribution(s, watched);

    HeraldOutcome res;
    double povm_weight = 1.0;  // (1 - eta)^k
    for (std::size_t k = 0; k < p.size(); ++k) {
        const double wk = povm_weight * p[k];
        if (wk > 0.0) {
            auto slice = detail::conditional_slice(s, watched, static_cast<int>(k));
            if (slice) res.output.push_back({wk, std::move(*slice)});
        }
        res.prob += wk;
        povm_weight *= 1.0 - det.eta;
        if (povm_weight == 0.0) break;
    }
    if (res.prob == 0.0) return {0.0, {}};
    for (auto& b : res.output) b.weight /= res.prob;
    return res;
}

// Exactly one count at a detector of efficiency eta: of k incident photons,
// exactly one is counted with probability k eta (1 - eta)^{k-1}.
inline HeraldOutcome condition_one_count_inefficient(const TwoModeState& s, Mode watched,
                                                     DetectorModel det) {
    det.validate();
    const auto p = mode_distribution(s, watched);

    HeraldOutcome res;
    double miss_weight = 1.0;  // (1 - eta)^{k-1}
    for (std::size_t k = 1; k < p.size(); ++k) {
        const double wk = static_cast<double>(k) * det.eta * miss_weight * p[k];
        if (wk > 0.0) {
            auto slice = detail::conditional_slice(s, watched, static_cast<int>(k));
            if (slice) res.output.push_back({wk, std::move(*slice)});
        }
        res.prob += wk;
        miss_weight *= 1.0 - det.eta;
        if (miss_weight == 0.0) break;
    }
    if (res.prob == 0.0) return {0.0, {}};
    for (auto& b : res.output) b.weight /= res.prob;
    return res;
}

// Fidelity of a pure-branch mixture with a pure target: the weighted average
// of the branch fidelities.
inline double ensemble_fidelity(const BranchEnsemble& e, const PureState& target) {
    if (e.empty()) throw std::invalid_argument("ensemble_fidelity: empty ensemble");
    double f = 0.0;
    for (const auto& b : e) f += b.weight * fidelity(b.state, target);
    return f;
}

// Photon-number distribution of the mixture.
inline std::vector<double> ensemble_photon_distribution(const BranchEnsemble& e) {
    if (e.empty()) throw std::invalid_argument("ensemble_photon_distribution: empty ensemble");
    std::size_t n = 0;
    for (const auto& b : e) n = std::max(n, b.state.amps.size());
    std::vector<double> p(n, 0.0);
    for (const auto& b : e) {
        const auto pb = photon_distribution(b.state);
        for (std::size_t i = 0; i < pb.size(); ++i) p[i] += b.weight * pb[i];
    }
    return p;
}

}  // namespace fockherald
