// fockherald command line tool: emits plot-ready datasets for the heralded
// photon-addition schemes and runs single-shot scheme evaluations.

#include <CLI11.hpp>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fockherald/fockherald.hpp"

namespace fh = fockherald;
using ordered_json = nlohmann::ordered_json;

namespace {

// --- dataset plumbing -------------------------------------------------------

struct Dataset {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    void add_row(std::initializer_list<double> values) { rows.emplace_back(values); }
};

// 12 significant digits, locale-independent, '.' decimal separator.
std::string format_number(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 12);
    return std::string(buf, res.ptr);
}

std::string render_csv(const Dataset& d) {
    std::string out;
    for (std::size_t c = 0; c < d.columns.size(); ++c) {
        if (c) out += ',';
        out += d.columns[c];
    }
    out += '\n';
    for (const auto& row : d.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out += ',';
            out += format_number(row[c]);
        }
        out += '\n';
    }
    return out;
}

std::string render_json(const Dataset& d) {
    ordered_json rows = ordered_json::array();
    for (const auto& row : d.rows) {
        ordered_json obj;
        for (std::size_t c = 0; c < row.size(); ++c) obj[d.columns[c]] = row[c];
        rows.push_back(std::move(obj));
    }
    return rows.dump(2) + "\n";
}

// Write-to-temp then atomic rename; a failed write never leaves a partial
// file behind.
void write_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot open '" + tmp + "' for writing");
        f << content;
        f.flush();
        if (!f.good()) {
            f.close();
            std::remove(tmp.c_str());
            throw std::runtime_error("failed while writing '" + tmp + "'");
        }
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw std::runtime_error("cannot move temporary file onto '" + path + "'");
    }
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> xs(n);
    for (int i = 0; i < n; ++i) xs[i] = lo + (hi - lo) * static_cast<double>(i) / (n - 1);
    return xs;
}

// --- figures ----------------------------------------------------------------

struct FigureOverrides {
    std::optional<double> alpha_max;
    std::optional<double> eta;
    std::optional<double> r_sq;
    std::optional<int> grid;
};

std::vector<double> alpha_grid(const FigureOverrides& o, double default_max, double step) {
    const double amax = o.alpha_max.value_or(default_max);
    const int n = o.grid.value_or(static_cast<int>(std::lround(amax / step)) + 1);
    return linspace(0.0, amax, n);
}

// Populations of the coherent state and its two raised versions.
Dataset fig_pncompare(const FigureOverrides& o) {
    const double alpha = o.alpha_max.value_or(1.0);
    const fh::PureState coh = fh::make_coherent(alpha);
    const auto p_coh = fh::photon_distribution(coh);
    const auto p_std = fh::photon_distribution(fh::std_raise(coh));
    const auto p_bare = fh::photon_distribution(fh::bare_raise(coh));

    Dataset d{{"n", "p_coherent", "p_std_raise", "p_bare_raise"}, {}};
    for (std::size_t n = 0; n < p_bare.size(); ++n)
        d.add_row({static_cast<double>(n), n < p_coh.size() ? p_coh[n] : 0.0, p_std[n], p_bare[n]});
    return d;
}

// Optimal reflection probability and zero-count success probability vs alpha.
Dataset fig_prob(const FigureOverrides& o) {
    Dataset d{{"alpha", "r_opt_sq", "p_success"}, {}};
    for (const double alpha : alpha_grid(o, 10.0, 0.1)) {
        const double a_sq = alpha * alpha;
        const auto opt = fh::maximize_scalar(
            [a_sq](double r) { return fh::closed_form_p0(a_sq, r); }, 0.0, 1.0);
        d.add_row({alpha, opt.x_star, opt.f_star});
    }
    return d;
}

// Fidelity of the fidelity-optimized accepted output, and of the normalized
// standard-raised state, with the bare-raised input.
Dataset fig_fid(const FigureOverrides& o) {
    Dataset d{{"alpha", "fid_bare_impl", "fid_std_raise"}, {}};
    for (const double alpha : alpha_grid(o, 7.0, 0.1)) {
        const double a_sq = alpha * alpha;
        const auto opt = fh::maximize_scalar(
            [a_sq](double r) { return fh::ideal_fidelity_series(a_sq, r); }, 0.0, 1.0);
        const fh::PureState coh = fh::make_coherent(alpha);
        const double fid_std = fh::fidelity(fh::std_raise(coh), fh::bare_raise(coh));
        d.add_row({alpha, opt.f_star, fid_std});
    }
    return d;
}

// Zero-count probability vs alpha at fixed reflectivity, by detector efficiency.
Dataset fig_eta_curves(const FigureOverrides& o) {
    const double r_sq = o.r_sq.value_or(0.869);
    const std::vector<double> etas = o.eta ? std::vector<double>{*o.eta}
                                           : std::vector<double>{1.0, 0.8, 0.6, 0.4};
    Dataset d{{"alpha", "r_sq", "eta", "p_zero_counts"}, {}};
    for (const double eta : etas)
        for (const double alpha : alpha_grid(o, 4.0, 0.1))
            d.add_row({alpha, r_sq, eta, fh::run_single_bs(alpha, r_sq, eta).p_success});
    return d;
}

// Scheme fidelity under inefficiency at the fixed reflectivity of the
// efficiency figures, vs the do-nothing baseline.
Dataset fig_basefid(const FigureOverrides& o) {
    const double r_sq = o.r_sq.value_or(0.869);
    const std::vector<double> etas =
        o.eta ? std::vector<double>{*o.eta} : std::vector<double>{0.8, 0.6, 0.4};
    Dataset d{{"alpha", "r_sq", "eta", "fid_scheme", "fid_do_nothing"}, {}};
    for (const double eta : etas)
        for (const double alpha : alpha_grid(o, 2.0, 0.05)) {
            const auto outcome = fh::run_single_bs(alpha, r_sq, eta);
            d.add_row({alpha, r_sq, eta, outcome.fidelity_vs_bare, fh::do_nothing_fidelity(alpha)});
        }
    return d;
}

// Mean fidelity vs total success probability over the (R1, R2) grid.
Dataset fig_cascade_scatter(const FigureOverrides& o) {
    const int n = o.grid.value_or(50);
    const double eta = o.eta.value_or(1.0);
    const std::vector<double> rs = linspace(0.01, 0.99, n);
    Dataset d{{"alpha", "r1_sq", "r2_sq", "p_total", "f_mean"}, {}};
    for (const double alpha : {1.0, std::sqrt(2.0), 2.0, 3.0})
        for (const double r1 : rs)
            for (const double r2 : rs) {
                const auto c = fh::run_cascade(alpha, r1, r2, eta);
                d.add_row({alpha, r1, r2, c.p_total, c.f_mean});
            }
    return d;
}

// Zero-count probability vs alpha for highly reflecting beamsplitters.
Dataset fig_characbs(const FigureOverrides& o) {
    const std::vector<double> rs = o.r_sq ? std::vector<double>{*o.r_sq}
                                          : std::vector<double>{0.9, 0.95, 0.99, 0.999};
    const double eta = o.eta.value_or(1.0);
    Dataset d{{"alpha", "r_sq", "p_zero_counts"}, {}};
    const auto grid = alpha_grid(o, 40.0, 0.05);
    for (const double r_sq : rs)
        for (const auto& pt : fh::characterization_curve(r_sq, grid, eta))
            d.add_row({pt.alpha, pt.r_sq, pt.p_zero_counts});
    return d;
}

// Photon-number distribution of the failed (one-count) branch.
Dataset fig_pnfail(const FigureOverrides& o) {
    const double alpha = o.alpha_max.value_or(2.0);
    const double r_sq = o.r_sq.value_or(fh::optimal_reflectivity(alpha * alpha));
    const auto failed = fh::failed_branch(alpha, r_sq);
    if (!failed.state) throw std::runtime_error("one-count branch has zero probability");
    const auto p = fh::photon_distribution(*failed.state);
    Dataset d{{"n", "probability"}, {}};
    for (std::size_t n = 0; n < p.size(); ++n) d.add_row({static_cast<double>(n), p[n]});
    return d;
}

enum : unsigned { kAlphaMax = 1u, kEta = 2u, kRSq = 4u, kGrid = 8u };

struct FigureSpec {
    unsigned allowed;
    std::function<Dataset(const FigureOverrides&)> make;
};

const std::map<std::string, FigureSpec>& figure_table() {
    static const std::map<std::string, FigureSpec> table = {
        {"pncompare", {kAlphaMax, fig_pncompare}},
        {"prob", {kAlphaMax | kGrid, fig_prob}},
        {"fid", {kAlphaMax | kGrid, fig_fid}},
        {"eta_curves", {kAlphaMax | kEta | kRSq | kGrid, fig_eta_curves}},
        {"basefid", {kAlphaMax | kEta | kRSq | kGrid, fig_basefid}},
        {"cascade_scatter", {kEta | kGrid, fig_cascade_scatter}},
        {"characbs", {kAlphaMax | kEta | kRSq | kGrid, fig_characbs}},
        {"pnfail", {kAlphaMax | kRSq, fig_pnfail}},
    };
    return table;
}

// --- run subcommand ---------------------------------------------------------

ordered_json distribution_json(const fh::BranchEnsemble& e) {
    ordered_json arr = ordered_json::array();
    if (e.empty()) return arr;
    for (const double p : fh::ensemble_photon_distribution(e)) arr.push_back(p);
    return arr;
}

int cmd_run(double alpha, const std::string& r_arg, double eta, int stages,
            std::optional<double> r2_arg) {
    double r1_sq = 0.0;
    if (r_arg == "opt") {
        r1_sq = fh::optimize_single_bs(alpha, eta, fh::Objective::probability).r_sq;
    } else {
        std::size_t pos = 0;
        r1_sq = std::stod(r_arg, &pos);
        if (pos != r_arg.size()) throw std::runtime_error("--r-sq expects a number or 'opt'");
        if (!(r1_sq >= 0.0 && r1_sq <= 1.0)) throw std::runtime_error("--r-sq must lie in [0, 1]");
    }

    ordered_json out;
    out["alpha"] = alpha;
    if (stages == 1) {
        const auto res = fh::run_single_bs(alpha, r1_sq, eta);
        out["r_sq"] = res.r_sq;
        out["eta"] = res.eta;
        out["p_success"] = res.p_success;
        out["fidelity_vs_bare"] = res.fidelity_vs_bare;
        out["photon_distribution"] = distribution_json(res.output);
    } else {
        const double r2_sq = r2_arg.value_or(r1_sq);
        if (!(r2_sq >= 0.0 && r2_sq <= 1.0)) throw std::runtime_error("--r2-sq must lie in [0, 1]");
        const auto res = fh::run_cascade(alpha, r1_sq, r2_sq, eta);
        out["r1_sq"] = r1_sq;
        out["r2_sq"] = r2_sq;
        out["eta"] = eta;
        out["p1_0"] = res.p1_0;
        out["f1"] = res.f1;
        out["p1_1"] = res.p1_1;
        out["p2_0"] = res.p2_0;
        out["f2"] = res.f2;
        out["f_mean"] = res.f_mean;
        out["p_total"] = res.p_total;
        out["photon_distribution"] = distribution_json(res.accepted);
    }
    std::printf("%s\n", out.dump().c_str());
    return 0;
}

}  // namespace

namespace {

int run_main(int argc, char** argv) {
    CLI::App app{"Truncated Fock-space simulator for heralded photon addition on coherent states"};
    app.require_subcommand(1);

    // figure
    auto* figure = app.add_subcommand("figure", "emit a dataset for one of the standard figures");
    std::string fig_name;
    std::string out_path;
    std::string format = "csv";
    FigureOverrides ov;
    std::string names;
    for (const auto& [k, v] : figure_table()) names += (names.empty() ? "" : ", ") + k;
    figure->add_option("name", fig_name, "one of: " + names)->required();
    auto* opt_amax = figure->add_option("--alpha-max", "coherent amplitude (range end, or the value for single-alpha figures)");
    auto* opt_eta = figure->add_option("--eta", "detector efficiency override");
    auto* opt_rsq = figure->add_option("--r-sq", "reflection probability override");
    auto* opt_grid = figure->add_option("--grid", "number of grid points per axis");
    figure->add_option("--out", out_path, "output path")->required();
    figure->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));

    // run
    auto* run = app.add_subcommand("run", "evaluate one scheme configuration, JSON on stdout");
    double run_alpha = 0.0;
    std::string run_r;
    double run_eta = 1.0;
    int run_stages = 1;
    double run_r2 = -1.0;
    run->add_option("--alpha", run_alpha, "coherent state amplitude")->required()
        ->check(CLI::NonNegativeNumber);
    run->add_option("--r-sq", run_r, "reflection probability in [0,1], or 'opt'")->required();
    run->add_option("--eta", run_eta, "detector efficiency")->check(CLI::Range(0.0, 1.0));
    run->add_option("--stages", run_stages, "1 = single beamsplitter, 2 = feedforward cascade")
        ->check(CLI::IsMember({1, 2}));
    auto* opt_r2 = run->add_option("--r2-sq", run_r2, "second-stage reflection probability");

    CLI11_PARSE(app, argc, argv);

    if (figure->parsed()) {
        const auto it = figure_table().find(fig_name);
        if (it == figure_table().end())
            throw std::runtime_error("unknown figure '" + fig_name + "' (expected one of: " + names + ")");

        // reject overrides the figure does not understand, before computing
        const unsigned allowed = it->second.allowed;
        if (opt_amax->count() && !(allowed & kAlphaMax))
            throw std::runtime_error("figure '" + fig_name + "' does not accept --alpha-max");
        if (opt_eta->count() && !(allowed & kEta))
            throw std::runtime_error("figure '" + fig_name + "' does not accept --eta");
        if (opt_rsq->count() && !(allowed & kRSq))
            throw std::runtime_error("figure '" + fig_name + "' does not accept --r-sq");
        if (opt_grid->count() && !(allowed & kGrid))
            throw std::runtime_error("figure '" + fig_name + "' does not accept --grid");

        if (opt_amax->count()) ov.alpha_max = opt_amax->as<double>();
        if (opt_eta->count()) ov.eta = opt_eta->as<double>();
        if (opt_rsq->count()) ov.r_sq = opt_rsq->as<double>();
        if (opt_grid->count()) ov.grid = opt_grid->as<int>();
        if (ov.alpha_max && !(*ov.alpha_max > 0.0))
            throw std::runtime_error("--alpha-max must be positive");
        if (ov.eta && !(*ov.eta >= 0.0 && *ov.eta <= 1.0))
            throw std::runtime_error("--eta must lie in [0, 1]");
        if (ov.r_sq && !(*ov.r_sq >= 0.0 && *ov.r_sq <= 1.0))
            throw std::runtime_error("--r-sq must lie in [0, 1]");
        if (ov.grid && *ov.grid < 2) throw std::runtime_error("--grid must be >= 2");

        const Dataset d = it->second.make(ov);
        write_atomic(out_path, format == "csv" ? render_csv(d) : render_json(d));
        return 0;
    }
    return cmd_run(run_alpha, run_r, run_eta, run_stages,
                   opt_r2->count() ? std::optional<double>(run_r2) : std::nullopt);
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run_main(argc, argv);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
