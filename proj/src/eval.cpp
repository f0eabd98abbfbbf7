#include "lpim/eval.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace lpim::eval {

namespace {

constexpr std::uint64_t kRemoveStream = 0x72656d00;
constexpr std::uint64_t kPredictStream = 0x70726400;
constexpr std::uint64_t kRandomGraphStream = 0x726e6400;
constexpr std::uint64_t kSeedStream = 0x73656c00;
constexpr std::uint64_t kCascadeStream = 0x64696600;
constexpr std::uint64_t kFillStream = 0x66696c00;

int method_id(const std::string& method) {
    if (method == "betweenness") return 0;
    if (method == "pagerank") return 1;
    if (method == "imrank") return 2;
    if (method == "static_greedy") return 3;
    if (method == "greedy") return 4;
    if (method == "random") return 5;
    throw GraphError("unknown method: " + method);
}

} // namespace

TrialGraphs build_trial_graphs(const Graph& original, double similarity,
                               const ergm::ErgmTermSet& terms, int num_medial_graphs,
                               const ergm::MpleConfig& mple, const ergm::McmcConfig& mcmc,
                               rng::Stream rng) {
    if (!(similarity > 0.0 && similarity < 1.0))
        throw GraphError("build_trial_graphs: similarity must be in (0, 1)");

    TrialGraphs tg;
    tg.original = original;
    tg.similarity = similarity;
    auto [observed, removed] =
        remove_random_edges(original, similarity, rng.substream(kRemoveStream));
    tg.observed = std::move(observed);
    tg.removed = std::move(removed);
    const auto m = static_cast<std::int64_t>(tg.removed.size());

    LinkPredConfig lp;
    lp.num_medial_graphs = num_medial_graphs;
    lp.trim = TrimMode::top_m(m);
    auto predicted =
        predict_links(tg.observed, terms, lp, mple, mcmc, rng.substream(kPredictStream));
    tg.added = std::move(predicted.added);

    // The sampler can in principle visit fewer than m candidate dyads; pad
    // with uniform non-edges so the added/random edge counts stay equal.
    if (tg.added.edge_count() < tg.observed.edge_count() + m) {
        auto missing = tg.observed.edge_count() + m - tg.added.edge_count();
        auto fill = sample_random_nonedges(tg.added, missing, rng.substream(kFillStream));
        tg.added = add_edges(tg.added, fill);
    }

    tg.random = add_edges(tg.observed, sample_random_nonedges(tg.observed, m,
                                                              rng.substream(kRandomGraphStream)));
    return tg;
}

SeedSet select_seeds(const Graph& g, const std::string& method, int k,
                     const DiffusionConfig& cfg, const MethodParams& params,
                     rng::Stream rng) {
    switch (method_id(method)) {
        case 0: return select_top_k(brandes_betweenness(g), k, "betweenness");
        case 1:
            return select_top_k(pagerank(g, params.pagerank_damping, params.pagerank_tol,
                                         params.pagerank_max_iters),
                                k, "pagerank");
        case 2: return imrank(g, k, cfg.p, params.imrank_l, params.imrank_iters);
        case 3: return static_greedy(g, k, cfg.p, params.static_greedy_r, rng);
        case 4: return greedy_im(g, k, cfg, rng, params.greedy_lazy);
        case 5: return random_seeds(g, k, rng);
    }
    throw GraphError("unknown method: " + method);
}

namespace {

struct RunCounts {
    std::vector<std::int64_t> c, b, t;  // cumulative per step
};

// Activation step per node, or INT_MAX when never activated.
std::vector<int> step_of(const CascadeResult& run, int n) {
    std::vector<int> steps(n, std::numeric_limits<int>::max());
    std::size_t pos = 0;
    for (std::size_t s = 0; s < run.newly_per_step.size(); ++s)
        for (int c = 0; c < run.newly_per_step[s]; ++c)
            steps[run.infected[pos++]] = static_cast<int>(s);
    return steps;
}

std::vector<std::int64_t> cumulative_pairwise(const std::vector<int>& a,
                                              const std::vector<int>& b, int max_step) {
    std::vector<std::int64_t> cum(max_step + 1, 0);
    for (std::size_t v = 0; v < a.size(); ++v) {
        int m = std::max(a[v], b[v]);
        if (m <= max_step) ++cum[m];
    }
    std::partial_sum(cum.begin(), cum.end(), cum.begin());
    return cum;
}

} // namespace

TrialResult run_trial(const TrialGraphs& graphs, const std::string& method, int k,
                      const DiffusionConfig& cfg, const MethodParams& params,
                      rng::Stream rng) {
    const int mid = method_id(method);
    const int n = graphs.original.node_count();
    if (k > n) throw GraphError("run_trial: k exceeds node count");

    // Paired design: the three variants share one method-keyed selection
    // substream, so selection randomness (snapshot coins, random draws) is
    // common across variants and identical graphs yield identical seeds.
    auto sel = rng.substream(kSeedStream, static_cast<std::uint64_t>(mid));
    auto seeds_o = select_seeds(graphs.original, method, k, cfg, params, sel);
    auto seeds_a = select_seeds(graphs.added, method, k, cfg, params, sel);
    auto seeds_r = select_seeds(graphs.random, method, k, cfg, params, sel);

    std::vector<RunCounts> runs(cfg.num_sims);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int r = 0; r < cfg.num_sims; ++r) {
        // One coin stream per paired run, shared across the three graphs.
        auto coins = rng.substream(kCascadeStream, static_cast<std::uint64_t>(r));
        auto o = simulate_ic(graphs.original, seeds_o.nodes, cfg.p, cfg.max_steps, coins);
        auto a = simulate_ic(graphs.added, seeds_a.nodes, cfg.p, cfg.max_steps, coins);
        auto rr = simulate_ic(graphs.random, seeds_r.nodes, cfg.p, cfg.max_steps, coins);

        auto so = step_of(o, n);
        auto sa = step_of(a, n);
        auto sr = step_of(rr, n);
        int max_step = std::max({o.steps_taken, a.steps_taken, rr.steps_taken});

        runs[r].c = cumulative_pairwise(so, sa, max_step);
        runs[r].b = cumulative_pairwise(so, sr, max_step);
        std::vector<std::int64_t> t(max_step + 1, 0);
        for (int v = 0; v < n; ++v)
            if (so[v] <= max_step) ++t[so[v]];
        std::partial_sum(t.begin(), t.end(), t.begin());
        runs[r].t = std::move(t);
    }

    TrialResult result;
    result.method = method;
    std::size_t max_len = 0;
    for (const auto& run : runs) max_len = std::max(max_len, run.c.size());
    result.c_by_step.assign(max_len, 0.0);
    result.b_by_step.assign(max_len, 0.0);
    result.t_by_step.assign(max_len, 0.0);

    for (const auto& run : runs) {
        double c_final = static_cast<double>(run.c.back());
        double b_final = static_cast<double>(run.b.back());
        double t_final = static_cast<double>(run.t.back());
        result.per_run.push_back({c_final, b_final, t_final});
        result.c_mean += c_final;
        result.b_mean += b_final;
        result.t_mean += t_final;
        for (std::size_t s = 0; s < max_len; ++s) {
            // cascades that ended early stay at their final value
            result.c_by_step[s] += static_cast<double>(s < run.c.size() ? run.c[s] : run.c.back());
            result.b_by_step[s] += static_cast<double>(s < run.b.size() ? run.b[s] : run.b.back());
            result.t_by_step[s] += static_cast<double>(s < run.t.size() ? run.t[s] : run.t.back());
        }
    }
    const double inv = 1.0 / cfg.num_sims;
    result.c_mean *= inv;
    result.b_mean *= inv;
    result.t_mean *= inv;
    for (std::size_t s = 0; s < max_len; ++s) {
        result.c_by_step[s] *= inv;
        result.b_by_step[s] *= inv;
        result.t_by_step[s] *= inv;
    }
    return result;
}

Metrics compute_metrics(double c_mean, double b_mean, double t_mean, double similarity,
                        bool m3_percent) {
    if (!(similarity > 0.0 && similarity < 1.0))
        throw GraphError("compute_metrics: similarity must be in (0, 1)");
    if (!(t_mean > 0.0))
        throw GraphError("compute_metrics: total spread must be positive");
    const double occlusion = 1.0 - similarity;
    Metrics m;
    m.m1 = 100.0 * (c_mean - b_mean) / (t_mean * occlusion);
    if (b_mean > 0.0) m.m2 = 100.0 * (c_mean - b_mean) / (b_mean * occlusion);
    m.m3 = (c_mean - b_mean) / occlusion * (m3_percent ? 100.0 : 1.0);
    return m;
}

GridResult run_experiment_grid(const Graph& original, const GridConfig& cfg) {
    if (cfg.methods.empty() || cfg.diff_ps.empty() || cfg.similarities.empty())
        throw GraphError("run_experiment_grid: empty grid");
    if (cfg.k > original.node_count())
        throw GraphError("run_experiment_grid: k exceeds node count");
    for (const auto& m : cfg.methods) method_id(m);  // validate up front

    rng::Stream master(cfg.master_seed);

    auto similarities = cfg.similarities;
    std::sort(similarities.rbegin(), similarities.rend());
    auto diff_ps = cfg.diff_ps;
    std::sort(diff_ps.rbegin(), diff_ps.rend());

    // One TrialGraphs per similarity, shared across methods and diff_ps.
    std::vector<TrialGraphs> cells;
    cells.reserve(similarities.size());
    for (std::size_t si = 0; si < similarities.size(); ++si) {
        cells.push_back(build_trial_graphs(
            original, similarities[si], cfg.terms, cfg.num_medial_graphs, cfg.mple,
            cfg.mcmc, master.substream(0x63656c6cu, static_cast<std::uint64_t>(si))));
    }

    GridResult out;
    for (std::size_t dpi = 0; dpi < diff_ps.size(); ++dpi) {
        for (std::size_t si = 0; si < similarities.size(); ++si) {
            std::vector<TrialResult> cell_results;
            for (std::size_t mi = 0; mi < cfg.methods.size(); ++mi) {
                DiffusionConfig dc = cfg.diffusion;
                dc.p = diff_ps[dpi];
                auto trial = run_trial(
                    cells[si], cfg.methods[mi], cfg.k, dc, cfg.method_params,
                    master.substream(0x7472690au,
                                     rng::mix(dpi, rng::mix(si, mi))));

                ReportRow row;
                row.dataset = cfg.dataset;
                row.method = cfg.methods[mi];
                row.diff_p = diff_ps[dpi];
                row.similarity = similarities[si];
                row.added = trial.c_mean;
                row.random = trial.b_mean;
                row.total = trial.t_mean;
                row.metrics = compute_metrics(trial.c_mean, trial.b_mean, trial.t_mean,
                                              similarities[si], cfg.m3_percent);
                out.rows.push_back(std::move(row));
                cell_results.push_back(std::move(trial));
            }

            std::size_t max_steps = 0;
            for (const auto& tr : cell_results)
                max_steps = std::max(max_steps, tr.c_by_step.size());
            for (std::size_t s = 0; s < max_steps; ++s) {
                TrendRow t;
                t.dataset = cfg.dataset;
                t.diff_p = diff_ps[dpi];
                t.similarity = similarities[si];
                t.step = static_cast<int>(s);
                for (const auto& tr : cell_results) {
                    double c = s < tr.c_by_step.size() ? tr.c_by_step[s] : tr.c_by_step.back();
                    double b = s < tr.b_by_step.size() ? tr.b_by_step[s] : tr.b_by_step.back();
                    t.m3_per_method.push_back((c - b) / (1.0 - similarities[si]) *
                                              (cfg.m3_percent ? 100.0 : 1.0));
                }
                out.trend.push_back(std::move(t));
            }
        }
    }
    return out;
}

std::vector<ReportRow> best_results(const std::vector<ReportRow>& rows) {
    std::vector<ReportRow> best;
    for (const auto& row : rows) {
        auto it = std::find_if(best.begin(), best.end(), [&](const ReportRow& b) {
            return b.dataset == row.dataset && b.method == row.method;
        });
        if (it == best.end()) {
            best.push_back(row);
            continue;
        }
        double m2_new = row.metrics.m2.value_or(-std::numeric_limits<double>::infinity());
        double m2_old = it->metrics.m2.value_or(-std::numeric_limits<double>::infinity());
        if (row.metrics.m1 > it->metrics.m1 ||
            (row.metrics.m1 == it->metrics.m1 && m2_new > m2_old)) {
            *it = row;
        }
    }
    return best;
}

namespace {

std::string fmt(double v, bool full_precision) {
    std::ostringstream s;
    if (full_precision)
        s << std::setprecision(std::numeric_limits<double>::max_digits10) << v;
    else
        s << std::fixed << std::setprecision(2) << v;
    return s.str();
}

} // namespace

void write_report_csv(const std::vector<ReportRow>& rows, std::ostream& out,
                      bool full_precision) {
    out << "dataset,method,diff_p,similarity,added,random,total,m1,m2,m3\n";
    for (const auto& r : rows) {
        out << r.dataset << "," << r.method << "," << fmt(r.diff_p, full_precision) << ","
            << fmt(r.similarity, full_precision) << "," << fmt(r.added, full_precision)
            << "," << fmt(r.random, full_precision) << "," << fmt(r.total, full_precision)
            << "," << fmt(r.metrics.m1, full_precision) << ",";
        if (r.metrics.m2) out << fmt(*r.metrics.m2, full_precision);
        out << "," << fmt(r.metrics.m3, full_precision) << "\n";
    }
}

void write_trend_csv(const std::vector<TrendRow>& trend,
                     const std::vector<std::string>& methods, std::ostream& out,
                     bool full_precision) {
    out << "dataset,diff_p,similarity,step";
    for (const auto& m : methods) out << ",m3_" << m;
    out << "\n";
    for (const auto& t : trend) {
        out << t.dataset << "," << fmt(t.diff_p, full_precision) << ","
            << fmt(t.similarity, full_precision) << "," << t.step;
        for (double v : t.m3_per_method) out << "," << fmt(v, full_precision);
        out << "\n";
    }
}

} // namespace lpim::eval
