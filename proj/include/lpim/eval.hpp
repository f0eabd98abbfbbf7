#ifndef LPIM_EVAL_HPP
#define LPIM_EVAL_HPP

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lpim/diffusion.hpp"
#include "lpim/ergm.hpp"
#include "lpim/graph.hpp"
#include "lpim/linkpred.hpp"
#include "lpim/seed_selection.hpp"

namespace lpim::eval {

struct TrialGraphs {
    Graph original;
    Graph observed;
    Graph added;       // observed + link-predicted edges
    Graph random;      // observed + uniform random non-edges
    EdgeSet removed;
    double similarity = 0.0;
};

struct MethodParams {
    int static_greedy_r = 200;
    int imrank_l = 1;
    int imrank_iters = 10;
    double pagerank_damping = 0.85;
    double pagerank_tol = 1e-8;
    int pagerank_max_iters = 100;
    bool greedy_lazy = true;
};

struct TrialResult {
    std::string method;
    double c_mean = 0.0;  // mean |O ∩ A|
    double b_mean = 0.0;  // mean |O ∩ R|
    double t_mean = 0.0;  // mean |O|
    std::vector<std::array<double, 3>> per_run;  // (c, b, t) per paired run
    // Cumulative per diffusion step, averaged over runs (index = step).
    std::vector<double> c_by_step, b_by_step, t_by_step;
};

struct Metrics {
    double m1 = 0.0;
    std::optional<double> m2;  // undefined when b_mean == 0
    double m3 = 0.0;
};

struct ReportRow {
    std::string dataset;
    std::string method;
    double diff_p = 0.0;
    double similarity = 0.0;
    double added = 0.0;   // c_mean
    double random = 0.0;  // b_mean
    double total = 0.0;   // t_mean
    Metrics metrics;
};

struct TrendRow {
    std::string dataset;
    double diff_p = 0.0;
    double similarity = 0.0;
    int step = 0;
    std::vector<double> m3_per_method;  // method order as configured
};

struct GridConfig {
    std::string dataset = "dataset";
    std::vector<std::string> methods = {"betweenness", "pagerank", "imrank",
                                        "static_greedy", "random"};
    std::vector<double> diff_ps = {0.25, 0.2, 0.15};
    std::vector<double> similarities = {0.9, 0.85, 0.8, 0.75, 0.7};
    int k = 100;
    DiffusionConfig diffusion;  // p set per grid cell
    MethodParams method_params;
    ergm::ErgmTermSet terms = ergm::ErgmTermSet::standard();
    int num_medial_graphs = 1000;
    ergm::MpleConfig mple;
    ergm::McmcConfig mcmc;
    bool m3_percent = false;  // scale m3 by 100 like m1/m2
    std::uint64_t master_seed = 1;
};

struct GridResult {
    std::vector<ReportRow> rows;
    std::vector<TrendRow> trend;
};

TrialGraphs build_trial_graphs(const Graph& original, double similarity,
                               const ergm::ErgmTermSet& terms, int num_medial_graphs,
                               const ergm::MpleConfig& mple, const ergm::McmcConfig& mcmc,
                               rng::Stream rng);

SeedSet select_seeds(const Graph& g, const std::string& method, int k,
                     const DiffusionConfig& cfg, const MethodParams& params,
                     rng::Stream rng);

// Seed selection per graph, then num_sims paired cascades. Run r shares one
// coin stream across the three graphs, so identical graphs with identical
// seeds give c_r = b_r = t_r.
TrialResult run_trial(const TrialGraphs& graphs, const std::string& method, int k,
                      const DiffusionConfig& cfg, const MethodParams& params,
                      rng::Stream rng);

Metrics compute_metrics(double c_mean, double b_mean, double t_mean, double similarity,
                        bool m3_percent = false);

GridResult run_experiment_grid(const Graph& original, const GridConfig& cfg);

std::vector<ReportRow> best_results(const std::vector<ReportRow>& rows);

// header: dataset,method,diff_p,similarity,added,random,total,m1,m2,m3
void write_report_csv(const std::vector<ReportRow>& rows, std::ostream& out,
                      bool full_precision = false);
void write_trend_csv(const std::vector<TrendRow>& trend,
                     const std::vector<std::string>& methods, std::ostream& out,
                     bool full_precision = false);

} // namespace lpim::eval

#endif
