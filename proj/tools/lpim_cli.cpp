// lpim: link-prediction-completed influence maximization toolkit.
//
// Exit codes: 0 success, 1 usage/config error, 2 data error, 3 internal error.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "lpim/diffusion.hpp"
#include "lpim/ergm.hpp"
#include "lpim/eval.hpp"
#include "lpim/graph.hpp"
#include "lpim/linkpred.hpp"
#include "lpim/rng.hpp"
#include "lpim/seed_selection.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<double> parse_doubles(const std::string& csv) {
    std::vector<double> out;
    std::istringstream in(csv);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (!item.empty()) out.push_back(std::stod(item));
    }
    return out;
}

std::vector<std::string> parse_strings(const std::string& csv) {
    std::vector<std::string> out;
    std::istringstream in(csv);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

// Flat key=value experiment config; '#' comments. CLI flags override keys.
struct EvalSettings {
    std::string dataset_path;
    std::string dataset_name = "dataset";
    std::string methods = "betweenness,pagerank,imrank,static_greedy,random";
    int k = 100;
    std::string diff_ps = "0.25,0.2,0.15";
    std::string similarities = "0.9,0.85,0.8,0.75,0.7";
    int num_medial_graphs = 1000;
    int num_sims = 100;
    int max_steps = 100;
    int static_greedy_r = 200;
    int imrank_l = 1;
    int imrank_iters = 10;
    std::string ergm_terms = "edges,isolates,gw_degree(0.5),gw_esp(0.5),gw_dsp(0.5)";
    long long mcmc_burn_in = -1;
    long long mcmc_thinning = -1;
    int mcmc_chains = 4;
    unsigned long long master_seed = 1;
    std::string out_dir = ".";
    bool m3_percent = false;
    bool full_precision = false;
    int threads = 0;

    void apply(const std::string& key, const std::string& value) {
        if (key == "dataset") dataset_path = value;
        else if (key == "dataset_name") dataset_name = value;
        else if (key == "methods") methods = value;
        else if (key == "k") k = std::stoi(value);
        else if (key == "diff_ps") diff_ps = value;
        else if (key == "similarities") similarities = value;
        else if (key == "num_medial_graphs") num_medial_graphs = std::stoi(value);
        else if (key == "num_sims") num_sims = std::stoi(value);
        else if (key == "max_steps") max_steps = std::stoi(value);
        else if (key == "static_greedy_r") static_greedy_r = std::stoi(value);
        else if (key == "imrank_l") imrank_l = std::stoi(value);
        else if (key == "imrank_iters") imrank_iters = std::stoi(value);
        else if (key == "ergm_terms") ergm_terms = value;
        else if (key == "mcmc_burn_in") mcmc_burn_in = std::stoll(value);
        else if (key == "mcmc_thinning") mcmc_thinning = std::stoll(value);
        else if (key == "mcmc_chains") mcmc_chains = std::stoi(value);
        else if (key == "master_seed") master_seed = std::stoull(value);
        else if (key == "out_dir") out_dir = value;
        else if (key == "m3_percent") m3_percent = value == "1" || value == "true";
        else if (key == "full_precision") full_precision = value == "1" || value == "true";
        else if (key == "threads") threads = std::stoi(value);
        else throw UsageError("unknown config key: " + key);
    }

    void load_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw UsageError("cannot open config file: " + path);
        std::string line;
        int line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            auto start = line.find_first_not_of(" \t\r");
            if (start == std::string::npos || line[start] == '#') continue;
            auto eq = line.find('=');
            if (eq == std::string::npos)
                throw UsageError("config line " + std::to_string(line_no) +
                                 ": expected key=value");
            auto key = line.substr(start, eq - start);
            auto value = line.substr(eq + 1);
            auto trim_ws = [](std::string& s) {
                s.erase(0, s.find_first_not_of(" \t\r"));
                auto end = s.find_last_not_of(" \t\r");
                s.erase(end == std::string::npos ? 0 : end + 1);
            };
            trim_ws(key);
            trim_ws(value);
            apply(key, value);
        }
    }

    nlohmann::json to_json() const {
        return {{"dataset", dataset_path},
                {"dataset_name", dataset_name},
                {"methods", methods},
                {"k", k},
                {"diff_ps", diff_ps},
                {"similarities", similarities},
                {"num_medial_graphs", num_medial_graphs},
                {"num_sims", num_sims},
                {"max_steps", max_steps},
                {"static_greedy_r", static_greedy_r},
                {"imrank_l", imrank_l},
                {"imrank_iters", imrank_iters},
                {"ergm_terms", ergm_terms},
                {"mcmc_burn_in", mcmc_burn_in},
                {"mcmc_thinning", mcmc_thinning},
                {"mcmc_chains", mcmc_chains},
                {"master_seed", master_seed},
                {"out_dir", out_dir},
                {"m3_percent", m3_percent},
                {"full_precision", full_precision}};
    }
};

void set_threads(int threads) {
#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#else
    (void)threads;
#endif
}

std::vector<int> read_seed_file(const std::string& path, const lpim::Graph& g) {
    std::ifstream in(path);
    if (!in) throw lpim::GraphError("cannot open seed file: " + path);
    std::map<std::int64_t, int> index_of;
    for (int v = 0; v < g.node_count(); ++v) index_of[g.label(v)] = v;
    std::vector<int> seeds;
    std::string line;
    while (std::getline(in, line)) {
        auto start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#') continue;
        auto label = std::stoll(line);
        auto it = index_of.find(label);
        if (it == index_of.end())
            throw lpim::GraphError("seed label not in graph: " + std::to_string(label));
        seeds.push_back(it->second);
    }
    return seeds;
}

int cmd_stats(const std::string& path) {
    lpim::LoadReport rep;
    auto g = lpim::load_snap_edge_list_file(path, &rep);
    auto s = lpim::graph_stats(g);
    std::cout << "nodes " << s.nodes << "\n"
              << "edges " << s.edges << "\n"
              << "triangles " << s.triangles << "\n"
              << "isolates " << s.isolates << "\n"
              << "avg_clustering " << s.avg_clustering << "\n"
              << "largest_wcc_nodes " << s.largest_wcc_nodes << "\n"
              << "largest_wcc_edges " << s.largest_wcc_edges << "\n";
    if (rep.self_loops_dropped || rep.duplicates_dropped)
        std::cerr << "warning: dropped " << rep.self_loops_dropped << " self-loops, "
                  << rep.duplicates_dropped << " duplicate edges\n";
    return 0;
}

int cmd_evaluate(const EvalSettings& s) {
    using clock = std::chrono::steady_clock;
    if (s.dataset_path.empty()) throw UsageError("evaluate: dataset is required");
    set_threads(s.threads);

    auto t0 = clock::now();
    auto original = lpim::load_snap_edge_list_file(s.dataset_path);
    if (s.k > original.node_count())
        throw UsageError("evaluate: k=" + std::to_string(s.k) + " exceeds node count " +
                         std::to_string(original.node_count()));

    lpim::eval::GridConfig grid;
    grid.dataset = s.dataset_name;
    grid.methods = parse_strings(s.methods);
    grid.diff_ps = parse_doubles(s.diff_ps);
    grid.similarities = parse_doubles(s.similarities);
    grid.k = s.k;
    grid.diffusion.num_sims = s.num_sims;
    grid.diffusion.max_steps = s.max_steps;
    grid.method_params.static_greedy_r = s.static_greedy_r;
    grid.method_params.imrank_l = s.imrank_l;
    grid.method_params.imrank_iters = s.imrank_iters;
    grid.terms = lpim::ergm::ErgmTermSet::parse(s.ergm_terms);
    grid.num_medial_graphs = s.num_medial_graphs;
    grid.mcmc.burn_in = s.mcmc_burn_in;
    grid.mcmc.thinning = s.mcmc_thinning;
    grid.mcmc.chains = s.mcmc_chains;
    grid.m3_percent = s.m3_percent;
    grid.master_seed = s.master_seed;

    auto t1 = clock::now();
    auto result = lpim::eval::run_experiment_grid(original, grid);
    auto t2 = clock::now();

    std::filesystem::create_directories(s.out_dir);
    auto out_path = [&](const char* name) {
        return (std::filesystem::path(s.out_dir) / name).string();
    };
    {
        std::ofstream out(out_path("report.csv"));
        lpim::eval::write_report_csv(result.rows, out, s.full_precision);
    }
    {
        std::ofstream out(out_path("best.csv"));
        lpim::eval::write_report_csv(lpim::eval::best_results(result.rows), out,
                                     s.full_precision);
    }
    {
        std::ofstream out(out_path("trend.csv"));
        lpim::eval::write_trend_csv(result.trend, grid.methods, out, s.full_precision);
    }
    auto t3 = clock::now();

    auto ms = [](auto a, auto b) {
        return std::chrono::duration_cast<std::chrono::milliseconds>(b - a).count();
    };
    nlohmann::json manifest = {
        {"tool_version", kVersion},
        {"master_seed", s.master_seed},
        {"config", s.to_json()},
        {"timings_ms",
         {{"load", ms(t0, t1)}, {"grid", ms(t1, t2)}, {"write", ms(t2, t3)}}},
        {"outputs", {"report.csv", "best.csv", "trend.csv"}}};
    std::ofstream(out_path("manifest.json")) << manifest.dump(2) << "\n";

    std::cout << "wrote " << result.rows.size() << " report rows to " << s.out_dir
              << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"ERGM link prediction + influence maximization toolkit"};
    app.require_subcommand(1);

    // stats
    std::string stats_path;
    auto* stats = app.add_subcommand("stats", "print structural statistics of an edge list");
    stats->add_option("graph", stats_path, "SNAP edge-list file")->required();

    // fit-ergm
    std::string fit_path, fit_terms = "edges,isolates,gw_degree(0.5),gw_esp(0.5),gw_dsp(0.5)";
    std::string fit_out;
    unsigned long long fit_seed = 1;
    auto* fit = app.add_subcommand("fit-ergm", "fit an ERGM by maximum pseudo-likelihood");
    fit->add_option("graph", fit_path)->required();
    fit->add_option("--terms", fit_terms, "term list, e.g. edges,gw_esp(0.5)");
    fit->add_option("--out", fit_out, "model output file (default: stdout)");
    fit->add_option("--seed", fit_seed, "master seed");

    // predict
    std::string pred_path, pred_terms = "edges,isolates,gw_degree(0.5),gw_esp(0.5),gw_dsp(0.5)";
    std::string pred_map_out = "probabilities.txt", pred_graph_out = "completed.txt";
    int pred_medial = 1000;
    long long pred_top_m = -1;
    double pred_threshold = -1.0;
    long long pred_burn_in = -1, pred_thinning = -1;
    int pred_chains = 4, pred_threads = 0;
    unsigned long long pred_seed = 1;
    auto* pred = app.add_subcommand("predict", "complete a graph via ERGM link prediction");
    pred->add_option("graph", pred_path)->required();
    pred->add_option("--terms", pred_terms);
    pred->add_option("--num-medial", pred_medial, "number of sampled medial graphs");
    pred->add_option("--top-m", pred_top_m, "keep the m most probable new dyads");
    pred->add_option("--threshold", pred_threshold, "keep dyads with probability >= theta");
    pred->add_option("--burn-in", pred_burn_in);
    pred->add_option("--thinning", pred_thinning);
    pred->add_option("--chains", pred_chains);
    pred->add_option("--out-map", pred_map_out);
    pred->add_option("--out-graph", pred_graph_out);
    pred->add_option("--seed", pred_seed);
    pred->add_option("--threads", pred_threads);

    // select-seeds
    std::string sel_path, sel_method = "static_greedy", sel_out;
    int sel_k = 100, sel_num_sims = 100, sel_max_steps = 100, sel_r = 200, sel_l = 1,
        sel_iters = 10, sel_threads = 0;
    double sel_p = 0.15;
    unsigned long long sel_seed = 1;
    auto* sel = app.add_subcommand("select-seeds", "select an influence-maximizing seed set");
    sel->add_option("graph", sel_path)->required();
    sel->add_option("--method", sel_method,
                    "betweenness|pagerank|imrank|static_greedy|greedy|random");
    sel->add_option("--k", sel_k);
    sel->add_option("--p", sel_p, "diffusion probability");
    sel->add_option("--num-sims", sel_num_sims);
    sel->add_option("--max-steps", sel_max_steps);
    sel->add_option("--R", sel_r, "static greedy snapshot count");
    sel->add_option("--L", sel_l, "imrank hop limit");
    sel->add_option("--iters", sel_iters, "imrank iterations");
    sel->add_option("--seed", sel_seed);
    sel->add_option("--out", sel_out, "seed list output (default: stdout)");
    sel->add_option("--threads", sel_threads);

    // simulate
    std::string sim_path, sim_seeds_file, sim_runs_out;
    int sim_num_sims = 100, sim_max_steps = 100, sim_threads = 0;
    double sim_p = 0.15;
    unsigned long long sim_seed = 1;
    auto* sim = app.add_subcommand("simulate", "estimate independent-cascade spread");
    sim->add_option("graph", sim_path)->required();
    sim->add_option("--seeds-file", sim_seeds_file, "newline-delimited node labels")
        ->required();
    sim->add_option("--p", sim_p);
    sim->add_option("--num-sims", sim_num_sims);
    sim->add_option("--max-steps", sim_max_steps);
    sim->add_option("--seed", sim_seed);
    sim->add_option("--runs-out", sim_runs_out, "per-run infected sets (debug)");
    sim->add_option("--threads", sim_threads);

    // evaluate
    EvalSettings es;
    std::string eval_config;
    std::vector<std::string> eval_overrides;
    auto* eval = app.add_subcommand("evaluate", "run the full experiment grid");
    eval->add_option("--config", eval_config, "key=value config file");
    eval->add_option("--set", eval_overrides, "config override key=value (repeatable)");
    eval->add_option("--dataset", es.dataset_path, "SNAP edge-list file");
    eval->add_option("--out-dir", es.out_dir);
    eval->add_option("--seed", es.master_seed);
    eval->add_option("--threads", es.threads);

    // report
    std::string rep_in, rep_best_out = "best.csv";
    auto* rep = app.add_subcommand("report", "recompute best-results table from a report CSV");
    rep->add_option("report", rep_in, "report.csv produced by evaluate")->required();
    rep->add_option("--best-out", rep_best_out);

    CLI11_PARSE(app, argc, argv);

    try {
        if (stats->parsed()) return cmd_stats(stats_path);

        if (fit->parsed()) {
            auto g = lpim::load_snap_edge_list_file(fit_path);
            auto model = lpim::ergm::fit_mple(g, lpim::ergm::ErgmTermSet::parse(fit_terms),
                                              {}, lpim::rng::Stream(fit_seed));
            if (fit_out.empty()) {
                lpim::ergm::write_model(model, std::cout);
            } else {
                std::ofstream out(fit_out);
                lpim::ergm::write_model(model, out);
            }
            if (model.fit.separation)
                std::cerr << "warning: separation detected; coefficients clamped\n";
            return 0;
        }

        if (pred->parsed()) {
            set_threads(pred_threads);
            auto g = lpim::load_snap_edge_list_file(pred_path);
            lpim::LinkPredConfig cfg;
            cfg.num_medial_graphs = pred_medial;
            if (pred_threshold >= 0.0 && pred_top_m >= 0)
                throw UsageError("predict: --top-m and --threshold are exclusive");
            cfg.trim = pred_threshold >= 0.0 ? lpim::TrimMode::by_threshold(pred_threshold)
                                             : lpim::TrimMode::top_m(std::max(pred_top_m, 0LL));
            lpim::ergm::McmcConfig mcmc;
            mcmc.burn_in = pred_burn_in;
            mcmc.thinning = pred_thinning;
            mcmc.chains = pred_chains;
            auto result = lpim::predict_links(g, lpim::ergm::ErgmTermSet::parse(pred_terms),
                                              cfg, {}, mcmc, lpim::rng::Stream(pred_seed));
            {
                std::ofstream out(pred_map_out);
                lpim::write_probability_map(result.probabilities, g, out);
            }
            {
                std::ofstream out(pred_graph_out);
                lpim::write_snap_edge_list(result.added, out, "completed graph");
            }
            return 0;
        }

        if (sel->parsed()) {
            set_threads(sel_threads);
            auto g = lpim::load_snap_edge_list_file(sel_path);
            lpim::DiffusionConfig dc{sel_p, sel_num_sims, sel_max_steps};
            lpim::eval::MethodParams mp;
            mp.static_greedy_r = sel_r;
            mp.imrank_l = sel_l;
            mp.imrank_iters = sel_iters;
            auto seeds = lpim::eval::select_seeds(g, sel_method, sel_k, dc, mp,
                                                  lpim::rng::Stream(sel_seed));
            std::ostringstream params;
            params << "p=" << sel_p << " seed=" << sel_seed;
            if (sel_out.empty()) {
                lpim::write_seed_set(seeds, g, std::cout, params.str());
            } else {
                std::ofstream out(sel_out);
                lpim::write_seed_set(seeds, g, out, params.str());
            }
            return 0;
        }

        if (sim->parsed()) {
            set_threads(sim_threads);
            auto g = lpim::load_snap_edge_list_file(sim_path);
            auto seeds = read_seed_file(sim_seeds_file, g);
            lpim::DiffusionConfig dc{sim_p, sim_num_sims, sim_max_steps};
            auto est = lpim::estimate_spread(g, seeds, dc, lpim::rng::Stream(sim_seed));
            std::cout << "mean_spread " << est.mean << "\n";
            if (!sim_runs_out.empty()) {
                std::ofstream out(sim_runs_out);
                for (std::size_t r = 0; r < est.per_run_infected.size(); ++r) {
                    out << "# run " << r << "\n";
                    for (int v : est.per_run_infected[r]) out << g.label(v) << "\n";
                }
            }
            return 0;
        }

        if (eval->parsed()) {
            if (!eval_config.empty()) es.load_file(eval_config);
            // CLI11 already bound --dataset/--out-dir/--seed/--threads; --set
            // handles the rest.
            for (const auto& kv : eval_overrides) {
                auto eq = kv.find('=');
                if (eq == std::string::npos)
                    throw UsageError("--set expects key=value, got: " + kv);
                es.apply(kv.substr(0, eq), kv.substr(eq + 1));
            }
            return cmd_evaluate(es);
        }

        if (rep->parsed()) {
            std::ifstream in(rep_in);
            if (!in) throw UsageError("cannot open report: " + rep_in);
            std::vector<lpim::eval::ReportRow> rows;
            std::string line;
            std::getline(in, line);  // header
            while (std::getline(in, line)) {
                if (line.empty()) continue;
                std::vector<std::string> f;
                std::istringstream ls(line);
                std::string item;
                while (std::getline(ls, item, ',')) f.push_back(item);
                if (f.size() < 10)
                    throw lpim::GraphError("malformed report row: " + line);
                lpim::eval::ReportRow row;
                row.dataset = f[0];
                row.method = f[1];
                row.diff_p = std::stod(f[2]);
                row.similarity = std::stod(f[3]);
                row.added = std::stod(f[4]);
                row.random = std::stod(f[5]);
                row.total = std::stod(f[6]);
                row.metrics.m1 = std::stod(f[7]);
                if (!f[8].empty()) row.metrics.m2 = std::stod(f[8]);
                row.metrics.m3 = std::stod(f[9]);
                rows.push_back(std::move(row));
            }
            std::ofstream out(rep_best_out);
            lpim::eval::write_report_csv(lpim::eval::best_results(rows), out, true);
            return 0;
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const lpim::GraphError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
    return 1;
}
