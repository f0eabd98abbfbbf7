#include "lpim/diffusion.hpp"

#include <algorithm>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace lpim {

namespace {

void check_seeds(const Graph& g, const std::vector<int>& seeds) {
    if (seeds.empty()) throw GraphError("simulate_ic: empty seed set");
    for (int s : seeds)
        if (s < 0 || s >= g.node_count())
            throw GraphError("simulate_ic: invalid seed index " + std::to_string(s));
}

} // namespace

CascadeResult simulate_ic(const Graph& g, const std::vector<int>& seeds, double p,
                          int max_steps, rng::Stream rng) {
    check_seeds(g, seeds);
    const std::uint64_t key = rng.key();

    std::vector<char> active(g.node_count(), 0);
    std::vector<int> frontier, next;
    CascadeResult result;
    for (int s : seeds) {
        if (!active[s]) {
            active[s] = 1;
            frontier.push_back(s);
        }
    }
    result.newly_per_step.push_back(static_cast<int>(frontier.size()));
    result.infected = frontier;

    int step = 0;
    while (!frontier.empty() && step < max_steps) {
        next.clear();
        for (int u : frontier) {
            for (int v : g.neighbors(u)) {
                if (active[v]) continue;
                if (rng::edge_coin(key, u, v, p)) {
                    active[v] = 1;
                    next.push_back(v);
                }
            }
        }
        if (next.empty()) break;
        ++step;
        result.newly_per_step.push_back(static_cast<int>(next.size()));
        result.infected.insert(result.infected.end(), next.begin(), next.end());
        frontier.swap(next);
    }
    result.steps_taken = step;
    return result;
}

SpreadEstimate estimate_spread(const Graph& g, const std::vector<int>& seeds,
                               const DiffusionConfig& cfg, rng::Stream rng) {
    check_seeds(g, seeds);
    SpreadEstimate est;
    est.per_run_infected.resize(cfg.num_sims);

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int r = 0; r < cfg.num_sims; ++r) {
        auto run = simulate_ic(g, seeds, cfg.p, cfg.max_steps,
                               rng.substream(static_cast<std::uint64_t>(r)));
        est.per_run_infected[r] = std::move(run.infected);
        std::sort(est.per_run_infected[r].begin(), est.per_run_infected[r].end());
    }

    double total = 0.0;
    for (const auto& run : est.per_run_infected) total += static_cast<double>(run.size());
    est.mean = total / cfg.num_sims;
    return est;
}

Graph live_edge_snapshot(const Graph& g, double p, rng::Stream rng) {
    const std::uint64_t key = rng.key();
    std::vector<std::pair<int, int>> kept;
    for (auto [i, j] : g.edge_list())
        if (rng::edge_coin(key, i, j, p)) kept.emplace_back(i, j);
    return Graph(g.node_count(), kept, g.labels());
}

} // namespace lpim
