#ifndef LPIM_DIFFUSION_HPP
#define LPIM_DIFFUSION_HPP

#include <cstdint>
#include <vector>

#include "lpim/graph.hpp"
#include "lpim/rng.hpp"

namespace lpim {

struct DiffusionConfig {
    double p = 0.15;     // uniform edge activation probability
    int num_sims = 100;  // independent cascades per estimate
    int max_steps = 100; // safety cap; IC terminates naturally earlier
};

struct CascadeResult {
    std::vector<int> infected;         // activation order, seeds first
    int steps_taken = 0;
    std::vector<int> newly_per_step;   // newly_per_step[0] = |seeds|; prefix
                                       // sums give the cumulative set per step
};

struct SpreadEstimate {
    double mean = 0.0;
    std::vector<std::vector<int>> per_run_infected;  // sorted, length num_sims
};

// Synchronous-round independent cascade. Each undirected edge carries one
// coin hashed from (stream key, edge), so a cascade and the live-edge
// snapshot drawn from the same key agree on reachability.
CascadeResult simulate_ic(const Graph& g, const std::vector<int>& seeds, double p,
                          int max_steps, rng::Stream rng);

// num_sims cascades with run r keyed by rng.substream(r).
SpreadEstimate estimate_spread(const Graph& g, const std::vector<int>& seeds,
                               const DiffusionConfig& cfg, rng::Stream rng);

// Keeps each undirected edge with probability p; node set unchanged.
Graph live_edge_snapshot(const Graph& g, double p, rng::Stream rng);

} // namespace lpim

#endif
