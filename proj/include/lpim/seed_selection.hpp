#ifndef LPIM_SEED_SELECTION_HPP
#define LPIM_SEED_SELECTION_HPP

#include <functional>
#include <string>
#include <vector>

#include "lpim/diffusion.hpp"
#include "lpim/graph.hpp"
#include "lpim/rng.hpp"

namespace lpim {

struct SeedSet {
    std::vector<int> nodes;  // selection order
    std::string method;
    int k = 0;
};

struct CentralityScores {
    std::vector<double> scores;
};

// sigma evaluator: round index, candidate seed set (selection order) -> spread.
// Within one round every candidate must see the same randomness; greedy_im
// keys the estimator's substream by the round index for that.
using SpreadEval = std::function<double(int round, const std::vector<int>& seeds)>;

// Greedy argmax of marginal gain under a spread evaluator. lazy=true uses a
// CELF queue; both paths return identical picks for deterministic evaluators
// with non-increasing marginal gains. Ties break to the lowest node index.
std::vector<int> greedy_select(int node_count, int k, const SpreadEval& eval, bool lazy);

SeedSet greedy_im(const Graph& g, int k, const DiffusionConfig& cfg, rng::Stream rng,
                  bool lazy = true);

// Greedy coverage over R fixed live-edge snapshots.
SeedSet static_greedy(const Graph& g, int k, double p, int R, rng::Stream rng);

// Iterated rank-and-transfer scoring: ranking starts at degree-descending;
// each sweep resets scores to 1 and moves p-fractions of a node's residual
// score to its better-ranked neighbors (within L hops), best-ranked first,
// then re-ranks by score. Stops when the ranking is stable or after iters.
SeedSet imrank(const Graph& g, int k, double p, int L, int iters);

// Exact unweighted betweenness: unordered pairs, endpoints excluded,
// unnormalized.
CentralityScores brandes_betweenness(const Graph& g);

// Undirected power iteration; isolated nodes redistribute uniformly.
CentralityScores pagerank(const Graph& g, double damping = 0.85, double tol = 1e-8,
                          int max_iters = 100);

SeedSet select_top_k(const CentralityScores& scores, int k, const std::string& method);

SeedSet random_seeds(const Graph& g, int k, rng::Stream rng);

void write_seed_set(const SeedSet& s, const Graph& label_source, std::ostream& out,
                    const std::string& params = "");

} // namespace lpim

#endif
