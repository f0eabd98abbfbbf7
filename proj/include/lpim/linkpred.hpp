#ifndef LPIM_LINKPRED_HPP
#define LPIM_LINKPRED_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <utility>
#include <vector>

#include "lpim/ergm.hpp"
#include "lpim/graph.hpp"

namespace lpim {

// Sparse symmetric dyad -> probability map; absent dyads are exactly 0.
class EdgeProbabilityMap {
public:
    EdgeProbabilityMap() = default;
    explicit EdgeProbabilityMap(int node_count) : node_count_(node_count) {}

    int node_count() const { return node_count_; }
    double value(int i, int j) const;
    void set(int i, int j, double v);
    std::size_t size() const { return values_.size(); }

    const std::map<std::pair<int, int>, double>& entries() const { return values_; }

private:
    int node_count_ = 0;
    std::map<std::pair<int, int>, double> values_;
};

struct TrimMode {
    enum class Kind { Threshold, TopM };
    Kind kind = Kind::TopM;
    double threshold = 0.5;
    std::int64_t m = 0;

    static TrimMode by_threshold(double theta) { return {Kind::Threshold, theta, 0}; }
    static TrimMode top_m(std::int64_t m) { return {Kind::TopM, 0.0, m}; }
};

struct LinkPredConfig {
    int num_medial_graphs = 1000;
    TrimMode trim = TrimMode::top_m(0);
};

struct LinkPredResult {
    Graph added;
    EdgeProbabilityMap probabilities;
};

// value(i,j) = samples containing (i,j) / n_samples.
EdgeProbabilityMap average_samples(const std::vector<Graph>& samples);
EdgeProbabilityMap average_counts(
    const std::vector<std::pair<std::pair<int, int>, int>>& counts, int n_samples,
    int node_count);

// Every observed edge gets probability exactly 1.
EdgeProbabilityMap force_observed(EdgeProbabilityMap map, const Graph& observed);

// Kept dyads, excluding the observed graph's edges. Threshold keeps
// value >= theta; top_m keeps the m highest (ties by lexicographic dyad).
EdgeSet trim(const EdgeProbabilityMap& map, const TrimMode& mode, const Graph& observed);

// fit -> sample medial graphs -> average -> force observed -> trim -> union.
LinkPredResult predict_links(const Graph& observed, const ergm::ErgmTermSet& terms,
                             const LinkPredConfig& cfg, const ergm::MpleConfig& mple,
                             const ergm::McmcConfig& mcmc, rng::Stream rng);

void write_probability_map(const EdgeProbabilityMap& map, const Graph& label_source,
                           std::ostream& out);

} // namespace lpim

#endif
