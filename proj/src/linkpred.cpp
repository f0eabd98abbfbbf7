#include "lpim/linkpred.hpp"

#include <algorithm>
#include <ostream>

namespace lpim {

double EdgeProbabilityMap::value(int i, int j) const {
    if (j < i) std::swap(i, j);
    auto it = values_.find({i, j});
    return it == values_.end() ? 0.0 : it->second;
}

void EdgeProbabilityMap::set(int i, int j, double v) {
    if (i == j) throw GraphError("EdgeProbabilityMap: self-loop dyad");
    if (v < 0.0 || v > 1.0) throw GraphError("EdgeProbabilityMap: value outside [0,1]");
    if (j < i) std::swap(i, j);
    values_[{i, j}] = v;
}

EdgeProbabilityMap average_samples(const std::vector<Graph>& samples) {
    if (samples.empty()) throw GraphError("average_samples: no samples");
    const int n = samples.front().node_count();
    std::map<std::pair<int, int>, int> counts;
    for (const auto& g : samples) {
        if (g.node_count() != n)
            throw GraphError("average_samples: inconsistent node counts");
        for (auto [i, j] : g.edge_list()) ++counts[{i, j}];
    }
    EdgeProbabilityMap map(n);
    for (const auto& [dyad, c] : counts)
        map.set(dyad.first, dyad.second,
                static_cast<double>(c) / static_cast<double>(samples.size()));
    return map;
}

EdgeProbabilityMap average_counts(
    const std::vector<std::pair<std::pair<int, int>, int>>& counts, int n_samples,
    int node_count) {
    if (n_samples < 1) throw GraphError("average_counts: n_samples must be >= 1");
    EdgeProbabilityMap map(node_count);
    for (const auto& [dyad, c] : counts)
        map.set(dyad.first, dyad.second,
                static_cast<double>(c) / static_cast<double>(n_samples));
    return map;
}

EdgeProbabilityMap force_observed(EdgeProbabilityMap map, const Graph& observed) {
    if (map.node_count() != observed.node_count())
        throw GraphError("force_observed: node count mismatch");
    for (auto [i, j] : observed.edge_list()) map.set(i, j, 1.0);
    return map;
}

EdgeSet trim(const EdgeProbabilityMap& map, const TrimMode& mode, const Graph& observed) {
    EdgeSet kept;
    if (mode.kind == TrimMode::Kind::Threshold) {
        for (const auto& [dyad, v] : map.entries())
            if (v >= mode.threshold && !observed.has_edge(dyad.first, dyad.second))
                kept.add(dyad.first, dyad.second);
        kept.canonicalize();
        return kept;
    }

    // top_m: candidates sorted by probability descending, dyad ascending.
    std::vector<std::pair<std::pair<int, int>, double>> candidates;
    for (const auto& [dyad, v] : map.entries())
        if (!observed.has_edge(dyad.first, dyad.second)) candidates.push_back({dyad, v});
    std::sort(candidates.begin(), candidates.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    auto take = std::min<std::int64_t>(mode.m, static_cast<std::int64_t>(candidates.size()));
    for (std::int64_t i = 0; i < take; ++i)
        kept.add(candidates[i].first.first, candidates[i].first.second);
    kept.canonicalize();
    return kept;
}

LinkPredResult predict_links(const Graph& observed, const ergm::ErgmTermSet& terms,
                             const LinkPredConfig& cfg, const ergm::MpleConfig& mple,
                             const ergm::McmcConfig& mcmc, rng::Stream rng) {
    if (cfg.num_medial_graphs < 1)
        throw GraphError("predict_links: num_medial_graphs must be >= 1");
    auto model = ergm::fit_mple(observed, terms, mple, rng.substream(0x66697400u));
    auto counts = ergm::sample_edge_counts(model, observed, cfg.num_medial_graphs, mcmc,
                                           rng.substream(0x73616d00u));
    auto map = force_observed(
        average_counts(counts, cfg.num_medial_graphs, observed.node_count()), observed);
    auto kept = trim(map, cfg.trim, observed);
    LinkPredResult out{add_edges(observed, kept), std::move(map)};
    return out;
}

void write_probability_map(const EdgeProbabilityMap& map, const Graph& label_source,
                           std::ostream& out) {
    for (const auto& [dyad, v] : map.entries())
        out << label_source.label(dyad.first) << "\t" << label_source.label(dyad.second)
            << "\t" << v << "\n";
}

} // namespace lpim
