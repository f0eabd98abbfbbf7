#ifndef LPIM_GRAPH_HPP
#define LPIM_GRAPH_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lpim/rng.hpp"

namespace lpim {

struct GraphError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Canonical dyad list: i < j, sorted, deduplicated.
class EdgeSet {
public:
    EdgeSet() = default;
    explicit EdgeSet(std::vector<std::pair<int, int>> dyads);

    void add(int i, int j);
    void canonicalize();  // sort + dedup; add() defers this

    bool contains(int i, int j) const;
    std::size_t size() const { return dyads_.size(); }
    bool empty() const { return dyads_.empty(); }

    const std::vector<std::pair<int, int>>& dyads() const { return dyads_; }

private:
    std::vector<std::pair<int, int>> dyads_;
    bool canonical_ = true;
};

// Immutable undirected simple graph with dense node indices.
// Original file labels are kept for reports; internal work is index-based.
class Graph {
public:
    Graph() = default;
    // Builds from dyads over [0, node_count); self-loops rejected, duplicates collapsed.
    Graph(int node_count, const std::vector<std::pair<int, int>>& edges);
    Graph(int node_count, const std::vector<std::pair<int, int>>& edges,
          std::vector<std::int64_t> labels);

    int node_count() const { return static_cast<int>(adj_.size()); }
    std::int64_t edge_count() const { return edge_count_; }

    const std::vector<int>& neighbors(int v) const { return adj_[v]; }
    int degree(int v) const { return static_cast<int>(adj_[v].size()); }
    bool has_edge(int i, int j) const;

    // Original label of a dense index (identity when built without labels).
    std::int64_t label(int v) const;
    const std::vector<std::int64_t>& labels() const { return labels_; }

    EdgeSet edges() const;
    std::vector<std::pair<int, int>> edge_list() const;

private:
    std::vector<std::vector<int>> adj_;
    std::vector<std::int64_t> labels_;  // empty => identity
    std::int64_t edge_count_ = 0;
};

struct GraphStats {
    int nodes = 0;
    std::int64_t edges = 0;
    std::int64_t triangles = 0;
    int isolates = 0;
    double avg_clustering = 0.0;
    int largest_wcc_nodes = 0;
    std::int64_t largest_wcc_edges = 0;
    std::map<int, int> degree_histogram;
};

struct LoadReport {
    std::int64_t self_loops_dropped = 0;
    std::int64_t duplicates_dropped = 0;
};

// SNAP edge-list text: '#' comment lines, data lines "<int><ws><int>".
// Labels are remapped to dense indices by first appearance.
Graph load_snap_edge_list(std::istream& in, LoadReport* report = nullptr);
Graph load_snap_edge_list_file(const std::string& path, LoadReport* report = nullptr);
void write_snap_edge_list(const Graph& g, std::ostream& out,
                          const std::string& comment = "");
void write_edge_set(const EdgeSet& es, const Graph& label_source, std::ostream& out,
                    const std::string& comment = "");

GraphStats graph_stats(const Graph& g);

// Removes exactly floor((1 - f) * |E|) uniformly chosen edges.
std::pair<Graph, EdgeSet> remove_random_edges(const Graph& g, double similarity,
                                              rng::Stream rng);

// Idempotent union; self-loop dyads are an error.
Graph add_edges(const Graph& g, const EdgeSet& added);

// m distinct dyads uniform over the non-edges of g.
EdgeSet sample_random_nonedges(const Graph& g, std::int64_t m, rng::Stream rng);

// Generators used by tests and synthetic experiments.
Graph erdos_renyi(int n, double p, rng::Stream rng);
Graph watts_strogatz(int n, int k, double beta, rng::Stream rng);

} // namespace lpim

#endif
