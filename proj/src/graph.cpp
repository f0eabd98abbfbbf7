#include "lpim/graph.hpp"

#include <algorithm>
#include <cmath>
#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace lpim {

EdgeSet::EdgeSet(std::vector<std::pair<int, int>> dyads) : dyads_(std::move(dyads)) {
    for (auto& [i, j] : dyads_) {
        if (i == j) throw GraphError("EdgeSet: self-loop dyad");
        if (j < i) std::swap(i, j);
    }
    canonical_ = false;
    canonicalize();
}

void EdgeSet::add(int i, int j) {
    if (i == j) throw GraphError("EdgeSet: self-loop dyad");
    if (j < i) std::swap(i, j);
    dyads_.emplace_back(i, j);
    canonical_ = false;
}

void EdgeSet::canonicalize() {
    if (canonical_) return;
    std::sort(dyads_.begin(), dyads_.end());
    dyads_.erase(std::unique(dyads_.begin(), dyads_.end()), dyads_.end());
    canonical_ = true;
}

bool EdgeSet::contains(int i, int j) const {
    if (j < i) std::swap(i, j);
    if (!canonical_) throw GraphError("EdgeSet: contains() on non-canonical set");
    return std::binary_search(dyads_.begin(), dyads_.end(), std::make_pair(i, j));
}

Graph::Graph(int node_count, const std::vector<std::pair<int, int>>& edges)
    : Graph(node_count, edges, {}) {}

Graph::Graph(int node_count, const std::vector<std::pair<int, int>>& edges,
             std::vector<std::int64_t> labels)
    : adj_(node_count), labels_(std::move(labels)) {
    if (!labels_.empty() && static_cast<int>(labels_.size()) != node_count)
        throw GraphError("Graph: label vector size mismatch");
    for (auto [i, j] : edges) {
        if (i < 0 || j < 0 || i >= node_count || j >= node_count)
            throw GraphError("Graph: node index out of range");
        if (i == j) throw GraphError("Graph: self-loop");
        adj_[i].push_back(j);
        adj_[j].push_back(i);
    }
    for (auto& nbrs : adj_) {
        std::sort(nbrs.begin(), nbrs.end());
        nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
        edge_count_ += static_cast<std::int64_t>(nbrs.size());
    }
    edge_count_ /= 2;
}

bool Graph::has_edge(int i, int j) const {
    const auto& a = adj_[i];
    return std::binary_search(a.begin(), a.end(), j);
}

std::int64_t Graph::label(int v) const {
    return labels_.empty() ? v : labels_[v];
}

EdgeSet Graph::edges() const {
    EdgeSet es;
    for (int i = 0; i < node_count(); ++i)
        for (int j : adj_[i])
            if (i < j) es.add(i, j);
    es.canonicalize();
    return es;
}

std::vector<std::pair<int, int>> Graph::edge_list() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(static_cast<std::size_t>(edge_count_));
    for (int i = 0; i < node_count(); ++i)
        for (int j : adj_[i])
            if (i < j) out.emplace_back(i, j);
    return out;
}

Graph load_snap_edge_list(std::istream& in, LoadReport* report) {
    std::unordered_map<std::int64_t, int> index_of;
    std::vector<std::int64_t> labels;
    std::vector<std::pair<int, int>> edges;
    LoadReport rep;

    auto intern = [&](std::int64_t label) {
        auto [it, inserted] = index_of.emplace(label, static_cast<int>(labels.size()));
        if (inserted) labels.push_back(label);
        return it->second;
    };

    std::string line;
    std::int64_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos) continue;
        if (line[start] == '#') continue;

        std::int64_t a = 0, b = 0;
        std::istringstream ls(line);
        if (!(ls >> a >> b)) {
            throw GraphError("parse error at line " + std::to_string(line_no) +
                             ": expected two integer node labels");
        }
        std::string trailing;
        if (ls >> trailing) {
            throw GraphError("parse error at line " + std::to_string(line_no) +
                             ": unexpected trailing token '" + trailing + "'");
        }
        if (a == b) {
            ++rep.self_loops_dropped;
            intern(a);
            continue;
        }
        int ia = intern(a);
        int ib = intern(b);
        edges.emplace_back(ia, ib);
    }

    // Count duplicates (both directions of a pair, or repeated lines).
    {
        auto canon = edges;
        for (auto& [i, j] : canon)
            if (j < i) std::swap(i, j);
        std::sort(canon.begin(), canon.end());
        auto unique_end = std::unique(canon.begin(), canon.end());
        rep.duplicates_dropped =
            static_cast<std::int64_t>(canon.end() - unique_end);
    }

    if (report) *report = rep;
    const int n = static_cast<int>(labels.size());
    return Graph(n, edges, std::move(labels));
}

Graph load_snap_edge_list_file(const std::string& path, LoadReport* report) {
    std::ifstream in(path);
    if (!in) throw GraphError("cannot open file: " + path);
    return load_snap_edge_list(in, report);
}

void write_snap_edge_list(const Graph& g, std::ostream& out, const std::string& comment) {
    if (!comment.empty()) out << "# " << comment << "\n";
    out << "# Nodes: " << g.node_count() << " Edges: " << g.edge_count() << "\n";
    for (int i = 0; i < g.node_count(); ++i)
        for (int j : g.neighbors(i))
            if (i < j) out << g.label(i) << "\t" << g.label(j) << "\n";
}

void write_edge_set(const EdgeSet& es, const Graph& label_source, std::ostream& out,
                    const std::string& comment) {
    if (!comment.empty()) out << "# " << comment << "\n";
    for (auto [i, j] : es.dyads())
        out << label_source.label(i) << "\t" << label_source.label(j) << "\n";
}

namespace {

std::int64_t sorted_intersection_size(const std::vector<int>& a, const std::vector<int>& b) {
    std::int64_t count = 0;
    auto ia = a.begin(), ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (*ia < *ib) ++ia;
        else if (*ib < *ia) ++ib;
        else { ++count; ++ia; ++ib; }
    }
    return count;
}

} // namespace

GraphStats graph_stats(const Graph& g) {
    GraphStats s;
    s.nodes = g.node_count();
    s.edges = g.edge_count();

    double clustering_sum = 0.0;
    std::int64_t closed_triples2 = 0;  // 2 * (links among neighbors), per node
    for (int v = 0; v < g.node_count(); ++v) {
        int d = g.degree(v);
        ++s.degree_histogram[d];
        if (d == 0) ++s.isolates;
        if (d < 2) continue;
        std::int64_t links = 0;
        for (int u : g.neighbors(v))
            links += sorted_intersection_size(g.neighbors(v), g.neighbors(u));
        links /= 2;  // each neighbor-neighbor edge seen from both ends
        closed_triples2 += links;
        clustering_sum += static_cast<double>(links) /
                          (static_cast<double>(d) * (d - 1) / 2.0);
    }
    s.triangles = closed_triples2 / 3;  // each triangle counted at 3 vertices
    s.avg_clustering = g.node_count() > 0 ? clustering_sum / g.node_count() : 0.0;

    // Largest connected component by BFS.
    std::vector<int> comp(g.node_count(), -1);
    std::vector<int> queue;
    for (int start = 0, c = 0; start < g.node_count(); ++start) {
        if (comp[start] >= 0) continue;
        queue.clear();
        queue.push_back(start);
        comp[start] = c;
        int nodes = 1;
        std::int64_t degree_sum = g.degree(start);
        for (std::size_t h = 0; h < queue.size(); ++h) {
            for (int u : g.neighbors(queue[h])) {
                if (comp[u] < 0) {
                    comp[u] = c;
                    queue.push_back(u);
                    ++nodes;
                    degree_sum += g.degree(u);
                }
            }
        }
        if (nodes > s.largest_wcc_nodes) {
            s.largest_wcc_nodes = nodes;
            s.largest_wcc_edges = degree_sum / 2;
        }
        ++c;
    }
    return s;
}

std::pair<Graph, EdgeSet> remove_random_edges(const Graph& g, double similarity,
                                              rng::Stream rng) {
    if (!(similarity > 0.0 && similarity <= 1.0))
        throw GraphError("remove_random_edges: similarity must be in (0, 1]");
    auto edges = g.edge_list();
    // tiny nudge so exact products like 0.1 * 10 do not floor down
    auto m = static_cast<std::int64_t>(
        std::floor((1.0 - similarity) * static_cast<double>(g.edge_count()) + 1e-9));

    // Partial Fisher-Yates: first m positions become the removed sample.
    for (std::int64_t i = 0; i < m; ++i) {
        auto j = i + static_cast<std::int64_t>(
                         rng.next_below(static_cast<std::uint64_t>(edges.size() - i)));
        std::swap(edges[i], edges[j]);
    }
    EdgeSet removed(std::vector<std::pair<int, int>>(edges.begin(), edges.begin() + m));
    std::vector<std::pair<int, int>> kept(edges.begin() + m, edges.end());
    return {Graph(g.node_count(), kept, g.labels()), std::move(removed)};
}

Graph add_edges(const Graph& g, const EdgeSet& added) {
    auto edges = g.edge_list();
    for (auto [i, j] : added.dyads()) {
        if (i < 0 || j < 0 || i >= g.node_count() || j >= g.node_count())
            throw GraphError("add_edges: dyad out of range");
        edges.emplace_back(i, j);
    }
    return Graph(g.node_count(), edges, g.labels());
}

EdgeSet sample_random_nonedges(const Graph& g, std::int64_t m, rng::Stream rng) {
    const auto n = static_cast<std::int64_t>(g.node_count());
    const std::int64_t total_dyads = n * (n - 1) / 2;
    const std::int64_t capacity = total_dyads - g.edge_count();
    if (m > capacity)
        throw GraphError("sample_random_nonedges: requested " + std::to_string(m) +
                         " non-edges but only " + std::to_string(capacity) + " exist");
    if (m == 0) return EdgeSet{};

    std::vector<std::pair<int, int>> picked;
    picked.reserve(static_cast<std::size_t>(m));

    if (m * 2 >= capacity) {
        // Dense regime: enumerate and sample without replacement.
        std::vector<std::pair<int, int>> nonedges;
        nonedges.reserve(static_cast<std::size_t>(capacity));
        for (int i = 0; i < g.node_count(); ++i)
            for (int j = i + 1; j < g.node_count(); ++j)
                if (!g.has_edge(i, j)) nonedges.emplace_back(i, j);
        for (std::int64_t i = 0; i < m; ++i) {
            auto j = i + static_cast<std::int64_t>(
                             rng.next_below(static_cast<std::uint64_t>(nonedges.size() - i)));
            std::swap(nonedges[i], nonedges[j]);
            picked.push_back(nonedges[i]);
        }
    } else {
        // Sparse regime: rejection sampling over dyads.
        std::vector<std::pair<int, int>> seen;
        while (static_cast<std::int64_t>(picked.size()) < m) {
            int i = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
            int j = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
            if (i == j) continue;
            if (j < i) std::swap(i, j);
            if (g.has_edge(i, j)) continue;
            auto dyad = std::make_pair(i, j);
            if (std::find(picked.begin(), picked.end(), dyad) != picked.end()) continue;
            picked.push_back(dyad);
        }
    }
    return EdgeSet(std::move(picked));
}

Graph erdos_renyi(int n, double p, rng::Stream rng) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.bernoulli(p)) edges.emplace_back(i, j);
    return Graph(n, edges);
}

Graph watts_strogatz(int n, int k, double beta, rng::Stream rng) {
    if (k % 2 != 0 || k >= n) throw GraphError("watts_strogatz: need even k < n");
    // Ring lattice, then rewire each edge's far endpoint with probability beta.
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int d = 1; d <= k / 2; ++d)
            edges.emplace_back(i, (i + d) % n);

    auto present = [&](int a, int b) {
        if (b < a) std::swap(a, b);
        return std::find(edges.begin(), edges.end(), std::make_pair(a, b)) != edges.end() ||
               std::find(edges.begin(), edges.end(), std::make_pair(b, a)) != edges.end();
    };
    for (auto& [u, v] : edges) {
        if (!rng.bernoulli(beta)) continue;
        for (int attempt = 0; attempt < 64; ++attempt) {
            int w = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
            if (w == u || w == v) continue;
            if (present(u, w)) continue;
            v = w;
            break;
        }
    }
    return Graph(n, edges);
}

} // namespace lpim
