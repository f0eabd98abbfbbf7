#include "lpim/seed_selection.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <queue>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace lpim {

namespace {

void check_k(int k, int n, const char* who) {
    if (k < 1 || k > n)
        throw GraphError(std::string(who) + ": k must be in [1, node_count]");
}

} // namespace

std::vector<int> greedy_select(int node_count, int k, const SpreadEval& eval, bool lazy) {
    check_k(k, node_count, "greedy_select");
    std::vector<int> selected;
    std::vector<char> in_set(node_count, 0);

    auto sigma_with = [&](int round, int v) {
        auto with_v = selected;
        with_v.push_back(v);
        return eval(round, with_v);
    };

    if (!lazy) {
        for (int round = 0; round < k; ++round) {
            double base = selected.empty() ? 0.0 : eval(round, selected);
            std::vector<double> value(node_count, -1.0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
            for (int v = 0; v < node_count; ++v) {
                if (!in_set[v]) value[v] = sigma_with(round, v) - base;
            }
            int best = -1;
            for (int v = 0; v < node_count; ++v) {
                if (in_set[v]) continue;
                if (best < 0 || value[v] > value[best]) best = v;
            }
            selected.push_back(best);
            in_set[best] = 1;
        }
        return selected;
    }

    // CELF: (gain, -node) max-heap with the round each gain was computed in.
    struct Entry {
        double gain;
        int node;
        int round;
        bool operator<(const Entry& o) const {
            if (gain != o.gain) return gain < o.gain;
            return node > o.node;  // lower index wins ties
        }
    };
    std::priority_queue<Entry> heap;
    {
        std::vector<double> value(node_count);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
        for (int v = 0; v < node_count; ++v) value[v] = sigma_with(0, v);
        for (int v = 0; v < node_count; ++v) heap.push({value[v], v, 0});
    }
    double base = 0.0;
    int base_round = -1;
    for (int round = 0; round < k; ++round) {
        while (true) {
            Entry top = heap.top();
            if (top.round == round) {
                heap.pop();
                selected.push_back(top.node);
                in_set[top.node] = 1;
                break;
            }
            heap.pop();
            if (base_round != round) {
                base = selected.empty() ? 0.0 : eval(round, selected);
                base_round = round;
            }
            top.gain = sigma_with(round, top.node) - base;
            top.round = round;
            heap.push(top);
        }
    }
    return selected;
}

SeedSet greedy_im(const Graph& g, int k, const DiffusionConfig& cfg, rng::Stream rng,
                  bool lazy) {
    check_k(k, g.node_count(), "greedy_im");
    auto eval = [&](int round, const std::vector<int>& seeds) {
        return estimate_spread(g, seeds, cfg,
                               rng.substream(static_cast<std::uint64_t>(round)))
            .mean;
    };
    return SeedSet{greedy_select(g.node_count(), k, eval, lazy), "greedy", k};
}

SeedSet static_greedy(const Graph& g, int k, double p, int R, rng::Stream rng) {
    check_k(k, g.node_count(), "static_greedy");
    if (R < 1) throw GraphError("static_greedy: R must be >= 1");
    const int n = g.node_count();

    // Per snapshot: component label per node and size per component.
    std::vector<std::vector<int>> comp(R);
    std::vector<std::vector<std::int64_t>> comp_size(R);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int r = 0; r < R; ++r) {
        Graph snap = live_edge_snapshot(g, p, rng.substream(static_cast<std::uint64_t>(r)));
        auto& labels = comp[r];
        labels.assign(n, -1);
        std::vector<int> queue;
        for (int start = 0; start < n; ++start) {
            if (labels[start] >= 0) continue;
            int c = static_cast<int>(comp_size[r].size());
            comp_size[r].push_back(0);
            labels[start] = c;
            queue.clear();
            queue.push_back(start);
            std::int64_t sz = 1;
            for (std::size_t h = 0; h < queue.size(); ++h)
                for (int u : snap.neighbors(queue[h]))
                    if (labels[u] < 0) {
                        labels[u] = c;
                        queue.push_back(u);
                        ++sz;
                    }
            comp_size[r][c] = sz;
        }
    }

    std::vector<std::vector<char>> covered(R);
    for (int r = 0; r < R; ++r) covered[r].assign(comp_size[r].size(), 0);

    SeedSet out{{}, "static_greedy", k};
    std::vector<char> in_set(n, 0);
    std::vector<double> gain(n);
    for (int round = 0; round < k; ++round) {
        std::fill(gain.begin(), gain.end(), -1.0);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
        for (int v = 0; v < n; ++v) {
            if (in_set[v]) continue;
            std::int64_t total = 0;
            for (int r = 0; r < R; ++r) {
                int c = comp[r][v];
                if (!covered[r][c]) total += comp_size[r][c];
            }
            gain[v] = static_cast<double>(total) / R;
        }
        int best = -1;
        for (int v = 0; v < n; ++v) {
            if (in_set[v]) continue;
            if (best < 0 || gain[v] > gain[best]) best = v;
        }
        out.nodes.push_back(best);
        in_set[best] = 1;
        for (int r = 0; r < R; ++r) covered[r][comp[r][best]] = 1;
    }
    return out;
}

SeedSet imrank(const Graph& g, int k, double p, int L, int iters) {
    check_k(k, g.node_count(), "imrank");
    if (L < 1) throw GraphError("imrank: L must be >= 1");
    if (iters < 0) throw GraphError("imrank: iters must be >= 0");
    const int n = g.node_count();

    // ranking[pos] = node at rank position pos (0 = best); degree descending.
    std::vector<int> ranking(n);
    std::iota(ranking.begin(), ranking.end(), 0);
    std::stable_sort(ranking.begin(), ranking.end(),
                     [&](int a, int b) { return g.degree(a) > g.degree(b); });

    std::vector<int> pos(n);
    std::vector<double> score(n);
    std::vector<int> hop_nodes, dist;
    for (int it = 0; it < iters; ++it) {
        for (int i = 0; i < n; ++i) pos[ranking[i]] = i;
        std::fill(score.begin(), score.end(), 1.0);

        // Sweep from the bottom of the ranking upward.
        for (int i = n - 1; i >= 0; --i) {
            int u = ranking[i];
            // Neighbors within L hops ranked above u.
            std::vector<int> above;
            if (L == 1) {
                for (int v : g.neighbors(u))
                    if (pos[v] < i) above.push_back(v);
            } else {
                dist.assign(n, -1);
                dist[u] = 0;
                hop_nodes.clear();
                hop_nodes.push_back(u);
                for (std::size_t h = 0; h < hop_nodes.size(); ++h) {
                    int w = hop_nodes[h];
                    if (dist[w] == L) continue;
                    for (int v : g.neighbors(w))
                        if (dist[v] < 0) {
                            dist[v] = dist[w] + 1;
                            hop_nodes.push_back(v);
                            if (pos[v] < i) above.push_back(v);
                        }
                }
            }
            // Best-ranked first; each takes a p-fraction of the residual.
            std::sort(above.begin(), above.end(),
                      [&](int a, int b) { return pos[a] < pos[b]; });
            for (int v : above) {
                double t = p * score[u];
                score[v] += t;
                score[u] -= t;
            }
        }

        auto next = ranking;
        std::stable_sort(next.begin(), next.end(),
                         [&](int a, int b) { return score[a] > score[b]; });
        if (next == ranking) break;
        ranking = std::move(next);
    }

    SeedSet out{{}, "imrank", k};
    out.nodes.assign(ranking.begin(), ranking.begin() + k);
    return out;
}

CentralityScores brandes_betweenness(const Graph& g) {
    const int n = g.node_count();

    // Fixed bucket layout keeps the floating-point reduction order
    // independent of the worker count.
    constexpr int kBuckets = 64;
    std::vector<std::vector<double>> bucket(std::min(kBuckets, std::max(n, 1)),
                                            std::vector<double>(n, 0.0));
    const int nb = static_cast<int>(bucket.size());

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int b = 0; b < nb; ++b) {
        std::vector<int> order, dist(n), nsp(n);
        std::vector<double> delta(n);
        std::vector<std::vector<int>> preds(n);
        for (int s = b; s < n; s += nb) {
            order.clear();
            std::fill(dist.begin(), dist.end(), -1);
            std::fill(nsp.begin(), nsp.end(), 0);
            std::fill(delta.begin(), delta.end(), 0.0);
            for (auto& pv : preds) pv.clear();

            dist[s] = 0;
            nsp[s] = 1;
            order.push_back(s);
            for (std::size_t h = 0; h < order.size(); ++h) {
                int u = order[h];
                for (int v : g.neighbors(u)) {
                    if (dist[v] < 0) {
                        dist[v] = dist[u] + 1;
                        order.push_back(v);
                    }
                    if (dist[v] == dist[u] + 1) {
                        nsp[v] += nsp[u];
                        preds[v].push_back(u);
                    }
                }
            }
            for (auto it = order.rbegin(); it != order.rend(); ++it) {
                int w = *it;
                for (int u : preds[w])
                    delta[u] += static_cast<double>(nsp[u]) / nsp[w] * (1.0 + delta[w]);
                if (w != s) bucket[b][w] += delta[w];
            }
        }
    }

    CentralityScores out;
    out.scores.assign(n, 0.0);
    for (int b = 0; b < nb; ++b)
        for (int v = 0; v < n; ++v) out.scores[v] += bucket[b][v];
    for (double& x : out.scores) x /= 2.0;  // unordered pairs
    return out;
}

CentralityScores pagerank(const Graph& g, double damping, double tol, int max_iters) {
    if (!(damping > 0.0 && damping < 1.0)) throw GraphError("pagerank: damping in (0,1)");
    const int n = g.node_count();
    CentralityScores out;
    if (n == 0) return out;

    std::vector<double> score(n, 1.0 / n), next(n);
    for (int it = 0; it < max_iters; ++it) {
        double dangling = 0.0;
        for (int v = 0; v < n; ++v)
            if (g.degree(v) == 0) dangling += score[v];
        double base = (1.0 - damping) / n + damping * dangling / n;
        std::fill(next.begin(), next.end(), base);
        for (int v = 0; v < n; ++v) {
            if (g.degree(v) == 0) continue;
            double share = damping * score[v] / g.degree(v);
            for (int u : g.neighbors(v)) next[u] += share;
        }
        double l1 = 0.0;
        for (int v = 0; v < n; ++v) l1 += std::abs(next[v] - score[v]);
        score.swap(next);
        if (l1 < tol) break;
    }
    out.scores = std::move(score);
    return out;
}

SeedSet select_top_k(const CentralityScores& scores, int k, const std::string& method) {
    const int n = static_cast<int>(scores.scores.size());
    check_k(k, n, "select_top_k");
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return scores.scores[a] > scores.scores[b];
    });
    SeedSet out{{}, method, k};
    out.nodes.assign(order.begin(), order.begin() + k);
    return out;
}

SeedSet random_seeds(const Graph& g, int k, rng::Stream rng) {
    check_k(k, g.node_count(), "random_seeds");
    std::vector<int> nodes(g.node_count());
    std::iota(nodes.begin(), nodes.end(), 0);
    for (int i = 0; i < k; ++i) {
        int j = i + static_cast<int>(
                        rng.next_below(static_cast<std::uint64_t>(nodes.size() - i)));
        std::swap(nodes[i], nodes[j]);
    }
    nodes.resize(k);
    return SeedSet{std::move(nodes), "random", k};
}

void write_seed_set(const SeedSet& s, const Graph& label_source, std::ostream& out,
                    const std::string& params) {
    out << "# method=" << s.method << " k=" << s.k;
    if (!params.empty()) out << " " << params;
    out << "\n";
    for (int v : s.nodes) out << label_source.label(v) << "\n";
}

} // namespace lpim
