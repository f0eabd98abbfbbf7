#include "lpim/ergm.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <unordered_map>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace lpim::ergm {

const char* term_name(TermKind kind) {
    switch (kind) {
        case TermKind::Edges: return "edges";
        case TermKind::Isolates: return "isolates";
        case TermKind::GwDegree: return "gw_degree";
        case TermKind::GwEsp: return "gw_esp";
        case TermKind::GwDsp: return "gw_dsp";
    }
    return "?";
}

TermKind term_from_name(const std::string& name) {
    if (name == "edges") return TermKind::Edges;
    if (name == "isolates") return TermKind::Isolates;
    if (name == "gw_degree") return TermKind::GwDegree;
    if (name == "gw_esp") return TermKind::GwEsp;
    if (name == "gw_dsp") return TermKind::GwDsp;
    throw GraphError("unknown ERGM term: " + name);
}

bool term_has_decay(TermKind kind) {
    return kind == TermKind::GwDegree || kind == TermKind::GwEsp ||
           kind == TermKind::GwDsp;
}

void ErgmTermSet::validate() const {
    if (terms.empty()) throw GraphError("ErgmTermSet: empty");
    for (std::size_t a = 0; a < terms.size(); ++a) {
        if (term_has_decay(terms[a].kind) && !(terms[a].decay > 0.0))
            throw GraphError(std::string("ErgmTermSet: decay must be > 0 for ") +
                             term_name(terms[a].kind));
        for (std::size_t b = a + 1; b < terms.size(); ++b)
            if (terms[a].kind == terms[b].kind)
                throw GraphError(std::string("ErgmTermSet: duplicate term ") +
                                 term_name(terms[a].kind));
    }
}

ErgmTermSet ErgmTermSet::standard(double decay) {
    return ErgmTermSet{{{TermKind::Edges, 0.0},
                        {TermKind::Isolates, 0.0},
                        {TermKind::GwDegree, decay},
                        {TermKind::GwEsp, decay},
                        {TermKind::GwDsp, decay}}};
}

ErgmTermSet ErgmTermSet::edges_only() {
    return ErgmTermSet{{{TermKind::Edges, 0.0}}};
}

ErgmTermSet ErgmTermSet::parse(const std::string& spec) {
    ErgmTermSet set;
    std::string item;
    std::istringstream in(spec);
    while (std::getline(in, item, ',')) {
        item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
        if (item.empty()) continue;
        auto paren = item.find('(');
        Term t;
        if (paren == std::string::npos) {
            t.kind = term_from_name(item);
        } else {
            if (item.back() != ')') throw GraphError("bad term syntax: " + item);
            t.kind = term_from_name(item.substr(0, paren));
            t.decay = std::stod(item.substr(paren + 1, item.size() - paren - 2));
        }
        if (term_has_decay(t.kind) && t.decay == 0.0) t.decay = 0.5;
        set.terms.push_back(t);
    }
    set.validate();
    return set;
}

std::string ErgmTermSet::to_string() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (i) out << ",";
        out << term_name(terms[i].kind);
        if (term_has_decay(terms[i].kind)) out << "(" << terms[i].decay << ")";
    }
    return out.str();
}

namespace {

std::uint64_t dyad_key(int i, int j) {
    return (static_cast<std::uint64_t>(i) << 32) | static_cast<std::uint32_t>(j);
}

// Working adjacency for incremental statistics and MCMC toggles.
struct MutableAdj {
    int n = 0;
    std::vector<std::vector<int>> adj;                 // sorted
    std::vector<std::pair<int, int>> edges;            // i < j
    std::unordered_map<std::uint64_t, int> edge_pos;

    explicit MutableAdj(const Graph& g) : n(g.node_count()), adj(g.node_count()) {
        for (int v = 0; v < n; ++v) adj[v] = g.neighbors(v);
        for (auto [i, j] : g.edge_list()) {
            edge_pos[dyad_key(i, j)] = static_cast<int>(edges.size());
            edges.emplace_back(i, j);
        }
    }

    std::int64_t edge_count() const { return static_cast<std::int64_t>(edges.size()); }

    bool has_edge(int i, int j) const {
        const auto& a = adj[i];
        return std::binary_search(a.begin(), a.end(), j);
    }

    int degree(int v) const { return static_cast<int>(adj[v].size()); }

    void add(int i, int j) {
        adj[i].insert(std::upper_bound(adj[i].begin(), adj[i].end(), j), j);
        adj[j].insert(std::upper_bound(adj[j].begin(), adj[j].end(), i), i);
        if (j < i) std::swap(i, j);
        edge_pos[dyad_key(i, j)] = static_cast<int>(edges.size());
        edges.emplace_back(i, j);
    }

    void remove(int i, int j) {
        adj[i].erase(std::lower_bound(adj[i].begin(), adj[i].end(), j));
        adj[j].erase(std::lower_bound(adj[j].begin(), adj[j].end(), i));
        if (j < i) std::swap(i, j);
        auto it = edge_pos.find(dyad_key(i, j));
        int pos = it->second;
        edge_pos.erase(it);
        if (pos != static_cast<int>(edges.size()) - 1) {
            edges[pos] = edges.back();
            edge_pos[dyad_key(edges[pos].first, edges[pos].second)] = pos;
        }
        edges.pop_back();
    }

    int common_count(int i, int j) const {
        const auto& a = adj[i];
        const auto& b = adj[j];
        int count = 0;
        auto ia = a.begin(), ib = b.begin();
        while (ia != a.end() && ib != b.end()) {
            if (*ia < *ib) ++ia;
            else if (*ib < *ia) ++ib;
            else { ++count; ++ia; ++ib; }
        }
        return count;
    }

    void common_list(int i, int j, std::vector<int>& out) const {
        out.clear();
        const auto& a = adj[i];
        const auto& b = adj[j];
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                              std::back_inserter(out));
    }
};

struct GwParams {
    double scale;  // e^tau
    double base;   // 1 - e^(-tau)
};

GwParams gw_params(double tau) {
    return {std::exp(tau), 1.0 - std::exp(-tau)};
}

// e^tau * (1 - (1 - e^(-tau))^m)
double gw_weight(const GwParams& p, std::int64_t m) {
    if (m <= 0) return 0.0;
    return p.scale * (1.0 - std::pow(p.base, static_cast<double>(m)));
}

// e^tau * (w(m+1) - w(m)) collapses to base^m.
double gw_increment(const GwParams& p, std::int64_t m) {
    return std::pow(p.base, static_cast<double>(m));
}

// Change statistics for adding dyad (i, j); the dyad must be absent in g.
std::vector<double> change_stats_add(const MutableAdj& g, int i, int j,
                                     const ErgmTermSet& terms,
                                     std::vector<int>& scratch) {
    std::vector<double> out(terms.size(), 0.0);
    for (std::size_t t = 0; t < terms.size(); ++t) {
        const Term& term = terms.terms[t];
        switch (term.kind) {
            case TermKind::Edges:
                out[t] = 1.0;
                break;
            case TermKind::Isolates:
                out[t] = -(g.degree(i) == 0 ? 1.0 : 0.0) - (g.degree(j) == 0 ? 1.0 : 0.0);
                break;
            case TermKind::GwDegree: {
                auto p = gw_params(term.decay);
                out[t] = gw_increment(p, g.degree(i)) + gw_increment(p, g.degree(j));
                break;
            }
            case TermKind::GwEsp: {
                auto p = gw_params(term.decay);
                g.common_list(i, j, scratch);
                double delta = gw_weight(p, static_cast<std::int64_t>(scratch.size()));
                for (int k : scratch) {
                    delta += gw_increment(p, g.common_count(i, k));
                    delta += gw_increment(p, g.common_count(j, k));
                }
                out[t] = delta;
                break;
            }
            case TermKind::GwDsp: {
                auto p = gw_params(term.decay);
                double delta = 0.0;
                for (int k : g.adj[j])
                    if (k != i) delta += gw_increment(p, g.common_count(i, k));
                for (int k : g.adj[i])
                    if (k != j) delta += gw_increment(p, g.common_count(j, k));
                out[t] = delta;
                break;
            }
        }
    }
    return out;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

} // namespace

std::vector<double> compute_statistics(const Graph& g, const ErgmTermSet& terms) {
    terms.validate();
    const int n = g.node_count();
    std::vector<double> out(terms.size(), 0.0);

    MutableAdj adj(g);
    // Dyadwise shared-partner histogram via two-path enumeration; only dyads
    // with at least one shared partner matter (w(0) = 0).
    std::unordered_map<std::uint64_t, int> dsp;
    bool need_dsp = false;
    for (const Term& t : terms.terms) need_dsp |= (t.kind == TermKind::GwDsp);
    if (need_dsp) {
        for (int k = 0; k < n; ++k) {
            const auto& nb = adj.adj[k];
            for (std::size_t a = 0; a < nb.size(); ++a)
                for (std::size_t b = a + 1; b < nb.size(); ++b)
                    ++dsp[dyad_key(nb[a], nb[b])];
        }
    }

    for (std::size_t t = 0; t < terms.size(); ++t) {
        const Term& term = terms.terms[t];
        switch (term.kind) {
            case TermKind::Edges:
                out[t] = static_cast<double>(g.edge_count());
                break;
            case TermKind::Isolates: {
                int isolates = 0;
                for (int v = 0; v < n; ++v)
                    if (g.degree(v) == 0) ++isolates;
                out[t] = isolates;
                break;
            }
            case TermKind::GwDegree: {
                auto p = gw_params(term.decay);
                double s = 0.0;
                for (int v = 0; v < n; ++v) s += gw_weight(p, g.degree(v));
                out[t] = s;
                break;
            }
            case TermKind::GwEsp: {
                auto p = gw_params(term.decay);
                double s = 0.0;
                for (auto [i, j] : g.edge_list()) s += gw_weight(p, adj.common_count(i, j));
                out[t] = s;
                break;
            }
            case TermKind::GwDsp: {
                auto p = gw_params(term.decay);
                double s = 0.0;
                for (const auto& [key, count] : dsp) {
                    (void)key;
                    s += gw_weight(p, count);
                }
                out[t] = s;
                break;
            }
        }
    }
    return out;
}

std::vector<double> change_statistics(const Graph& g, int i, int j,
                                      const ErgmTermSet& terms) {
    terms.validate();
    if (i == j) throw GraphError("change_statistics: self-loop dyad");
    if (i < 0 || j < 0 || i >= g.node_count() || j >= g.node_count())
        throw GraphError("change_statistics: dyad out of range");
    MutableAdj adj(g);
    std::vector<int> scratch;
    if (adj.has_edge(i, j)) {
        adj.remove(i, j);
        return change_stats_add(adj, i, j, terms, scratch);
    }
    return change_stats_add(adj, i, j, terms, scratch);
}

namespace {

double log1pexp(double x) {
    if (x > 0) return x + std::log1p(std::exp(-x));
    return std::log1p(std::exp(x));
}

// Solve (H + ridge I) x = b for small symmetric H, Gaussian elimination.
std::vector<double> solve_spd(std::vector<std::vector<double>> h, std::vector<double> b) {
    const int p = static_cast<int>(b.size());
    for (int i = 0; i < p; ++i) h[i][i] += 1e-10;
    for (int col = 0; col < p; ++col) {
        int piv = col;
        for (int r = col + 1; r < p; ++r)
            if (std::abs(h[r][col]) > std::abs(h[piv][col])) piv = r;
        std::swap(h[col], h[piv]);
        std::swap(b[col], b[piv]);
        if (std::abs(h[col][col]) < 1e-300) continue;
        for (int r = col + 1; r < p; ++r) {
            double f = h[r][col] / h[col][col];
            for (int c = col; c < p; ++c) h[r][c] -= f * h[col][c];
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(p, 0.0);
    for (int r = p - 1; r >= 0; --r) {
        double s = b[r];
        for (int c = r + 1; c < p; ++c) s -= h[r][c] * x[c];
        x[r] = std::abs(h[r][r]) < 1e-300 ? 0.0 : s / h[r][r];
    }
    return x;
}

struct DyadDesign {
    std::vector<std::vector<double>> x;  // change statistics per row
    std::vector<char> y;                 // edge present
    double edges_offset = 0.0;           // case-control intercept correction
};

DyadDesign build_design(const Graph& g, const ErgmTermSet& terms, const MpleConfig& cfg,
                        rng::Stream rng) {
    const auto n = static_cast<std::int64_t>(g.node_count());
    const std::int64_t total_dyads = n * (n - 1) / 2;
    const std::int64_t nonedges_total = total_dyads - g.edge_count();

    bool case_control = cfg.sampling == MpleConfig::DyadSampling::CaseControl ||
                        (cfg.sampling == MpleConfig::DyadSampling::Auto &&
                         total_dyads > cfg.all_dyads_limit);

    std::vector<std::pair<int, int>> dyads;
    std::vector<char> labels;
    for (auto [i, j] : g.edge_list()) {
        dyads.emplace_back(i, j);
        labels.push_back(1);
    }

    DyadDesign design;
    if (case_control) {
        auto m = std::min<std::int64_t>(
            static_cast<std::int64_t>(cfg.control_ratio * static_cast<double>(g.edge_count())),
            nonedges_total);
        auto controls = sample_random_nonedges(g, m, rng);
        for (auto [i, j] : controls.dyads()) {
            dyads.emplace_back(i, j);
            labels.push_back(0);
        }
        design.edges_offset =
            std::log(static_cast<double>(m) / static_cast<double>(nonedges_total));
    } else {
        for (int i = 0; i < g.node_count(); ++i)
            for (int j = i + 1; j < g.node_count(); ++j)
                if (!g.has_edge(i, j)) {
                    dyads.emplace_back(i, j);
                    labels.push_back(0);
                }
    }

    design.x.resize(dyads.size());
    design.y = std::move(labels);

#ifdef _OPENMP
#pragma omp parallel
#endif
    {
        MutableAdj work(g);
        std::vector<int> scratch;
#ifdef _OPENMP
#pragma omp for schedule(dynamic, 256)
#endif
        for (std::int64_t r = 0; r < static_cast<std::int64_t>(dyads.size()); ++r) {
            auto [i, j] = dyads[r];
            if (design.y[r]) {
                work.remove(i, j);
                design.x[r] = change_stats_add(work, i, j, terms, scratch);
                work.add(i, j);
            } else {
                design.x[r] = change_stats_add(work, i, j, terms, scratch);
            }
        }
    }
    return design;
}

} // namespace

ErgmModel fit_mple(const Graph& g, const ErgmTermSet& terms, const MpleConfig& cfg,
                   rng::Stream rng) {
    terms.validate();
    const auto n = static_cast<std::int64_t>(g.node_count());
    if (g.edge_count() == 0) throw GraphError("fit_mple: graph has no edges");
    if (g.edge_count() == n * (n - 1) / 2 && cfg.sampling == MpleConfig::DyadSampling::All) {
        // still proceeds; separation clamp handles the all-positive response
    }

    auto design = build_design(g, terms, cfg, rng);
    const auto rows = static_cast<std::int64_t>(design.x.size());
    const int p = static_cast<int>(terms.size());

    std::vector<double> theta(p, 0.0);
    double log_pl = 0.0;
    int iterations = 0;
    bool converged = false;

    for (int it = 0; it < cfg.max_iterations; ++it) {
        iterations = it + 1;
        std::vector<double> grad(p, 0.0);
        std::vector<std::vector<double>> hess(p, std::vector<double>(p, 0.0));
        log_pl = 0.0;
        for (std::int64_t r = 0; r < rows; ++r) {
            const auto& x = design.x[r];
            double eta = dot(theta, x);
            double mu = 1.0 / (1.0 + std::exp(-eta));
            double resid = static_cast<double>(design.y[r]) - mu;
            double w = mu * (1.0 - mu);
            for (int a = 0; a < p; ++a) {
                grad[a] += resid * x[a];
                for (int b = a; b < p; ++b) hess[a][b] += w * x[a] * x[b];
            }
            log_pl += design.y[r] ? (eta - log1pexp(eta)) : -log1pexp(eta);
        }
        for (int a = 0; a < p; ++a)
            for (int b = 0; b < a; ++b) hess[a][b] = hess[b][a];

        double gmax = 0.0;
        for (double gi : grad) gmax = std::max(gmax, std::abs(gi));
        if (gmax < cfg.grad_tol) {
            converged = true;
            break;
        }
        auto step = solve_spd(std::move(hess), grad);
        for (int a = 0; a < p; ++a) {
            theta[a] += step[a];
            theta[a] = std::clamp(theta[a], -cfg.theta_clamp, cfg.theta_clamp);
        }
    }

    bool at_clamp = false;
    for (double t : theta) at_clamp |= (std::abs(t) >= cfg.theta_clamp - 1e-12);

    ErgmModel model;
    model.terms = terms;
    model.theta = theta;
    // Case-control sampling biases only the density term; correct it post fit.
    if (design.edges_offset != 0.0) {
        for (int a = 0; a < p; ++a)
            if (terms.terms[a].kind == TermKind::Edges)
                model.theta[a] += design.edges_offset;
    }
    model.fit.iterations = iterations;
    model.fit.log_pseudo_likelihood = log_pl;
    model.fit.separation = !converged && at_clamp;
    return model;
}

std::vector<double> mple_gradient(const Graph& g, const ErgmTermSet& terms,
                                  const std::vector<double>& theta) {
    MpleConfig cfg;
    cfg.sampling = MpleConfig::DyadSampling::All;
    auto design = build_design(g, terms, cfg, rng::Stream(0));
    std::vector<double> grad(terms.size(), 0.0);
    for (std::size_t r = 0; r < design.x.size(); ++r) {
        double mu = 1.0 / (1.0 + std::exp(-dot(theta, design.x[r])));
        for (std::size_t a = 0; a < grad.size(); ++a)
            grad[a] += (static_cast<double>(design.y[r]) - mu) * design.x[r][a];
    }
    return grad;
}

namespace {

struct McmcChain {
    const ErgmModel& model;
    MutableAdj state;
    rng::Stream rng;
    std::int64_t total_dyads;
    std::vector<int> scratch;

    McmcChain(const ErgmModel& m, const Graph& init, rng::Stream r)
        : model(m), state(init), rng(r) {
        auto n = static_cast<std::int64_t>(init.node_count());
        total_dyads = n * (n - 1) / 2;
    }

    // One tie/no-tie proposal.
    void step() {
        const double nd = static_cast<double>(total_dyads);
        int i, j;
        if (rng.bernoulli(0.5)) {
            if (state.edge_count() == 0) return;  // null proposal
            auto [a, b] = state.edges[rng.next_below(
                static_cast<std::uint64_t>(state.edge_count()))];
            i = a;
            j = b;
        } else {
            do {
                i = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(state.n)));
                j = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(state.n)));
            } while (i == j);
            if (j < i) std::swap(i, j);
        }

        const double e = static_cast<double>(state.edge_count());
        double log_alpha;
        bool removing = state.has_edge(i, j);
        if (removing) {
            state.remove(i, j);
            auto cs = change_stats_add(state, i, j, model.terms, scratch);
            log_alpha = -dot(model.theta, cs) +
                        std::log((0.5 / nd) / (0.5 / e + 0.5 / nd));
            if (!(log_alpha >= 0.0 || rng.next_double() < std::exp(log_alpha)))
                state.add(i, j);  // rejected
        } else {
            auto cs = change_stats_add(state, i, j, model.terms, scratch);
            log_alpha = dot(model.theta, cs) +
                        std::log((0.5 / (e + 1.0) + 0.5 / nd) / (0.5 / nd));
            if (log_alpha >= 0.0 || rng.next_double() < std::exp(log_alpha))
                state.add(i, j);
        }
    }
};

struct ChainPlan {
    std::int64_t burn_in;
    std::int64_t thinning;
    std::vector<int> samples_per_chain;
};

ChainPlan make_plan(const Graph& init, int n_samples, const McmcConfig& cfg) {
    if (n_samples < 1) throw GraphError("sample_graphs: n_samples must be >= 1");
    if (cfg.chains < 1) throw GraphError("sample_graphs: chains must be >= 1");
    ChainPlan plan;
    plan.burn_in = cfg.burn_in >= 0 ? cfg.burn_in : 20 * std::max<std::int64_t>(init.edge_count(), 1);
    plan.thinning = cfg.thinning >= 0 ? std::max<std::int64_t>(cfg.thinning, 1)
                                      : 2 * std::max<std::int64_t>(init.edge_count(), 1);
    int chains = std::min(cfg.chains, n_samples);
    plan.samples_per_chain.assign(chains, n_samples / chains);
    for (int c = 0; c < n_samples % chains; ++c) ++plan.samples_per_chain[c];
    return plan;
}

template <class Emit>
void run_chain(const ErgmModel& model, const Graph& init, const ChainPlan& plan,
               int chain, rng::Stream rng, Emit&& emit) {
    McmcChain mc(model, init, rng.substream(0x6368u /* chain stream */,
                                            static_cast<std::uint64_t>(chain)));
    for (std::int64_t s = 0; s < plan.burn_in; ++s) mc.step();
    for (int idx = 0; idx < plan.samples_per_chain[chain]; ++idx) {
        if (idx > 0)
            for (std::int64_t s = 0; s < plan.thinning; ++s) mc.step();
        emit(idx, mc.state);
    }
}

} // namespace

std::vector<Graph> sample_graphs(const ErgmModel& model, const Graph& init,
                                 int n_samples, const McmcConfig& cfg, rng::Stream rng) {
    model.terms.validate();
    auto plan = make_plan(init, n_samples, cfg);
    const int chains = static_cast<int>(plan.samples_per_chain.size());
    std::vector<std::vector<Graph>> per_chain(chains);

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int c = 0; c < chains; ++c) {
        per_chain[c].reserve(plan.samples_per_chain[c]);
        run_chain(model, init, plan, c, rng, [&](int, const MutableAdj& state) {
            per_chain[c].emplace_back(state.n, state.edges, init.labels());
        });
    }

    std::vector<Graph> out;
    out.reserve(n_samples);
    for (int c = 0; c < chains; ++c)
        for (auto& g : per_chain[c]) out.push_back(std::move(g));
    return out;
}

std::vector<std::pair<std::pair<int, int>, int>> sample_edge_counts(
    const ErgmModel& model, const Graph& init, int n_samples, const McmcConfig& cfg,
    rng::Stream rng) {
    model.terms.validate();
    auto plan = make_plan(init, n_samples, cfg);
    const int chains = static_cast<int>(plan.samples_per_chain.size());
    std::vector<std::unordered_map<std::uint64_t, int>> counts(chains);

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int c = 0; c < chains; ++c) {
        run_chain(model, init, plan, c, rng, [&](int, const MutableAdj& state) {
            for (auto [i, j] : state.edges) ++counts[c][dyad_key(i, j)];
        });
    }

    std::unordered_map<std::uint64_t, int> merged;
    for (const auto& m : counts)
        for (const auto& [k, v] : m) merged[k] += v;

    std::vector<std::pair<std::pair<int, int>, int>> out;
    out.reserve(merged.size());
    for (const auto& [k, v] : merged)
        out.push_back({{static_cast<int>(k >> 32), static_cast<int>(k & 0xffffffffu)}, v});
    std::sort(out.begin(), out.end());
    return out;
}

void write_model(const ErgmModel& model, std::ostream& out) {
    for (std::size_t i = 0; i < model.terms.size(); ++i) {
        const Term& t = model.terms.terms[i];
        out << "term " << term_name(t.kind);
        if (term_has_decay(t.kind)) out << " decay=" << t.decay;
        out << " theta=" << model.theta[i] << "\n";
    }
    out << "iterations " << model.fit.iterations << "\n";
    out << "log_pseudo_likelihood " << model.fit.log_pseudo_likelihood << "\n";
    out << "separation " << (model.fit.separation ? 1 : 0) << "\n";
}

ErgmModel read_model(std::istream& in) {
    ErgmModel model;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string head;
        ls >> head;
        if (head == "term") {
            std::string name;
            ls >> name;
            Term t{term_from_name(name), 0.0};
            double theta = 0.0;
            std::string kv;
            while (ls >> kv) {
                auto eq = kv.find('=');
                if (eq == std::string::npos) continue;
                auto key = kv.substr(0, eq);
                auto val = std::stod(kv.substr(eq + 1));
                if (key == "decay") t.decay = val;
                else if (key == "theta") theta = val;
            }
            model.terms.terms.push_back(t);
            model.theta.push_back(theta);
        } else if (head == "iterations") {
            ls >> model.fit.iterations;
        } else if (head == "log_pseudo_likelihood") {
            ls >> model.fit.log_pseudo_likelihood;
        } else if (head == "separation") {
            int s = 0;
            ls >> s;
            model.fit.separation = s != 0;
        }
    }
    model.terms.validate();
    return model;
}

} // namespace lpim::ergm
