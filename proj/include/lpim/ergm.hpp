#ifndef LPIM_ERGM_HPP
#define LPIM_ERGM_HPP

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "lpim/graph.hpp"
#include "lpim/rng.hpp"

namespace lpim::ergm {

enum class TermKind { Edges, Isolates, GwDegree, GwEsp, GwDsp };

const char* term_name(TermKind kind);
TermKind term_from_name(const std::string& name);
bool term_has_decay(TermKind kind);

struct Term {
    TermKind kind;
    double decay = 0.0;  // geometrically weighted terms only
};

struct ErgmTermSet {
    std::vector<Term> terms;

    void validate() const;  // non-empty, no duplicate kinds, decays > 0
    std::size_t size() const { return terms.size(); }

    static ErgmTermSet standard(double decay = 0.5);   // all five terms
    static ErgmTermSet edges_only();
    // Comma-separated spec, e.g. "edges,gw_esp(0.5)".
    static ErgmTermSet parse(const std::string& spec);
    std::string to_string() const;
};

struct FitDiagnostics {
    int iterations = 0;
    double log_pseudo_likelihood = 0.0;
    bool separation = false;
};

struct ErgmModel {
    ErgmTermSet terms;
    std::vector<double> theta;
    FitDiagnostics fit;
};

struct MpleConfig {
    enum class DyadSampling { Auto, All, CaseControl };
    DyadSampling sampling = DyadSampling::Auto;
    double control_ratio = 5.0;          // non-edges per edge in case-control mode
    std::int64_t all_dyads_limit = 500000;  // Auto switches to case-control above this
    double grad_tol = 1e-6;
    int max_iterations = 200;
    double theta_clamp = 10.0;
};

struct McmcConfig {
    std::int64_t burn_in = -1;   // proposals; -1 => 20 * |E(init)|
    std::int64_t thinning = -1;  // proposals between samples; -1 => 2 * |E(init)|
    int chains = 4;
};

// Exact sufficient statistics in term order.
std::vector<double> compute_statistics(const Graph& g, const ErgmTermSet& terms);

// s(G with (i,j)) - s(G without (i,j)), computed incrementally.
std::vector<double> change_statistics(const Graph& g, int i, int j,
                                      const ErgmTermSet& terms);

ErgmModel fit_mple(const Graph& g, const ErgmTermSet& terms,
                   const MpleConfig& cfg, rng::Stream rng);

// Gradient of the log-pseudo-likelihood at theta over all dyads (test hook).
std::vector<double> mple_gradient(const Graph& g, const ErgmTermSet& terms,
                                  const std::vector<double>& theta);

// Tie/no-tie Metropolis-Hastings over dyad toggles, chains seeded
// deterministically; output ordered by (chain, index).
std::vector<Graph> sample_graphs(const ErgmModel& model, const Graph& init,
                                 int n_samples, const McmcConfig& cfg, rng::Stream rng);

// Same sampler, but only per-dyad presence counts are kept (canonical dyads,
// sorted). Chains run concurrently; integer counts merge deterministically.
std::vector<std::pair<std::pair<int, int>, int>> sample_edge_counts(
    const ErgmModel& model, const Graph& init, int n_samples, const McmcConfig& cfg,
    rng::Stream rng);

void write_model(const ErgmModel& model, std::ostream& out);
ErgmModel read_model(std::istream& in);

} // namespace lpim::ergm

#endif
