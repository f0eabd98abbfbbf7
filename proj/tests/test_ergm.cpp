#include <doctest.h>

#include <cmath>
#include <map>
#include <sstream>

#include "exact_spread.hpp"
#include "lpim/ergm.hpp"

using namespace lpim;
using namespace lpim::ergm;

namespace {

Graph without_edge(const Graph& g, int i, int j) {
    std::vector<std::pair<int, int>> edges;
    for (auto [a, b] : g.edge_list())
        if (!(a == std::min(i, j) && b == std::max(i, j))) edges.emplace_back(a, b);
    return Graph(g.node_count(), edges);
}

Graph with_edge(const Graph& g, int i, int j) {
    auto edges = g.edge_list();
    edges.emplace_back(std::min(i, j), std::max(i, j));
    return Graph(g.node_count(), edges);
}

double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }

} // namespace

TEST_CASE("term set parsing and validation") {
    auto ts = ErgmTermSet::parse("edges,gw_esp(0.5)");
    CHECK(ts.size() == 2);
    CHECK(ts.terms[0].kind == TermKind::Edges);
    CHECK(ts.terms[1].kind == TermKind::GwEsp);
    CHECK(ts.terms[1].decay == doctest::Approx(0.5));
    CHECK(ErgmTermSet::parse(ts.to_string()).to_string() == ts.to_string());

    CHECK(ErgmTermSet::standard(0.5).size() == 5);
    CHECK_THROWS_AS(ErgmTermSet::parse(""), GraphError);
    CHECK_THROWS_AS(ErgmTermSet::parse("edges,edges"), GraphError);
    CHECK_THROWS_AS(ErgmTermSet::parse("gw_degree(-1)"), GraphError);
    CHECK_THROWS_AS(ErgmTermSet::parse("nope"), GraphError);
}

TEST_CASE("statistics on an edgeless graph") {
    Graph g(6, {});
    auto s = compute_statistics(g, ErgmTermSet::standard(0.5));
    CHECK(s[0] == doctest::Approx(0.0));  // edges
    CHECK(s[1] == doctest::Approx(6.0));  // isolates
    CHECK(s[2] == doctest::Approx(0.0));  // gw_degree
    CHECK(s[3] == doctest::Approx(0.0));  // gw_esp
    CHECK(s[4] == doctest::Approx(0.0));  // gw_dsp
}

TEST_CASE("geometrically weighted closed forms on small graphs") {
    Graph k3(3, {{0, 1}, {1, 2}, {0, 2}});
    // each K3 edge has one shared partner; w(1) = e^t * e^-t = 1
    auto esp = compute_statistics(k3, ErgmTermSet::parse("gw_esp(0.5)"));
    CHECK(esp[0] == doctest::Approx(3.0));

    Graph star(4, {{0, 1}, {0, 2}, {0, 3}});
    // tau = ln 2: leaf weight 2 * (1 - 0.5) = 1, hub 2 * (1 - 0.125) = 1.75
    auto deg = compute_statistics(
        star, ErgmTermSet::parse("gw_degree(" + std::to_string(std::log(2.0)) + ")"));
    CHECK(deg[0] == doctest::Approx(4.75));
}

TEST_CASE("gw_esp limiting behaviour") {
    for (int trial = 0; trial < 10; ++trial) {
        auto g = erdos_renyi(20, 0.25, rng::Stream(rng::mix(101, trial)));
        double shared_total = 0, edges_with_partner = 0;
        for (auto [i, j] : g.edge_list()) {
            int common = 0;
            for (int u : g.neighbors(i))
                if (u != j && g.has_edge(u, j)) ++common;
            shared_total += common;
            if (common > 0) ++edges_with_partner;
        }
        auto high = compute_statistics(g, ErgmTermSet::parse("gw_esp(20)"));
        CHECK(high[0] == doctest::Approx(shared_total).epsilon(1e-6));
        auto low = compute_statistics(g, ErgmTermSet::parse("gw_esp(0.01)"));
        CHECK(low[0] == doctest::Approx(edges_with_partner).epsilon(0.05));
    }
}

TEST_CASE("change statistics match the recompute oracle") {
    auto terms = ErgmTermSet::standard(0.5);
    for (int trial = 0; trial < 200; ++trial) {
        rng::Stream rng(rng::mix(111, trial));
        auto g = erdos_renyi(3 + static_cast<int>(rng.next_below(28)), 0.2,
                             rng.substream(0, 0));
        const int n = g.node_count();
        for (int probe = 0; probe < 5; ++probe) {
            int i = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
            int j = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
            if (i == j) continue;
            Graph off = g.has_edge(i, j) ? without_edge(g, i, j) : g;
            Graph on = with_edge(off, i, j);
            auto delta = change_statistics(off, i, j, terms);
            auto s_on = compute_statistics(on, terms);
            auto s_off = compute_statistics(off, terms);
            REQUIRE(delta.size() == terms.size());
            for (std::size_t t = 0; t < terms.size(); ++t)
                CHECK(delta[t] == doctest::Approx(s_on[t] - s_off[t]).epsilon(1e-9));
        }
    }
}

TEST_CASE("MPLE recovers the density parameter of an ER graph") {
    auto g = erdos_renyi(200, 0.05, rng::Stream(7));
    double density = 2.0 * static_cast<double>(g.edge_count()) / (200.0 * 199.0);
    double target = std::log(density / (1.0 - density));

    MpleConfig cfg;
    SUBCASE("all dyads") { cfg.sampling = MpleConfig::DyadSampling::All; }
    SUBCASE("case-control") { cfg.sampling = MpleConfig::DyadSampling::CaseControl; }
    auto model = fit_mple(g, ErgmTermSet::edges_only(), cfg, rng::Stream(8));
    REQUIRE(model.theta.size() == 1);
    CHECK_FALSE(model.fit.separation);
    CHECK(std::abs(model.theta[0] - target) < 0.15);
}

TEST_CASE("complete graph causes separation at the clamp") {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < 8; ++i)
        for (int j = i + 1; j < 8; ++j) edges.emplace_back(i, j);
    Graph k8(8, edges);
    auto model = fit_mple(k8, ErgmTermSet::edges_only(), MpleConfig{}, rng::Stream(1));
    CHECK(model.fit.separation);
    CHECK(model.theta[0] == doctest::Approx(10.0));
}

TEST_CASE("MPLE rejects an edgeless graph") {
    Graph g(10, {});
    CHECK_THROWS_AS(fit_mple(g, ErgmTermSet::edges_only(), MpleConfig{}, rng::Stream(1)),
                    GraphError);
}

TEST_CASE("gradient vanishes at the fitted optimum") {
    auto g = erdos_renyi(40, 0.15, rng::Stream(9));
    auto terms = ErgmTermSet::parse("edges,gw_esp(0.5),isolates");
    MpleConfig cfg;
    cfg.sampling = MpleConfig::DyadSampling::All;
    auto model = fit_mple(g, terms, cfg, rng::Stream(10));
    REQUIRE_FALSE(model.fit.separation);
    auto grad = mple_gradient(g, terms, model.theta);
    for (double gv : grad) CHECK(std::abs(gv) < 1e-6);
}

TEST_CASE("sampler matches the Bernoulli law for edges-only models") {
    const int n = 12;
    const double n_dyads = n * (n - 1) / 2.0;
    auto init = erdos_renyi(n, 0.3, rng::Stream(20));
    McmcConfig mc;
    mc.burn_in = 4000;
    mc.thinning = 200;

    for (double theta : {0.0, -2.0}) {
        ErgmModel model{ErgmTermSet::edges_only(), {theta}, {}};
        auto samples = sample_graphs(model, init, 500, mc, rng::Stream(21));
        REQUIRE(samples.size() == 500);
        double mean_density = 0;
        for (const auto& s : samples)
            mean_density += static_cast<double>(s.edge_count()) / n_dyads;
        mean_density /= 500.0;
        CHECK(std::abs(mean_density - logistic(theta)) < 0.02);
    }
}

TEST_CASE("sampler per-dyad frequencies are uniform") {
    const int n = 8;
    auto init = erdos_renyi(n, 0.4, rng::Stream(30));
    ErgmModel model{ErgmTermSet::edges_only(), {-1.0}, {}};
    McmcConfig mc;
    mc.burn_in = 3000;
    mc.thinning = 150;
    auto counts = sample_edge_counts(model, init, 800, mc, rng::Stream(31));
    std::map<std::pair<int, int>, int> freq(counts.begin(), counts.end());
    double expect = 800.0 * logistic(-1.0);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            auto it = freq.find({i, j});
            double c = it == freq.end() ? 0.0 : it->second;
            CHECK(std::abs(c - expect) < 0.15 * 800);
        }
}

TEST_CASE("edge-count sampling is deterministic and consistent with graphs") {
    auto init = erdos_renyi(10, 0.3, rng::Stream(40));
    ErgmModel model{ErgmTermSet::parse("edges,gw_esp(0.5)"), {-1.5, 0.4}, {}};
    McmcConfig mc;
    mc.burn_in = 500;
    mc.thinning = 50;
    auto a = sample_edge_counts(model, init, 60, mc, rng::Stream(41));
    auto b = sample_edge_counts(model, init, 60, mc, rng::Stream(41));
    CHECK(a == b);

    auto graphs = sample_graphs(model, init, 60, mc, rng::Stream(41));
    std::map<std::pair<int, int>, int> from_graphs;
    for (const auto& g : graphs)
        for (auto e : g.edge_list()) ++from_graphs[e];
    std::map<std::pair<int, int>, int> from_counts(a.begin(), a.end());
    CHECK(from_graphs == from_counts);
}

TEST_CASE("sampler rejects bad sample counts") {
    auto init = erdos_renyi(6, 0.3, rng::Stream(1));
    ErgmModel model{ErgmTermSet::edges_only(), {0.0}, {}};
    CHECK_THROWS_AS(sample_graphs(model, init, 0, McmcConfig{}, rng::Stream(1)),
                    GraphError);
}

TEST_CASE("model serialization round trip") {
    ErgmModel model{ErgmTermSet::parse("edges,gw_degree(0.25),gw_esp(0.5)"),
                    {-2.25, 0.125, 0.75},
                    {17, -123.5, false}};
    std::ostringstream out;
    write_model(model, out);
    std::istringstream in(out.str());
    auto back = read_model(in);
    CHECK(back.terms.to_string() == model.terms.to_string());
    REQUIRE(back.theta.size() == 3);
    for (int i = 0; i < 3; ++i) CHECK(back.theta[i] == doctest::Approx(model.theta[i]));
    CHECK(back.fit.iterations == 17);
    CHECK(back.fit.separation == false);
}
