#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "exact_spread.hpp"
#include "lpim/diffusion.hpp"

using namespace lpim;

TEST_CASE("p = 0 infects exactly the seeds") {
    auto g = erdos_renyi(20, 0.3, rng::Stream(1));
    auto r = simulate_ic(g, {3, 7}, 0.0, 100, rng::Stream(2));
    CHECK(r.infected.size() == 2);
    CHECK(r.steps_taken == 0);
}

TEST_CASE("p = 1 infects everything reachable") {
    Graph g(5, {{0, 1}, {1, 2}, {3, 4}});
    auto r = simulate_ic(g, {0}, 1.0, 100, rng::Stream(2));
    std::vector<int> infected = r.infected;
    std::sort(infected.begin(), infected.end());
    CHECK(infected == std::vector<int>{0, 1, 2});
}

TEST_CASE("invalid seed is rejected") {
    Graph g(3, {{0, 1}});
    CHECK_THROWS_AS(simulate_ic(g, {5}, 0.5, 10, rng::Stream(1)), GraphError);
    CHECK_THROWS_AS(simulate_ic(g, {}, 0.5, 10, rng::Stream(1)), GraphError);
}

TEST_CASE("two-node path matches exact expectation") {
    Graph g(2, {{0, 1}});
    DiffusionConfig cfg{0.3, 10000, 100};
    auto est = estimate_spread(g, {0}, cfg, rng::Stream(100));
    // per-run sd = sqrt(0.3 * 0.7); 3 sigma of the mean over 10000 runs
    CHECK(std::abs(est.mean - 1.3) < 3 * std::sqrt(0.21 / 10000.0));
}

TEST_CASE("star hub spread matches linearity") {
    Graph star(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
    DiffusionConfig cfg{0.5, 10000, 100};
    auto est = estimate_spread(star, {0}, cfg, rng::Stream(5));
    CHECK(std::abs(est.mean - 3.0) < 3 * std::sqrt(1.0 / 10000.0));
}

TEST_CASE("estimate_spread degenerate cases") {
    auto g = erdos_renyi(12, 0.3, rng::Stream(4));
    std::vector<int> all(12);
    for (int i = 0; i < 12; ++i) all[i] = i;
    DiffusionConfig cfg{0.7, 50, 100};
    CHECK(estimate_spread(g, all, cfg, rng::Stream(1)).mean == doctest::Approx(12.0));

    cfg.p = 0.0;
    auto est = estimate_spread(g, {2, 5}, cfg, rng::Stream(1));
    CHECK(est.mean == doctest::Approx(2.0));
    for (const auto& run : est.per_run_infected) CHECK(run == std::vector<int>{2, 5});
}

TEST_CASE("snapshot p extremes") {
    auto g = erdos_renyi(15, 0.4, rng::Stream(6));
    auto full = live_edge_snapshot(g, 1.0, rng::Stream(7));
    CHECK(full.edge_count() == g.edge_count());
    auto empty = live_edge_snapshot(g, 0.0, rng::Stream(7));
    CHECK(empty.edge_count() == 0);
    CHECK(empty.node_count() == g.node_count());
}

TEST_CASE("K3 snapshot keeps binomial mean edges") {
    Graph k3(3, {{0, 1}, {1, 2}, {0, 2}});
    double total = 0;
    const int trials = 10000;
    for (int t = 0; t < trials; ++t)
        total += static_cast<double>(
            live_edge_snapshot(k3, 0.5, rng::Stream(rng::mix(11, t))).edge_count());
    CHECK(std::abs(total / trials - 1.5) < 3 * std::sqrt(0.75 / trials));
}

TEST_CASE("cascade equals snapshot reachability under a shared stream") {
    for (int trial = 0; trial < 50; ++trial) {
        auto g = erdos_renyi(15, 0.25, rng::Stream(rng::mix(21, trial)));
        rng::Stream coins(rng::mix(22, trial));
        int seed = trial % 15;
        auto cascade = simulate_ic(g, {seed}, 0.4, 1000, coins);

        auto snap = live_edge_snapshot(g, 0.4, coins);
        std::vector<char> reach(snap.node_count(), 0);
        std::vector<int> queue{seed};
        reach[seed] = 1;
        for (std::size_t h = 0; h < queue.size(); ++h)
            for (int u : snap.neighbors(queue[h]))
                if (!reach[u]) {
                    reach[u] = 1;
                    queue.push_back(u);
                }
        CHECK(cascade.infected.size() == queue.size());
    }
}

TEST_CASE("determinism: identical inputs give identical runs") {
    auto g = erdos_renyi(30, 0.2, rng::Stream(31));
    DiffusionConfig cfg{0.3, 20, 100};
    auto a = estimate_spread(g, {0, 5}, cfg, rng::Stream(77));
    auto b = estimate_spread(g, {0, 5}, cfg, rng::Stream(77));
    CHECK(a.per_run_infected == b.per_run_infected);
}

TEST_CASE("exact spread is monotone and submodular on small graphs") {
    for (int trial = 0; trial < 25; ++trial) {
        auto g = lpim_test::random_small_graph(8, 12, rng::Stream(rng::mix(41, trial)));
        const int n = g.node_count();
        auto sigma = lpim_test::exact_spread_table(g, 0.3);

        int monotone_violations = 0;
        for (std::uint32_t s = 1; s < (std::uint32_t(1) << n); ++s)
            for (int v = 0; v < n; ++v) {
                if (s & (std::uint32_t(1) << v)) continue;
                if (sigma[s | (std::uint32_t(1) << v)] < sigma[s] - 1e-12)
                    ++monotone_violations;
            }
        CHECK(monotone_violations == 0);

        // sigma(A + c) - sigma(A) >= sigma(B + c) - sigma(B) for A subset of B
        int submodular_violations = 0;
        for (std::uint32_t b = 1; b < (std::uint32_t(1) << n); ++b) {
            for (std::uint32_t a = b;; a = (a - 1) & b) {  // subsets of b
                for (int c = 0; c < n; ++c) {
                    std::uint32_t cm = std::uint32_t(1) << c;
                    if (b & cm) continue;
                    if (sigma[a | cm] - sigma[a] < sigma[b | cm] - sigma[b] - 1e-9)
                        ++submodular_violations;
                }
                if (a == 0) break;
            }
        }
        CHECK(submodular_violations == 0);
    }
}

TEST_CASE("monte carlo mean tracks the exact oracle") {
    auto g = lpim_test::random_small_graph(7, 10, rng::Stream(1234));
    double exact = lpim_test::exact_spread(g, {0}, 0.35);
    DiffusionConfig cfg{0.35, 20000, 100};
    auto est = estimate_spread(g, {0}, cfg, rng::Stream(4321));
    double run_sd = static_cast<double>(g.node_count());  // crude upper bound
    CHECK(std::abs(est.mean - exact) < 3 * run_sd / std::sqrt(20000.0));
}
