#include <cmath>
#include <set>

#include "doctest.h"
#include "testutil.hpp"
#include "timax/baselines.hpp"
#include "timax/synthetic.hpp"

using namespace timax;

namespace {

TemporalNetwork path5() {
    return test::make_net(5, {{0, 1, 1}, {1, 2, 2}, {2, 3, 3}, {3, 4, 4}});
}

}  // namespace

TEST_CASE("degree discount") {
    BaselineParams bp;

    SUBCASE("star hub wins at k=1") {
        const auto net = test::make_net(
            5, {{0, 1, 1}, {0, 2, 2}, {0, 3, 3}, {0, 4, 4}});
        CHECK(dynamic_degree_discount(net, 1, bp) == std::vector<NodeId>{0});
    }

    SUBCASE("five-node path update trace") {
        // Degrees 1,2,2,2,1; the first degree-2 node (id 1) is picked, its
        // neighbors drop to -1 and -0.01, so node 3 follows.
        DegreeDiscountTrace trace;
        const auto seeds = dynamic_degree_discount(path5(), 2, bp, &trace);
        CHECK(seeds == std::vector<NodeId>{1, 3});
        REQUIRE(trace.steps.size() == 2);
        CHECK(trace.steps[0].picked == 1);
        REQUIRE(trace.steps[0].updates.size() == 2);
        CHECK(trace.steps[0].updates[0].neighbor == 0);
        CHECK(trace.steps[0].updates[0].delta ==
              doctest::Approx(-1.0).epsilon(1e-15));
        CHECK(trace.steps[0].updates[1].neighbor == 2);
        CHECK(trace.steps[0].updates[1].delta ==
              doctest::Approx(-0.01).epsilon(1e-12));
        CHECK(trace.steps[1].picked == 3);
    }

    SUBCASE("alpha zero reduces to classic degree discount") {
        rng::SplitMix rng(71);
        BaselineParams zero = bp;
        zero.susceptibility_alpha = 0.0;
        for (int trial = 0; trial < 20; ++trial) {
            const auto inst = test::random_instance(rng);
            const std::size_t n = inst.net.node_count();
            const std::size_t k = 1 + rng.below(std::min<std::size_t>(n, 4));
            const auto got = dynamic_degree_discount(inst.net, k, zero);

            // independent classic degree discount: delta = D - 2*tau
            const auto agg = aggregate(inst.net);
            std::vector<std::set<NodeId>> nbr(n);
            for (const auto& [a, b] : agg.edges) {
                nbr[a].insert(b);
                nbr[b].insert(a);
            }
            std::vector<double> delta(n);
            std::vector<int> tau(n, 0);
            std::vector<bool> used(n, false);
            for (NodeId v = 0; v < n; ++v)
                delta[v] = static_cast<double>(nbr[v].size());
            std::vector<NodeId> expect;
            for (std::size_t round = 0; round < k; ++round) {
                NodeId best = 0;
                bool have = false;
                for (NodeId v = 0; v < n; ++v)
                    if (!used[v] && (!have || delta[v] > delta[best])) {
                        best = v;
                        have = true;
                    }
                used[best] = true;
                expect.push_back(best);
                for (NodeId q : nbr[best])
                    if (!used[q]) {
                        ++tau[q];
                        delta[q] = static_cast<double>(nbr[q].size()) - 2.0 * tau[q];
                    }
            }
            std::sort(expect.begin(), expect.end());
            CHECK(got == expect);
        }
    }
}

TEST_CASE("reachability sampling seeder") {
    BaselineParams bp;

    SUBCASE("keeping all edges favors the large component") {
        // components {0..4} (ring) and {5,6}
        const auto net = test::make_net(7, {{0, 1, 1},
                                            {1, 2, 2},
                                            {2, 3, 3},
                                            {3, 4, 4},
                                            {4, 0, 5},
                                            {5, 6, 6}});
        bp.bt_lambda = 1.0;
        bp.bt_gamma = 200;
        const auto seeds = borgs_tang(net, 1, bp, 99);
        // every node of the big component shares the same frequency, so the
        // tie-break selects its smallest id
        CHECK(seeds == std::vector<NodeId>{0});
    }

    SUBCASE("dropping all edges reduces frequencies to pick counts") {
        const auto net = test::make_net(4, {{0, 1, 1}, {2, 3, 2}});
        bp.bt_lambda = 0.0;
        bp.bt_gamma = 50;
        const auto seeds = borgs_tang(net, 2, bp, 5);
        CHECK(seeds.size() == 2);
        const auto again = borgs_tang(net, 2, bp, 5);
        CHECK(seeds == again);
    }

    SUBCASE("deterministic for a fixed seed, sensitive to the seed") {
        const auto net = generate_synthetic_ba(30, 120, 7);
        bp.bt_lambda = 0.3;
        bp.bt_gamma = 100;
        const auto a = borgs_tang(net, 3, bp, 1);
        const auto b = borgs_tang(net, 3, bp, 1);
        CHECK(a == b);
        CHECK(a.size() == 3);
        CHECK(std::set<NodeId>(a.begin(), a.end()).size() == 3);
    }
}

TEST_CASE("collective influence index") {
    BaselineParams bp;

    SUBCASE("isolated nodes score zero and rank last") {
        const auto net = test::make_net(4, {{0, 1, 1}, {1, 2, 2}});
        bp.ci_radius = 10;
        const auto seeds = dynamic_ci(net, 3, bp, 1);
        CHECK(std::find(seeds.begin(), seeds.end(), 3) == seeds.end());
    }

    SUBCASE("star index equals squared degree") {
        // all leaf contacts at the same timestamp: leaves reach only the hub
        const auto net = test::make_net(
            5, {{0, 1, 3}, {0, 2, 3}, {0, 3, 3}, {0, 4, 3}});
        bp.ci_radius = 10;
        const auto seeds = dynamic_ci(net, 1, bp, 1);
        CHECK(seeds == std::vector<NodeId>{0});
        // hub: Gamma=4, ball = sum of leaf degrees = 4 -> 16
        // leaf: Gamma=1, ball = hub degree = 4 -> 4
    }

    SUBCASE("radius saturation covers full temporal reachability") {
        const auto net = test::make_net(4, {{0, 1, 1}, {1, 2, 2}, {2, 3, 3}});
        bp.ci_radius = 1000;
        const auto a = dynamic_ci(net, 2, bp, 1);
        CHECK(a.size() == 2);
    }
}

TEST_CASE("mean-field estimate") {
    BaselineParams bp;

    SUBCASE("zero infection rate stays at the seed fraction") {
        const auto net = test::make_net(4, {{0, 1, 0}, {1, 2, 1}, {2, 3, 2}});
        const auto series = build_snapshots(net, 1);
        bp.inmfa_lambda = 0.0;
        bp.inmfa_mu = 0.0;
        CHECK(inmfa_estimate(series, {0}, bp, net.full_horizon()) ==
              doctest::Approx(0.25).epsilon(1e-12));
    }

    SUBCASE("one step over a single edge") {
        const auto net = test::make_net(2, {{0, 1, 0}});
        const auto series = build_snapshots(net, 1);
        bp.inmfa_lambda = 0.5;
        bp.inmfa_mu = 0.0;
        CHECK(inmfa_estimate(series, {0}, bp, net.full_horizon()) ==
              doctest::Approx(0.75).epsilon(1e-12));
    }

    SUBCASE("certain infection on a repeated connected snapshot fills up") {
        std::vector<std::tuple<NodeId, NodeId, Timestamp>> triples;
        for (Timestamp t = 0; t < 12; ++t) {
            triples.emplace_back(0, 1, t);
            triples.emplace_back(1, 2, t);
            triples.emplace_back(2, 3, t);
        }
        const auto net = test::make_net(4, triples);
        const auto series = build_snapshots(net, 1);
        bp.inmfa_lambda = 1.0;
        bp.inmfa_mu = 0.0;
        double prev = 0.0;
        for (std::size_t w = 1; w <= series.size(); ++w) {
            Horizon h{0, static_cast<Timestamp>(w)};
            const double o = inmfa_estimate(series, {0}, bp, h);
            CHECK(o >= prev - 1e-12);
            prev = o;
        }
        CHECK(prev == doctest::Approx(1.0).epsilon(1e-9));
    }

    SUBCASE("states stay a probability simplex") {
        rng::SplitMix rng(73);
        for (int trial = 0; trial < 10; ++trial) {
            const auto inst = test::random_instance(rng);
            const auto series = build_snapshots(inst.net, 1);
            bp.inmfa_lambda = rng.unit();
            bp.inmfa_mu = rng.unit();
            const double o =
                inmfa_estimate(series, {0}, bp, inst.net.full_horizon());
            CHECK(o >= 0.0);
            CHECK(o <= 1.0 + 1e-9);
        }
    }
}

TEST_CASE("mean-field seeder") {
    BaselineParams bp;
    bp.inmfa_lambda = 0.4;
    bp.inmfa_mu = 0.1;

    SUBCASE("star hub first") {
        const auto net = test::make_net(
            5, {{0, 1, 0}, {0, 2, 0}, {0, 3, 0}, {0, 4, 0}, {0, 1, 1}});
        const auto series = build_snapshots(net, 1);
        CHECK(inmfa_seed(series, 1, bp, net.full_horizon()) ==
              std::vector<NodeId>{0});
    }
    SUBCASE("zero rate ties resolve lexicographically") {
        const auto net = test::make_net(4, {{0, 1, 0}, {2, 3, 1}});
        const auto series = build_snapshots(net, 1);
        BaselineParams zero = bp;
        zero.inmfa_lambda = 0.0;
        CHECK(inmfa_seed(series, 2, zero, net.full_horizon()) ==
              std::vector<NodeId>{0, 1});
    }
    SUBCASE("k equal to node count returns everyone") {
        const auto net = test::make_net(3, {{0, 1, 0}, {1, 2, 1}});
        const auto series = build_snapshots(net, 1);
        CHECK(inmfa_seed(series, 3, bp, net.full_horizon()) ==
              std::vector<NodeId>{0, 1, 2});
    }
}

TEST_CASE("neighborhood entropy") {
    SUBCASE("constant neighborhood has zero entropy") {
        std::vector<std::tuple<NodeId, NodeId, Timestamp>> triples;
        for (Timestamp t = 0; t < 5; ++t) triples.emplace_back(0, 1, t);
        const auto series = build_snapshots(test::make_net(2, triples), 1);
        const auto h = neighborhood_entropy(series);
        CHECK(h[0] == 0.0);
        CHECK(h[1] == 0.0);
    }

    SUBCASE("four distinct transitions give log 4") {
        // node 0 meets a fresh partner every window
        const auto net = test::make_net(
            6, {{0, 1, 0}, {0, 2, 1}, {0, 3, 2}, {0, 4, 3}, {0, 5, 4}});
        const auto series = build_snapshots(net, 1);
        const auto h = neighborhood_entropy(series);
        CHECK(h[0] == doctest::Approx(std::log(4.0)).epsilon(1e-12));
    }

    SUBCASE("two-of-three repeated configuration") {
        // transitions for node 0: (1->1), (1->1), (1->2): probabilities 2/3, 1/3
        const auto net = test::make_net(
            3, {{0, 1, 0}, {0, 1, 1}, {0, 1, 2}, {0, 1, 3}, {0, 2, 3}});
        const auto series = build_snapshots(net, 1);
        const auto h = neighborhood_entropy(series);
        const double expect =
            -(2.0 / 3.0 * std::log(2.0 / 3.0) + 1.0 / 3.0 * std::log(1.0 / 3.0));
        CHECK(h[0] == doctest::Approx(expect).epsilon(1e-12));
    }

    SUBCASE("single snapshot is rejected") {
        const auto series = build_snapshots(test::make_net(2, {{0, 1, 0}}), 5);
        CHECK_THROWS_AS(entropy_rank(series, 1), ArgumentError);
    }

    SUBCASE("ranking is permutation equivariant") {
        rng::SplitMix rng(79);
        const auto inst = test::random_instance(rng);
        const std::size_t n = inst.net.node_count();
        const auto series = build_snapshots(inst.net, 2);
        if (series.size() < 2) return;
        const auto base = neighborhood_entropy(series);

        // relabel v -> (v + 1) mod n
        std::vector<std::tuple<NodeId, NodeId, Timestamp>> relabeled;
        for (const auto& e : inst.net.events())
            relabeled.emplace_back(static_cast<NodeId>((e.source + 1) % n),
                                   static_cast<NodeId>((e.target + 1) % n),
                                   e.time);
        const auto permuted_series =
            build_snapshots(test::make_net(n, relabeled), 2);
        const auto permuted = neighborhood_entropy(permuted_series);
        for (NodeId v = 0; v < n; ++v)
            CHECK(permuted[(v + 1) % n] == doctest::Approx(base[v]).epsilon(1e-12));
    }
}

TEST_CASE("every baseline returns k distinct in-range nodes") {
    rng::SplitMix rng(83);
    BaselineParams bp;
    for (int trial = 0; trial < 10; ++trial) {
        const auto inst = test::random_instance(rng);
        const std::size_t n = inst.net.node_count();
        const std::size_t k = 1 + rng.below(n);
        const auto series = build_snapshots(inst.net, 1);

        const std::vector<std::vector<NodeId>> results = {
            dynamic_degree_discount(inst.net, k, bp),
            borgs_tang(inst.net, k, bp, trial),
            dynamic_ci(inst.net, k, bp, 1),
            inmfa_seed(series, k, bp, inst.net.full_horizon()),
            series.size() >= 2 ? entropy_rank(series, k)
                               : std::vector<NodeId>(k, 0)};
        for (const auto& seeds : results) {
            if (&seeds == &results.back() && series.size() < 2) continue;
            CHECK(seeds.size() == k);
            std::set<NodeId> uniq(seeds.begin(), seeds.end());
            CHECK(uniq.size() == k);
            for (NodeId v : seeds) CHECK(v < n);
        }
    }
}
