#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "testutil.hpp"
#include "timax/counterexample.hpp"
#include "timax/experiment.hpp"
#include "timax/synthetic.hpp"

using namespace timax;
namespace fs = std::filesystem;

TEST_CASE("synthetic generator") {
    SUBCASE("two nodes force the single edge") {
        const auto net = generate_synthetic_ba(2, 1, 5);
        REQUIRE(net.events().size() == 1);
        CHECK(net.events()[0].source == 0);
        CHECK(net.events()[0].target == 1);
    }
    SUBCASE("argument guards") {
        CHECK_THROWS_AS(generate_synthetic_ba(1, 5, 1), ArgumentError);
        CHECK_THROWS_AS(generate_synthetic_ba(10, 3, 1), ArgumentError);
    }
    SUBCASE("deterministic per seed") {
        const auto a = generate_synthetic_ba(50, 400, 9);
        const auto b = generate_synthetic_ba(50, 400, 9);
        CHECK(a.events() == b.events());
    }
    SUBCASE("strictly increasing integer times") {
        const auto net = generate_synthetic_ba(20, 100, 3);
        for (std::size_t i = 1; i < net.events().size(); ++i)
            CHECK(net.events()[i].time > net.events()[i - 1].time);
    }
    SUBCASE("degree distribution is heavy tailed") {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const auto net = generate_synthetic_ba(10000, 30000, seed);
            const auto agg = aggregate(net);
            std::vector<std::size_t> degree(net.node_count(), 0);
            for (const auto& [a, b] : agg.edges) {
                ++degree[a];
                ++degree[b];
            }
            std::sort(degree.begin(), degree.end());
            const std::size_t median = degree[degree.size() / 2];
            const std::size_t max = degree.back();
            CHECK(max >= 5 * median);
        }
    }
}

namespace {

ExperimentSpec small_spec() {
    ExperimentSpec spec;
    spec.dataset = "ba:40:300";
    spec.method = "ours";
    spec.k_values = {2, 3};
    spec.eta_values = {0.0, 0.25};
    spec.diffusion.p0 = 0.2;
    spec.diffusion.reinforce_alpha = 0.8;
    spec.diffusion.scale_beta = 1.0;
    spec.diffusion.decay_gamma = 0.0;
    spec.diffusion.tau = 1000000;
    spec.mc_realizations = 60;
    spec.rng_seed = 17;
    spec.window_width = 20;
    spec.min_iter = 3;
    return spec;
}

}  // namespace

TEST_CASE("experiment grid") {
    SUBCASE("zero probability gives exact percentages") {
        auto spec = small_spec();
        spec.diffusion.p0 = 0.0;
        const auto rows = run_experiment(spec);
        REQUIRE(rows.size() == 4);
        for (const auto& r : rows) {
            CHECK(r.spread_pct ==
                  doctest::Approx(100.0 * r.k / 40.0).epsilon(1e-12));
            CHECK(r.spread_stderr == 0.0);
        }
    }

    SUBCASE("ours matches forward influence under shared randomness") {
        auto ours = small_spec();
        const auto rows_ours = run_experiment(ours);
        auto fwd = ours;
        fwd.method = "forward_influence";
        const auto rows_fwd = run_experiment(fwd);
        REQUIRE(rows_ours.size() == rows_fwd.size());
        for (std::size_t i = 0; i < rows_ours.size(); ++i) {
            const double tol =
                3.0 * (rows_ours[i].spread_stderr + rows_fwd[i].spread_stderr);
            CHECK(std::abs(rows_ours[i].spread_pct - rows_fwd[i].spread_pct) <=
                  tol + 1e-9);
            CHECK(rows_ours[i].evaluations <= rows_fwd[i].evaluations);
        }
    }

    SUBCASE("unknown methods list the registry") {
        auto spec = small_spec();
        spec.method = "zzz";
        CHECK_THROWS_WITH_AS(run_experiment(spec), doctest::Contains("ours"),
                             ArgumentError);
    }

    SUBCASE("identical specs produce byte-identical CSV files") {
        const auto spec = small_spec();
        const auto p1 = fs::temp_directory_path() / "timax_rows1.csv";
        const auto p2 = fs::temp_directory_path() / "timax_rows2.csv";
        export_csv(run_experiment(spec), p1);
        export_csv(run_experiment(spec), p2);
        std::ifstream f1(p1, std::ios::binary), f2(p2, std::ios::binary);
        const std::string s1((std::istreambuf_iterator<char>(f1)),
                             std::istreambuf_iterator<char>());
        const std::string s2((std::istreambuf_iterator<char>(f2)),
                             std::istreambuf_iterator<char>());
        CHECK(s1 == s2);
        CHECK(!s1.empty());
    }
}

TEST_CASE("spread is non-decreasing in k within the noise band") {
    auto spec = small_spec();
    spec.k_values = {1, 3, 6};
    spec.eta_values = {0.0};
    spec.mc_realizations = 200;
    const auto rows = run_experiment(spec);
    REQUIRE(rows.size() == 3);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double slack =
            3.0 * (rows[i - 1].spread_stderr + rows[i].spread_stderr);
        CHECK(rows[i].spread_pct >= rows[i - 1].spread_pct - slack);
    }
}

TEST_CASE("shorter schedules evaluate influence faster") {
    // Node-heavy instance so the per-interval work dominates.
    const auto net = generate_synthetic_ba(2000, 10000, 11);
    DiffusionParams p;
    p.p0 = 0.2;
    p.reinforce_alpha = 0.8;
    p.decay_gamma = 0.0;
    p.tau = 1 << 30;
    const Timestamp width = (net.t_max() - net.t_min() + 1 + 63) / 64;

    auto timed = [&](const std::vector<std::size_t>& indices) {
        const auto sched = test::make_schedule(indices, width, net.t_min());
        std::vector<double> times;
        for (int batch = 0; batch < 7; ++batch) {
            const auto t0 = std::chrono::steady_clock::now();
            double sink = 0.0;
            for (int i = 0; i < 20; ++i)
                sink += calc_influence({0, 1, 2}, net, p, sched,
                                       net.full_horizon());
            const auto t1 = std::chrono::steady_clock::now();
            CHECK(sink >= 0.0);
            times.push_back(std::chrono::duration<double>(t1 - t0).count());
        }
        std::sort(times.begin(), times.end());
        return times[times.size() / 2];
    };

    std::vector<std::size_t> full, sparse{0, 32};
    for (std::size_t i = 0; i < 64; ++i) full.push_back(i);
    CHECK(timed(sparse) < timed(full));
}

TEST_CASE("result CSV round trip") {
    const auto path = fs::temp_directory_path() / "timax_roundtrip.csv";

    SUBCASE("empty rows produce a header-only file") {
        export_csv({}, path);
        std::ifstream in(path);
        std::string line;
        std::getline(in, line);
        CHECK(line ==
              "dataset,method,k,eta,spread_pct,spread_stderr,runtime_seconds,"
              "evaluations");
        CHECK(!std::getline(in, line));
    }

    SUBCASE("one row round trips exactly at 6 decimals") {
        ResultRow r;
        r.dataset = "toy";
        r.method = "ours";
        r.k = 7;
        r.eta = 0.625;
        r.spread_pct = 43.75;
        r.spread_stderr = 1.5;
        r.runtime_seconds = 0.0;
        r.evaluations = 99;
        export_csv({r}, path);
        const auto rows = parse_result_csv(path);
        REQUIRE(rows.size() == 1);
        CHECK(rows[0].dataset == r.dataset);
        CHECK(rows[0].method == r.method);
        CHECK(rows[0].k == r.k);
        CHECK(rows[0].eta == r.eta);
        CHECK(rows[0].spread_pct == r.spread_pct);
        CHECK(rows[0].spread_stderr == r.spread_stderr);
        CHECK(rows[0].evaluations == r.evaluations);
    }
}

TEST_CASE("counterexample search") {
    SUBCASE("unbounded windows cannot violate monotonicity") {
        const auto result = find_counterexample(
            1.0, std::numeric_limits<Timestamp>::max() / 4, 6, 4, 3, 1500);
        CHECK(!result.monotonicity.has_value());
        CHECK(!result.submodularity.has_value());
    }
    SUBCASE("window one yields both witnesses") {
        const auto result = find_counterexample(1.0, 1, 8, 5, 3, 50000);
        REQUIRE(result.monotonicity.has_value());
        REQUIRE(result.submodularity.has_value());
        const auto& m = *result.monotonicity;
        CHECK(m.spread_extended + 1 <= m.spread_base);

        // replay the witness against the simulator
        const TemporalNetwork net(m.instance.node_count, m.instance.events,
                                  false);
        auto extended = m.base_set;
        extended.push_back(m.added);
        CHECK(simulate_active_inactive_once(net, m.base_set, 1.0,
                                            m.instance.active_window, 0)
                  .spread() == m.spread_base);
        CHECK(simulate_active_inactive_once(net, extended, 1.0,
                                            m.instance.active_window, 0)
                  .spread() == m.spread_extended);

        const auto text = describe(result);
        CHECK(text.find("monotonicity violation") != std::string::npos);
        CHECK(text.find("submodularity violation") != std::string::npos);
    }
}
