#include "timax/counterexample.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "timax/diffusion.hpp"

namespace timax {

namespace {

class SpreadOracle {
  public:
    SpreadOracle(const TemporalNetwork& net, const ActiveInactiveInstance& inst,
                 std::uint64_t rng_seed)
        : net_(net), inst_(inst), rng_seed_(rng_seed) {}

    std::size_t operator()(std::vector<NodeId> seeds) {
        std::sort(seeds.begin(), seeds.end());
        auto it = memo_.find(seeds);
        if (it != memo_.end()) return it->second;
        const auto r = simulate_active_inactive_once(
            net_, seeds, inst_.activation_prob, inst_.active_window, rng_seed_);
        return memo_.emplace(std::move(seeds), r.spread()).first->second;
    }

  private:
    const TemporalNetwork& net_;
    const ActiveInactiveInstance& inst_;
    std::uint64_t rng_seed_;
    std::map<std::vector<NodeId>, std::size_t> memo_;
};

}  // namespace

CounterexampleSearchResult find_counterexample(double activation_prob,
                                               Timestamp active_window,
                                               std::size_t max_nodes,
                                               std::size_t max_windows,
                                               std::uint64_t rng_seed,
                                               std::size_t budget) {
    if (max_nodes < 3 || max_nodes > 10)
        throw ArgumentError("max_nodes must lie in [3, 10]");
    if (max_windows < 2 || max_windows > 6)
        throw ArgumentError("max_windows must lie in [2, 6]");
    if (active_window < 1) throw ArgumentError("active_window must be >= 1");

    rng::SplitMix rng(rng_seed);
    CounterexampleSearchResult result;

    for (std::size_t trial = 0; trial < budget; ++trial) {
        if (result.monotonicity && result.submodularity) break;
        result.instances_tried = trial + 1;

        const std::size_t n = 3 + rng.below(max_nodes - 2);
        const std::size_t w = 2 + rng.below(max_windows - 1);
        const double density = 0.15 + 0.35 * rng.unit();

        ActiveInactiveInstance inst;
        inst.node_count = n;
        inst.activation_prob = activation_prob;
        inst.active_window = active_window;
        for (Timestamp t = 0; t < static_cast<Timestamp>(w); ++t)
            for (NodeId i = 0; i < n; ++i)
                for (NodeId j = i + 1; j < n; ++j)
                    if (rng.unit() < density) inst.events.push_back({i, j, t});
        if (inst.events.empty()) continue;

        const TemporalNetwork net(n, inst.events, /*directed=*/false);
        SpreadOracle sigma(net, inst, rng::derive(rng_seed, trial));

        if (!result.monotonicity) {
            for (NodeId a = 0; a < n && !result.monotonicity; ++a)
                for (NodeId b = 0; b < n; ++b) {
                    if (b == a) continue;
                    const std::size_t s1 = sigma({a});
                    const std::size_t s2 = sigma({a, b});
                    if (s2 < s1) {
                        result.monotonicity =
                            MonotonicityWitness{inst, {a}, b, s1, s2};
                        break;
                    }
                }
        }
        if (!result.submodularity) {
            for (NodeId a = 0; a < n && !result.submodularity; ++a)
                for (NodeId b = 0; b < n && !result.submodularity; ++b) {
                    if (b == a) continue;
                    for (NodeId x = 0; x < n; ++x) {
                        if (x == a || x == b) continue;
                        const std::size_t sa = sigma({a});
                        const std::size_t sax = sigma({a, x});
                        const std::size_t sb = sigma({a, b});
                        const std::size_t sbx = sigma({a, b, x});
                        const auto gain_small = static_cast<std::int64_t>(sax) -
                                                static_cast<std::int64_t>(sa);
                        const auto gain_large = static_cast<std::int64_t>(sbx) -
                                                static_cast<std::int64_t>(sb);
                        if (gain_small < gain_large) {
                            result.submodularity = SubmodularityWitness{
                                inst, {a}, {a, b}, x, sa, sax, sb, sbx};
                            break;
                        }
                    }
                }
        }
    }
    return result;
}

namespace {

void describe_instance(std::ostringstream& out,
                       const ActiveInactiveInstance& inst) {
    out << "  nodes=" << inst.node_count
        << " activation_prob=" << inst.activation_prob
        << " active_window=" << inst.active_window << "\n  contacts:";
    for (const auto& e : inst.events)
        out << " (" << e.source << ',' << e.target << ",t=" << e.time << ')';
    out << '\n';
}

void describe_set(std::ostringstream& out, const std::vector<NodeId>& s) {
    out << '{';
    for (std::size_t i = 0; i < s.size(); ++i) out << (i ? "," : "") << s[i];
    out << '}';
}

}  // namespace

std::string describe(const CounterexampleSearchResult& result) {
    std::ostringstream out;
    out << "instances tried: " << result.instances_tried << '\n';
    if (result.monotonicity) {
        const auto& m = *result.monotonicity;
        out << "monotonicity violation:\n";
        describe_instance(out, m.instance);
        out << "  sigma(";
        describe_set(out, m.base_set);
        out << ") = " << m.spread_base << "  but adding node " << m.added
            << " gives " << m.spread_extended << '\n';
    } else {
        out << "monotonicity violation: none found\n";
    }
    if (result.submodularity) {
        const auto& s = *result.submodularity;
        out << "submodularity violation:\n";
        describe_instance(out, s.instance);
        out << "  marginal of node " << s.added << " vs ";
        describe_set(out, s.small_set);
        out << ": " << (static_cast<std::int64_t>(s.spread_small_ext) -
                        static_cast<std::int64_t>(s.spread_small));
        out << "  vs ";
        describe_set(out, s.large_set);
        out << ": " << (static_cast<std::int64_t>(s.spread_large_ext) -
                        static_cast<std::int64_t>(s.spread_large))
            << '\n';
    } else {
        out << "submodularity violation: none found\n";
    }
    return out.str();
}

}  // namespace timax
