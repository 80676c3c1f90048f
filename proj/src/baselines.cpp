#include "timax/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_set>

namespace timax {

namespace {

constexpr double kGainEps = 1e-12;

std::vector<std::vector<NodeId>> aggregated_adjacency(const TemporalNetwork& net) {
    const auto agg = aggregate(net);
    std::vector<std::vector<NodeId>> adj(net.node_count());
    for (const auto& [a, b] : agg.edges) {
        adj[a].push_back(b);
        if (!net.directed()) adj[b].push_back(a);
    }
    return adj;
}

void check_k(std::size_t k, std::size_t node_count) {
    if (k < 1 || k > node_count)
        throw ArgumentError("k must lie in [1, node_count]");
}

// Top-k by descending score, ties by ascending node id.
std::vector<NodeId> top_k_by_score(const std::vector<double>& score,
                                   std::size_t k) {
    std::vector<NodeId> order(score.size());
    for (NodeId v = 0; v < score.size(); ++v) order[v] = v;
    std::stable_sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
        if (score[a] != score[b]) return score[a] > score[b];
        return a < b;
    });
    order.resize(k);
    std::sort(order.begin(), order.end());
    return order;
}

}  // namespace

void BaselineParams::validate() const {
    if (!(susceptibility_alpha >= 0.0 && susceptibility_alpha <= 1.0))
        throw ArgumentError("susceptibility_alpha must lie in [0,1]");
    if (!(bt_lambda >= 0.0 && bt_lambda <= 1.0))
        throw ArgumentError("bt_lambda must lie in [0,1]");
    if (ci_radius < 1) throw ArgumentError("ci_radius must be at least 1");
    if (!(inmfa_lambda >= 0.0 && inmfa_lambda <= 1.0))
        throw ArgumentError("inmfa_lambda must lie in [0,1]");
    if (!(inmfa_mu >= 0.0 && inmfa_mu <= 1.0))
        throw ArgumentError("inmfa_mu must lie in [0,1]");
}

std::vector<NodeId> dynamic_degree_discount(const TemporalNetwork& net,
                                            std::size_t k,
                                            const BaselineParams& params,
                                            DegreeDiscountTrace* trace) {
    params.validate();
    check_k(k, net.node_count());
    const auto adj = aggregated_adjacency(net);
    const std::size_t V = net.node_count();
    const double alpha = params.susceptibility_alpha;

    std::vector<double> degree(V), delta(V);
    std::vector<std::size_t> tau(V, 0);
    for (NodeId v = 0; v < V; ++v)
        degree[v] = delta[v] = static_cast<double>(adj[v].size());
    std::vector<char> chosen(V, 0);

    std::vector<NodeId> seeds;
    while (seeds.size() < k) {
        NodeId best = 0;
        bool have = false;
        for (NodeId v = 0; v < V; ++v) {
            if (chosen[v]) continue;
            if (!have || delta[v] > delta[best]) {
                best = v;
                have = true;
            }
        }
        chosen[best] = 1;
        seeds.push_back(best);
        DegreeDiscountTrace::Step step{best, {}};
        for (NodeId q : adj[best]) {
            if (chosen[q]) continue;
            tau[q] += 1;
            const double tq = static_cast<double>(tau[q]);
            delta[q] = degree[q] - 2.0 * tq - (degree[q] - tq) * tq * alpha;
            step.updates.push_back({q, tau[q], delta[q]});
        }
        if (trace) trace->steps.push_back(std::move(step));
    }
    std::sort(seeds.begin(), seeds.end());
    return seeds;
}

std::vector<NodeId> borgs_tang(const TemporalNetwork& net, std::size_t k,
                               const BaselineParams& params,
                               std::uint64_t rng_seed) {
    params.validate();
    check_k(k, net.node_count());
    const std::size_t V = net.node_count();
    const std::size_t gamma = params.bt_gamma ? params.bt_gamma : 10 * V;

    // Aggregated adjacency with edge ids so each sample keeps or drops a
    // whole edge, not each traversal direction independently.
    const auto agg = aggregate(net);
    std::vector<std::vector<std::pair<NodeId, std::size_t>>> adj(V);
    for (std::size_t e = 0; e < agg.edges.size(); ++e) {
        const auto& [a, b] = agg.edges[e];
        adj[a].push_back({b, e});
        if (!net.directed()) adj[b].push_back({a, e});
    }

    rng::SplitMix rng(rng_seed);
    std::vector<std::uint64_t> frequency(V, 0);
    std::vector<std::int8_t> kept(agg.edges.size());
    std::vector<char> visited(V);
    std::vector<NodeId> stack;

    for (std::size_t s = 0; s < gamma; ++s) {
        const NodeId w = static_cast<NodeId>(rng.below(V));
        std::fill(kept.begin(), kept.end(), -1);  // -1 = undrawn
        std::fill(visited.begin(), visited.end(), 0);
        stack.assign(1, w);
        visited[w] = 1;
        while (!stack.empty()) {
            const NodeId u = stack.back();
            stack.pop_back();
            ++frequency[u];
            for (const auto& [v, e] : adj[u]) {
                if (kept[e] < 0) kept[e] = rng.unit() < params.bt_lambda ? 1 : 0;
                if (kept[e] && !visited[v]) {
                    visited[v] = 1;
                    stack.push_back(v);
                }
            }
        }
    }

    std::vector<NodeId> seeds;
    std::vector<char> taken(V, 0);
    while (seeds.size() < k) {
        NodeId best = 0;
        bool have = false;
        for (NodeId v = 0; v < V; ++v) {
            if (taken[v]) continue;
            if (!have || frequency[v] > frequency[best]) {
                best = v;
                have = true;
            }
        }
        taken[best] = 1;
        seeds.push_back(best);
    }
    std::sort(seeds.begin(), seeds.end());
    return seeds;
}

std::vector<NodeId> dynamic_ci(const TemporalNetwork& net, std::size_t k,
                               const BaselineParams& params,
                               Timestamp window_width) {
    params.validate();
    check_k(k, net.node_count());
    if (window_width <= 0) throw ArgumentError("window_width must be positive");
    const std::size_t V = net.node_count();

    // Dynamic degree: distinct contact partners over the whole stream.
    const auto adj = aggregated_adjacency(net);
    std::vector<double> dyn_degree(V);
    for (NodeId v = 0; v < V; ++v) dyn_degree[v] = static_cast<double>(adj[v].size());

    const Timestamp start = net.t_min();
    const Timestamp deadline =
        start + static_cast<Timestamp>(params.ci_radius) * window_width;

    std::vector<double> index(V, 0.0);
    for (NodeId x = 0; x < V; ++x) {
        if (adj[x].empty()) continue;  // isolated: index stays 0
        const auto arrival = earliest_arrival(net, x, start);
        double ball = 0.0;
        for (NodeId y = 0; y < V; ++y) {
            if (y == x || arrival[y] == kNeverReached) continue;
            if (arrival[y] <= deadline) ball += dyn_degree[y];
        }
        index[x] = dyn_degree[x] * ball;
    }
    return top_k_by_score(index, k);
}

SeedSelection forward_influence(const TemporalNetwork& net,
                                const DiffusionParams& params,
                                const SampleSchedule& schedule,
                                const SelectionConfig& config,
                                std::size_t max_sweeps) {
    config.validate(net.node_count());
    if (max_sweeps < 1) throw ArgumentError("max_sweeps must be at least 1");
    const std::size_t k = config.k;

    std::size_t evaluations = 0;
    auto evaluate = [&](const std::vector<NodeId>& seeds) {
        ++evaluations;
        return calc_influence(seeds, net, params, schedule, config.horizon);
    };

    auto pool = candidate_pool(net, schedule, config.horizon);
    if (pool.size() < k) {
        pool.resize(net.node_count());
        for (NodeId v = 0; v < net.node_count(); ++v) pool[v] = v;
    }
    if (pool.empty()) throw ArgumentError("empty candidate pool");

    std::vector<std::pair<NodeId, double>> ranking;
    for (NodeId v : pool) ranking.emplace_back(v, evaluate({v}));
    std::stable_sort(ranking.begin(), ranking.end(),
                     [](const auto& a, const auto& b) {
                         if (a.second != b.second) return a.second > b.second;
                         return a.first < b.first;
                     });

    std::vector<NodeId> current;
    for (std::size_t i = 0; i < k; ++i) current.push_back(ranking[i].first);
    std::sort(current.begin(), current.end());
    std::vector<char> in_set(net.node_count(), 0);
    for (NodeId v : current) in_set[v] = 1;

    // Same swap rule and candidate order as the lazy variant; a sweep covers
    // every candidate with no patience cutoff.
    double base = evaluate(current);
    for (std::size_t sweep = 0; sweep < max_sweeps; ++sweep) {
        bool swapped = false;
        for (const auto& entry : ranking) {
            const NodeId candidate = entry.first;
            if (in_set[candidate]) continue;
            double best_gain = 0.0;
            double best_value = 0.0;
            NodeId best_out = 0;
            bool found = false;
            for (NodeId out : current) {
                std::vector<NodeId> trial;
                trial.reserve(k);
                for (NodeId v : current)
                    if (v != out) trial.push_back(v);
                trial.push_back(candidate);
                std::sort(trial.begin(), trial.end());
                const double value = evaluate(trial);
                const double gain = value - base;
                if (gain > best_gain) {
                    best_gain = gain;
                    best_value = value;
                    best_out = out;
                    found = true;
                }
            }
            if (found && best_gain > kGainEps) {
                in_set[best_out] = 0;
                in_set[candidate] = 1;
                current.erase(
                    std::find(current.begin(), current.end(), best_out));
                current.push_back(candidate);
                std::sort(current.begin(), current.end());
                base = best_value;
                swapped = true;
            }
        }
        if (!swapped) break;
    }

    SeedSelection out;
    out.seeds = std::move(current);
    out.objective = base;
    out.evaluations = evaluations;
    return out;
}

double inmfa_estimate(const SnapshotSeries& series,
                      const std::vector<NodeId>& seeds,
                      const BaselineParams& params, Horizon horizon) {
    params.validate();
    const std::size_t V = series.node_count();
    if (V == 0) throw ArgumentError("empty snapshot series");
    if (seeds.empty()) throw ArgumentError("seed set must be nonempty");

    std::vector<double> I(V, 0.0), R(V, 0.0);
    for (NodeId s : seeds) {
        if (s >= V) throw ArgumentError("seed node out of range");
        I[s] = 1.0;
    }

    const double lambda = params.inmfa_lambda;
    const double mu = params.inmfa_mu;
    std::vector<double> product(V, 1.0);
    std::vector<NodeId> touched;

    for (std::size_t w = 0; w < series.size(); ++w) {
        const auto& snap = series[w];
        if (snap.label < horizon.start || snap.label >= horizon.end) continue;
        touched.clear();
        auto expose = [&](NodeId from, NodeId to) {
            product[to] *= 1.0 - lambda * I[from];
            touched.push_back(to);
        };
        for (const auto& [a, b] : snap.edges) {
            expose(a, b);
            if (!series.directed()) expose(b, a);
        }
        // Synchronous step: exposures above read the pre-step I values, and
        // product[v] == 1 for unexposed nodes collapses the update to plain
        // recovery.
        for (NodeId v = 0; v < V; ++v) {
            const double S = std::max(0.0, 1.0 - I[v] - R[v]);
            const double I_new = (1.0 - mu) * I[v] + S * (1.0 - product[v]);
            R[v] += mu * I[v];
            I[v] = I_new;
        }
        for (NodeId v : touched) product[v] = 1.0;
    }

    double total = 0.0;
    for (NodeId v = 0; v < V; ++v) total += I[v] + R[v];
    return total / static_cast<double>(V);
}

std::vector<NodeId> inmfa_seed(const SnapshotSeries& series, std::size_t k,
                               const BaselineParams& params, Horizon horizon) {
    params.validate();
    const std::size_t V = series.node_count();
    check_k(k, V);

    std::vector<NodeId> seeds;
    std::vector<char> taken(V, 0);
    while (seeds.size() < k) {
        NodeId best = 0;
        double best_value = -1.0;
        for (NodeId v = 0; v < V; ++v) {
            if (taken[v]) continue;
            std::vector<NodeId> trial(seeds);
            trial.push_back(v);
            const double value = inmfa_estimate(series, trial, params, horizon);
            if (value > best_value) {
                best_value = value;
                best = v;
            }
        }
        taken[best] = 1;
        seeds.push_back(best);
    }
    std::sort(seeds.begin(), seeds.end());
    return seeds;
}

std::vector<double> neighborhood_entropy(const SnapshotSeries& series) {
    if (series.size() < 2)
        throw ArgumentError("entropy ranking needs at least two snapshots");
    const std::size_t V = series.node_count();
    const std::size_t pairs = series.size() - 1;

    // Neighbor sets per node per window.
    std::vector<std::vector<std::vector<NodeId>>> nb(
        series.size(), std::vector<std::vector<NodeId>>(V));
    for (std::size_t w = 0; w < series.size(); ++w)
        for (const auto& [a, b] : series[w].edges) {
            nb[w][a].push_back(b);
            nb[w][b].push_back(a);
        }
    for (auto& window : nb)
        for (auto& list : window) std::sort(list.begin(), list.end());

    constexpr NodeId kSep = std::numeric_limits<NodeId>::max();
    std::vector<double> entropy(V, 0.0);
    for (NodeId v = 0; v < V; ++v) {
        // Configuration observed at pair (n, n+1): the transition between the
        // node's neighbor sets in the two windows.
        std::map<std::vector<NodeId>, std::size_t> counts;
        for (std::size_t n = 0; n + 1 < series.size(); ++n) {
            std::vector<NodeId> key(nb[n][v]);
            key.push_back(kSep);
            key.insert(key.end(), nb[n + 1][v].begin(), nb[n + 1][v].end());
            ++counts[key];
        }
        double h = 0.0;
        for (const auto& [key, c] : counts) {
            const double p = static_cast<double>(c) / static_cast<double>(pairs);
            h -= p * std::log(p);
        }
        entropy[v] = h;
    }
    return entropy;
}

std::vector<NodeId> entropy_rank(const SnapshotSeries& series, std::size_t k) {
    check_k(k, series.node_count());
    return top_k_by_score(neighborhood_entropy(series), k);
}

}  // namespace timax
