#include "timax/seeding.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <limits>

namespace timax {

namespace {

// Swaps must clear this margin; blocks oscillation on float noise.
constexpr double kGainEps = 1e-12;

// Counts every influence evaluation made through it.
class Evaluator {
  public:
    Evaluator(const TemporalNetwork& net, const DiffusionParams& params,
              const SampleSchedule& schedule, Horizon horizon)
        : net_(net), params_(params), schedule_(schedule), horizon_(horizon) {}

    double operator()(const std::vector<NodeId>& seeds) {
        ++calls_;
        return calc_influence(seeds, net_, params_, schedule_, horizon_);
    }

    std::size_t calls() const { return calls_; }

  private:
    const TemporalNetwork& net_;
    const DiffusionParams& params_;
    const SampleSchedule& schedule_;
    Horizon horizon_;
    std::size_t calls_ = 0;
};

std::vector<NodeId> pool_with_fallback(const TemporalNetwork& net,
                                       const SampleSchedule& schedule,
                                       Horizon horizon, std::size_t k) {
    auto pool = candidate_pool(net, schedule, horizon);
    if (pool.size() < k) {
        pool.resize(net.node_count());
        for (NodeId v = 0; v < net.node_count(); ++v) pool[v] = v;
    }
    if (pool.empty()) throw ArgumentError("empty candidate pool");
    return pool;
}

std::vector<std::pair<NodeId, double>> rank_singletons(
    Evaluator& f, const std::vector<NodeId>& pool) {
    std::vector<std::pair<NodeId, double>> ranking;
    ranking.reserve(pool.size());
    for (NodeId v : pool) ranking.emplace_back(v, f({v}));
    std::stable_sort(ranking.begin(), ranking.end(),
                     [](const auto& a, const auto& b) {
                         if (a.second != b.second) return a.second > b.second;
                         return a.first < b.first;
                     });
    return ranking;
}

SeedSelection lazy_forward_core(Evaluator& f,
                                const std::vector<std::pair<NodeId, double>>& ranking,
                                const SelectionConfig& config) {
    const std::size_t k = config.k;
    std::vector<NodeId> current;
    for (std::size_t i = 0; i < k; ++i) current.push_back(ranking[i].first);
    std::sort(current.begin(), current.end());

    double base = f(current);
    // The priority queue never re-keys or re-inserts, so extraction order is
    // exactly the remaining ranking order.
    std::size_t no_replace = 0;
    for (std::size_t pos = k;
         pos < ranking.size() && no_replace < config.min_iter; ++pos) {
        const NodeId candidate = ranking[pos].first;
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
            const double value = f(trial);
            const double gain = value - base;
            if (gain > best_gain) {
                best_gain = gain;
                best_value = value;
                best_out = out;
                found = true;
            }
        }
        if (found && best_gain > kGainEps) {
            current.erase(std::find(current.begin(), current.end(), best_out));
            current.push_back(candidate);
            std::sort(current.begin(), current.end());
            base = best_value;
            no_replace = 0;
        } else {
            ++no_replace;
        }
    }
    SeedSelection out;
    out.seeds = std::move(current);
    out.objective = base;
    out.evaluations = f.calls();
    return out;
}

}  // namespace

void SelectionConfig::validate(std::size_t node_count) const {
    if (k < 1) throw ArgumentError("k must be at least 1");
    if (k > node_count) throw ArgumentError("k exceeds node count");
    if (min_iter < 1) throw ArgumentError("min_iter must be at least 1");
    if (!(eta >= 0.0 && eta <= 1.0)) throw ArgumentError("eta must lie in [0,1]");
    if (window_width <= 0) throw ArgumentError("window_width must be positive");
    weights.validate();
}

std::vector<NodeId> candidate_pool(const TemporalNetwork& net,
                                   const SampleSchedule& schedule,
                                   Horizon horizon) {
    if (schedule.selected.empty())
        throw ArgumentError("schedule must contain at least one timestamp");
    const Timestamp start = std::max(horizon.start, net.t_min());
    Timestamp first_end = horizon.end;
    // End of the first interval: the earliest schedule boundary past start,
    // or the horizon end when there is none.
    for (std::size_t i = 0; i < schedule.selected.size(); ++i) {
        const Timestamp b = schedule.boundary(i);
        if (b > start && b < horizon.end) {
            first_end = b;
            break;
        }
    }
    std::vector<char> seen(net.node_count(), 0);
    const auto& events = net.events();
    for (std::size_t i = net.first_event_at_or_after(start);
         i < events.size() && events[i].time < first_end; ++i) {
        seen[events[i].source] = 1;
        seen[events[i].target] = 1;
    }
    std::vector<NodeId> pool;
    for (NodeId v = 0; v < net.node_count(); ++v)
        if (seen[v]) pool.push_back(v);
    return pool;
}

std::vector<std::pair<NodeId, double>> top_singletons(
    const TemporalNetwork& net, const DiffusionParams& params,
    const SampleSchedule& schedule, Horizon horizon, std::size_t k) {
    if (k < 1) throw ArgumentError("k must be at least 1");
    Evaluator f(net, params, schedule, horizon);
    const auto pool = pool_with_fallback(net, schedule, horizon, k);
    return rank_singletons(f, pool);
}

SeedSelection lazy_forward_influence(const TemporalNetwork& net,
                                     const DiffusionParams& params,
                                     const SampleSchedule& schedule,
                                     const SelectionConfig& config) {
    config.validate(net.node_count());
    Evaluator f(net, params, schedule, config.horizon);
    const auto pool = pool_with_fallback(net, schedule, config.horizon, config.k);
    const auto ranking = rank_singletons(f, pool);
    return lazy_forward_core(f, ranking, config);
}

SeedSelection temporal_influence_maximization(const TemporalNetwork& net,
                                              const DiffusionParams& params,
                                              const SelectionConfig& config) {
    config.validate(net.node_count());
    const auto series = build_snapshots(net, config.window_width);
    const auto schedule = sample_timestamps(series, config.eta, config.weights);
    if (schedule.selected.empty())
        throw ArgumentError("sampling selected no timestamps; lower eta");

    Evaluator f(net, params, schedule, config.horizon);
    const auto pool =
        pool_with_fallback(net, schedule, config.horizon, config.k);
    const auto ranking = rank_singletons(f, pool);  // cached for the refinement
    SeedSelection selection = lazy_forward_core(f, ranking, config);
    selection.objective = f(selection.seeds);  // final evaluation on the result
    selection.evaluations = f.calls();
    return selection;
}

SeedSelection brute_force_optimal(const TemporalNetwork& net,
                                  const DiffusionParams& params,
                                  const SampleSchedule& schedule, Horizon horizon,
                                  std::size_t k) {
    const std::size_t n = net.node_count();
    if (k < 1 || k > n) throw ArgumentError("k must lie in [1, node_count]");

    double subsets = 1.0;
    for (std::size_t i = 0; i < k; ++i)
        subsets = subsets * static_cast<double>(n - i) / static_cast<double>(i + 1);
    if (subsets > 1e6)
        throw GuardError("refusing exhaustive search over more than 1e6 subsets");

    Evaluator f(net, params, schedule, horizon);
    std::vector<NodeId> subset(k);
    for (std::size_t i = 0; i < k; ++i) subset[i] = static_cast<NodeId>(i);

    SeedSelection best;
    best.objective = -std::numeric_limits<double>::infinity();
    while (true) {
        const double value = f(subset);
        if (value > best.objective) {
            best.objective = value;
            best.seeds = subset;
        }
        // Next k-subset in lexicographic order.
        std::size_t i = k;
        while (i > 0 && subset[i - 1] == n - k + i - 1) --i;
        if (i == 0) break;
        ++subset[i - 1];
        for (std::size_t j = i; j < k; ++j) subset[j] = subset[j - 1] + 1;
    }
    best.evaluations = f.calls();
    return best;
}

void write_seed_csv(const SeedSelection& selection, const TemporalNetwork& net,
                    const DiffusionParams& params, const SampleSchedule& schedule,
                    Horizon horizon, const std::filesystem::path& path) {
    // Order seeds by descending singleton influence for a meaningful ranking.
    std::vector<std::pair<NodeId, double>> ordered;
    for (NodeId v : selection.seeds)
        ordered.emplace_back(v, calc_influence({v}, net, params, schedule, horizon));
    std::stable_sort(ordered.begin(), ordered.end(),
                     [](const auto& a, const auto& b) {
                         if (a.second != b.second) return a.second > b.second;
                         return a.first < b.first;
                     });

    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    out << "rank,node,objective_after\n";
    std::vector<NodeId> prefix;
    char buf[64];
    for (std::size_t r = 0; r < ordered.size(); ++r) {
        prefix.push_back(ordered[r].first);
        const double value = calc_influence(prefix, net, params, schedule, horizon);
        std::snprintf(buf, sizeof(buf), "%.6f", value);
        out << (r + 1) << ',' << ordered[r].first << ',' << buf << '\n';
    }
    if (!out) throw IoError("write failed: " + path.string());
}

void write_seed_list(const SeedSelection& selection,
                     const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    for (NodeId v : selection.seeds) out << v << '\n';
    if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace timax
