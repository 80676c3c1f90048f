#pragma once

#include <cstddef>
#include <filesystem>
#include <utility>
#include <vector>

#include "timax/common.hpp"

namespace timax {

// One timestamped contact. Undirected networks canonicalize source < target.
struct ContactEvent {
    NodeId source = 0;
    NodeId target = 0;
    Timestamp time = 0;

    friend bool operator==(const ContactEvent&, const ContactEvent&) = default;
};

// Immutable stream of contact events over a fixed node universe [0, node_count).
// Events are kept sorted by time, ties broken by (source, target).
class TemporalNetwork {
  public:
    TemporalNetwork(std::size_t node_count, std::vector<ContactEvent> events,
                    bool directed);

    std::size_t node_count() const { return node_count_; }
    const std::vector<ContactEvent>& events() const { return events_; }
    bool directed() const { return directed_; }
    Timestamp t_min() const { return t_min_; }
    Timestamp t_max() const { return t_max_; }

    // Full event range as a half-open horizon.
    Horizon full_horizon() const { return {t_min_, t_max_ + 1}; }

    // Index of the first event with time >= t.
    std::size_t first_event_at_or_after(Timestamp t) const;

  private:
    std::size_t node_count_;
    bool directed_;
    std::vector<ContactEvent> events_;
    Timestamp t_min_ = 0;
    Timestamp t_max_ = 0;
};

struct LoadStats {
    std::size_t lines_read = 0;
    std::size_t events_loaded = 0;
    std::size_t self_loops_skipped = 0;
};

// Reads a whitespace-separated `u v t` edge list. Lines starting with '#' or
// '%' are ignored, extra trailing columns are tolerated, self-loops are
// skipped and counted in stats.
TemporalNetwork load_edge_list(const std::filesystem::path& path, bool directed,
                               LoadStats* stats = nullptr);

// Sorted, duplicate-free edge list. Undirected pairs are stored (min, max).
using EdgeSet = std::vector<std::pair<NodeId, NodeId>>;

struct Snapshot {
    Timestamp label = 0;  // window start time
    EdgeSet edges;
};

// Consecutive fixed-width windows covering [t_min, t_max]. Window i holds the
// distinct contact pairs with time in [origin + i*w, origin + (i+1)*w).
class SnapshotSeries {
  public:
    SnapshotSeries(Timestamp window_width, Timestamp origin,
                   std::size_t node_count, bool directed,
                   std::vector<Snapshot> snapshots)
        : window_width_(window_width),
          origin_(origin),
          node_count_(node_count),
          directed_(directed),
          snapshots_(std::move(snapshots)) {}

    Timestamp window_width() const { return window_width_; }
    Timestamp origin() const { return origin_; }
    std::size_t node_count() const { return node_count_; }
    bool directed() const { return directed_; }
    std::size_t size() const { return snapshots_.size(); }
    const Snapshot& operator[](std::size_t i) const { return snapshots_[i]; }
    const std::vector<Snapshot>& snapshots() const { return snapshots_; }

  private:
    Timestamp window_width_;
    Timestamp origin_;
    std::size_t node_count_;
    bool directed_;
    std::vector<Snapshot> snapshots_;
};

SnapshotSeries build_snapshots(const TemporalNetwork& net, Timestamp window_width);

// Union of all contact pairs over the whole stream.
Snapshot aggregate(const TemporalNetwork& net);

// Earliest arrival time of a strictly-increasing-time path from source using
// events at times >= start. Unreachable nodes get kNeverReached; the source
// itself gets start - 1 (it may act from `start` onward).
constexpr Timestamp kNeverReached = std::int64_t{-1} << 62;
std::vector<Timestamp> earliest_arrival(const TemporalNetwork& net, NodeId source,
                                        Timestamp start);

// Nodes reachable from source via temporal paths, source included. Ascending.
std::vector<NodeId> temporal_reachable(const TemporalNetwork& net, NodeId source,
                                       Timestamp start);

// |A n B| / |A u B|; 1.0 when both edge sets are empty.
double jaccard(const Snapshot& a, const Snapshot& b);

// (|A n B|/|A| + |A n B|/|B|) / 2; 1.0 when both empty, 0.0 when exactly one
// side is empty.
double kulczynski(const Snapshot& a, const Snapshot& b);

struct SimilarityWeights {
    double jaccard_weight = 0.5;
    double kulczynski_weight = 0.5;

    void validate() const;
};

// Convex combination of the two similarities.
double similarity_score(const Snapshot& a, const Snapshot& b,
                        const SimilarityWeights& w);

struct AuditEntry {
    std::size_t index = 0;   // selected window index
    double score = 0.0;      // similarity score at the moment of selection
    std::size_t step_used = 1;  // distance to the pinned left snapshot
};

// Ordered set of selected window indices plus the window geometry needed to
// map indices back to timestamps.
struct SampleSchedule {
    std::vector<std::size_t> selected;
    double eta = 0.0;
    Timestamp window_width = 1;
    Timestamp origin = 0;
    std::vector<AuditEntry> audit;

    Timestamp boundary(std::size_t selected_pos) const {
        return origin + static_cast<Timestamp>(selected[selected_pos]) * window_width;
    }
};

// Adaptive timestamp selection. Walks the series comparing the snapshot at t
// against the one at t+1; indices whose score passes eta are kept and the
// walk advances by one, otherwise the step doubles (1, 2, 4, ...) with the
// left snapshot pinned until the score passes or the horizon is exceeded.
// With invert_threshold the rule flips to keeping scores strictly below eta.
SampleSchedule sample_timestamps(const SnapshotSeries& series, double eta,
                                 const SimilarityWeights& w,
                                 bool invert_threshold = false);

// CSV `index,score,step_used` audit dump for a schedule.
void write_audit_csv(const SampleSchedule& schedule,
                     const std::filesystem::path& path);

// CSV `index,timestamp` dump of the selected windows.
void write_schedule_csv(const SampleSchedule& schedule,
                        const std::filesystem::path& path);

}  // namespace timax
