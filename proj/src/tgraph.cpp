#include "timax/tgraph.hpp"

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <string_view>

namespace timax {

namespace {

bool event_order(const ContactEvent& a, const ContactEvent& b) {
    if (a.time != b.time) return a.time < b.time;
    if (a.source != b.source) return a.source < b.source;
    return a.target < b.target;
}

}  // namespace

TemporalNetwork::TemporalNetwork(std::size_t node_count,
                                 std::vector<ContactEvent> events, bool directed)
    : node_count_(node_count), directed_(directed), events_(std::move(events)) {
    if (node_count_ == 0) throw ArgumentError("node_count must be positive");
    for (auto& e : events_) {
        if (e.source == e.target)
            throw ArgumentError("self-loop contact (" + std::to_string(e.source) +
                                ") rejected");
        if (e.source >= node_count_ || e.target >= node_count_)
            throw ArgumentError("node id out of range");
        if (e.time < 0) throw ArgumentError("negative timestamp");
        if (!directed_ && e.source > e.target) std::swap(e.source, e.target);
    }
    std::sort(events_.begin(), events_.end(), event_order);
    t_min_ = events_.empty() ? 0 : events_.front().time;
    t_max_ = events_.empty() ? 0 : events_.back().time;
}

std::size_t TemporalNetwork::first_event_at_or_after(Timestamp t) const {
    auto it = std::lower_bound(
        events_.begin(), events_.end(), t,
        [](const ContactEvent& e, Timestamp v) { return e.time < v; });
    return static_cast<std::size_t>(it - events_.begin());
}

namespace {

// Parses up to three integer fields from a line; extra columns are ignored.
bool parse_contact_line(std::string_view line, long long out[3]) {
    std::size_t pos = 0;
    for (int field = 0; field < 3; ++field) {
        while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' ||
                                     line[pos] == '\r'))
            ++pos;
        if (pos >= line.size()) return false;
        const char* begin = line.data() + pos;
        const char* end = line.data() + line.size();
        auto res = std::from_chars(begin, end, out[field]);
        if (res.ec != std::errc{} || res.ptr == begin) return false;
        pos = static_cast<std::size_t>(res.ptr - line.data());
    }
    return true;
}

}  // namespace

TemporalNetwork load_edge_list(const std::filesystem::path& path, bool directed,
                               LoadStats* stats) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open edge list: " + path.string());

    std::vector<ContactEvent> events;
    LoadStats local;
    std::string line;
    std::size_t line_no = 0;
    long long maxid = -1;
    while (std::getline(in, line)) {
        ++line_no;
        ++local.lines_read;
        std::size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        if (line[first] == '#' || line[first] == '%') continue;
        long long f[3];
        if (!parse_contact_line(std::string_view(line).substr(first), f))
            throw IoError("parse error at line " + std::to_string(line_no) +
                          " of " + path.string());
        if (f[0] < 0 || f[1] < 0 || f[2] < 0)
            throw IoError("negative field at line " + std::to_string(line_no) +
                          " of " + path.string());
        if (f[0] == f[1]) {
            ++local.self_loops_skipped;
            continue;
        }
        if (f[0] > 0xffffffffLL || f[1] > 0xffffffffLL)
            throw IoError("node id too large at line " + std::to_string(line_no));
        events.push_back({static_cast<NodeId>(f[0]), static_cast<NodeId>(f[1]),
                          static_cast<Timestamp>(f[2])});
        maxid = std::max({maxid, f[0], f[1]});
    }
    if (events.empty()) throw IoError("no events in " + path.string());
    local.events_loaded = events.size();
    if (stats) *stats = local;
    return TemporalNetwork(static_cast<std::size_t>(maxid) + 1, std::move(events),
                           directed);
}

SnapshotSeries build_snapshots(const TemporalNetwork& net, Timestamp window_width) {
    if (window_width <= 0) throw ArgumentError("window_width must be positive");
    const Timestamp origin = net.t_min();
    const Timestamp span = net.t_max() - net.t_min();
    const std::size_t n_windows =
        static_cast<std::size_t>((span + window_width) / window_width);

    std::vector<EdgeSet> buckets(n_windows);
    for (const auto& e : net.events()) {
        auto idx = static_cast<std::size_t>((e.time - origin) / window_width);
        buckets[idx].emplace_back(e.source, e.target);
    }
    std::vector<Snapshot> snaps;
    snaps.reserve(n_windows);
    for (std::size_t i = 0; i < n_windows; ++i) {
        auto& edges = buckets[i];
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        snaps.push_back({origin + static_cast<Timestamp>(i) * window_width,
                         std::move(edges)});
    }
    return SnapshotSeries(window_width, origin, net.node_count(), net.directed(),
                          std::move(snaps));
}

Snapshot aggregate(const TemporalNetwork& net) {
    EdgeSet edges;
    edges.reserve(net.events().size());
    for (const auto& e : net.events()) edges.emplace_back(e.source, e.target);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return {net.t_min(), std::move(edges)};
}

std::vector<Timestamp> earliest_arrival(const TemporalNetwork& net, NodeId source,
                                        Timestamp start) {
    if (source >= net.node_count())
        throw ArgumentError("source node out of range");
    std::vector<Timestamp> reach(net.node_count(), kNeverReached);
    reach[source] = start - 1;
    const auto& events = net.events();
    for (std::size_t i = net.first_event_at_or_after(start); i < events.size();
         ++i) {
        const auto& e = events[i];
        // A node reached at time r forwards only along strictly later contacts.
        if (reach[e.source] != kNeverReached && e.time > reach[e.source] &&
            reach[e.target] == kNeverReached)
            reach[e.target] = e.time;
        if (!net.directed() && reach[e.target] != kNeverReached &&
            e.time > reach[e.target] && reach[e.source] == kNeverReached)
            reach[e.source] = e.time;
    }
    return reach;
}

std::vector<NodeId> temporal_reachable(const TemporalNetwork& net, NodeId source,
                                       Timestamp start) {
    auto reach = earliest_arrival(net, source, start);
    std::vector<NodeId> out;
    for (NodeId v = 0; v < net.node_count(); ++v)
        if (reach[v] != kNeverReached) out.push_back(v);
    return out;
}

namespace {

std::size_t intersection_size(const EdgeSet& a, const EdgeSet& b) {
    std::size_t i = 0, j = 0, n = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j])
            ++i;
        else if (b[j] < a[i])
            ++j;
        else {
            ++n;
            ++i;
            ++j;
        }
    }
    return n;
}

}  // namespace

double jaccard(const Snapshot& a, const Snapshot& b) {
    if (a.edges.empty() && b.edges.empty()) return 1.0;
    const std::size_t inter = intersection_size(a.edges, b.edges);
    const std::size_t uni = a.edges.size() + b.edges.size() - inter;
    return static_cast<double>(inter) / static_cast<double>(uni);
}

double kulczynski(const Snapshot& a, const Snapshot& b) {
    if (a.edges.empty() && b.edges.empty()) return 1.0;
    if (a.edges.empty() || b.edges.empty()) return 0.0;
    const double inter = static_cast<double>(intersection_size(a.edges, b.edges));
    return 0.5 * (inter / static_cast<double>(a.edges.size()) +
                  inter / static_cast<double>(b.edges.size()));
}

void SimilarityWeights::validate() const {
    if (jaccard_weight < 0.0 || jaccard_weight > 1.0 || kulczynski_weight < 0.0 ||
        kulczynski_weight > 1.0)
        throw ArgumentError("similarity weights must lie in [0,1]");
    if (std::abs(jaccard_weight + kulczynski_weight - 1.0) > 1e-12)
        throw ArgumentError("similarity weights must sum to 1");
}

double similarity_score(const Snapshot& a, const Snapshot& b,
                        const SimilarityWeights& w) {
    w.validate();
    return w.jaccard_weight * jaccard(a, b) + w.kulczynski_weight * kulczynski(a, b);
}

SampleSchedule sample_timestamps(const SnapshotSeries& series, double eta,
                                 const SimilarityWeights& w,
                                 bool invert_threshold) {
    if (!(eta >= 0.0 && eta <= 1.0)) throw ArgumentError("eta must lie in [0,1]");
    w.validate();

    SampleSchedule out;
    out.eta = eta;
    out.window_width = series.window_width();
    out.origin = series.origin();

    const std::size_t n = series.size();
    if (n == 0) return out;
    if (n < 2) {
        out.selected = {0};
        out.audit = {{0, 1.0, 1}};
        return out;
    }

    const std::size_t max_t = n - 1;
    auto passes = [&](double s) { return invert_threshold ? s < eta : s >= eta; };

    std::size_t t = 0;
    while (t < max_t) {
        const std::size_t pinned = t;
        double score = similarity_score(series[t], series[t + 1], w);
        if (passes(score)) {
            out.selected.push_back(t);
            out.audit.push_back({t, score, 1});
            ++t;
            continue;
        }
        std::size_t step = 1;
        while (!passes(score) && t + step <= max_t) {
            t += step;
            score = similarity_score(series[pinned], series[t], w);
            step *= 2;
        }
        if (passes(score)) {
            out.selected.push_back(t);
            out.audit.push_back({t, score, t - pinned});
            ++t;
        } else {
            t += step;
        }
    }
    return out;
}

void write_audit_csv(const SampleSchedule& schedule,
                     const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    out << "index,score,step_used\n";
    char buf[64];
    for (const auto& a : schedule.audit) {
        std::snprintf(buf, sizeof(buf), "%.6f", a.score);
        out << a.index << ',' << buf << ',' << a.step_used << '\n';
    }
    if (!out) throw IoError("write failed: " + path.string());
}

void write_schedule_csv(const SampleSchedule& schedule,
                        const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    out << "index,timestamp\n";
    for (std::size_t i = 0; i < schedule.selected.size(); ++i)
        out << schedule.selected[i] << ',' << schedule.boundary(i) << '\n';
    if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace timax
