#include "timax/experiment.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "timax/synthetic.hpp"

namespace timax {

namespace {

constexpr std::uint64_t kCellTag = 0x6772696463656c6cULL;
constexpr std::uint64_t kMethodTag = 0x73656c6563746f72ULL;

SelectionConfig make_config(const ExperimentSpec& spec, const TemporalNetwork& net,
                            std::size_t k, double eta) {
    SelectionConfig cfg;
    cfg.k = k;
    cfg.min_iter = spec.min_iter;
    cfg.horizon = net.full_horizon();
    cfg.eta = eta;
    cfg.weights = spec.weights;
    cfg.window_width = spec.window_width;
    return cfg;
}

}  // namespace

std::vector<std::string> registered_methods() {
    return {"ours",       "forward_influence", "degree_discount", "borgs_tang",
            "dynamic_ci", "inmfa",             "entropy"};
}

SeederOutcome select_seeds(const std::string& method, const TemporalNetwork& net,
                           const SnapshotSeries& series,
                           const SampleSchedule& schedule,
                           const ExperimentSpec& spec, std::size_t k,
                           double eta, std::uint64_t cell_seed) {
    SeederOutcome out;
    if (method == "ours") {
        const auto sel = temporal_influence_maximization(
            net, spec.diffusion, make_config(spec, net, k, eta));
        out.seeds = sel.seeds;
        out.evaluations = sel.evaluations;
    } else if (method == "forward_influence") {
        const auto sel = forward_influence(net, spec.diffusion, schedule,
                                           make_config(spec, net, k, eta));
        out.seeds = sel.seeds;
        out.evaluations = sel.evaluations;
    } else if (method == "degree_discount") {
        out.seeds = dynamic_degree_discount(net, k, spec.baseline);
    } else if (method == "borgs_tang") {
        out.seeds = borgs_tang(net, k, spec.baseline,
                               rng::derive(cell_seed, kMethodTag));
    } else if (method == "dynamic_ci") {
        out.seeds = dynamic_ci(net, k, spec.baseline, spec.window_width);
    } else if (method == "inmfa") {
        out.seeds = inmfa_seed(series, k, spec.baseline, net.full_horizon());
    } else if (method == "entropy") {
        out.seeds = entropy_rank(series, k);
    } else {
        std::string names;
        for (const auto& m : registered_methods())
            names += (names.empty() ? "" : ", ") + m;
        throw ArgumentError("unknown method '" + method +
                            "'; registered methods: " + names);
    }
    return out;
}

TemporalNetwork resolve_dataset(const ExperimentSpec& spec, std::string* label) {
    if (spec.dataset.rfind("ba:", 0) == 0) {
        const std::string body = spec.dataset.substr(3);
        const auto colon = body.find(':');
        if (colon == std::string::npos)
            throw ArgumentError("generator spec must be ba:<nodes>:<events>");
        std::size_t nodes = 0, events = 0;
        auto r1 = std::from_chars(body.data(), body.data() + colon, nodes);
        auto r2 = std::from_chars(body.data() + colon + 1,
                                  body.data() + body.size(), events);
        if (r1.ec != std::errc{} || r2.ec != std::errc{})
            throw ArgumentError("malformed generator spec: " + spec.dataset);
        if (label) *label = spec.dataset;
        return generate_synthetic_ba(nodes, events,
                                     rng::derive(spec.rng_seed, 0xba));
    }
    if (label) *label = std::filesystem::path(spec.dataset).filename().string();
    return load_edge_list(spec.dataset, spec.directed);
}

std::vector<ResultRow> run_experiment(const ExperimentSpec& spec) {
    std::string label;
    const auto net = resolve_dataset(spec, &label);
    return run_experiment_on(spec, label, net);
}

std::vector<ResultRow> run_experiment_on(const ExperimentSpec& spec,
                                         const std::string& label,
                                         const TemporalNetwork& net) {
    if (spec.k_values.empty() || spec.eta_values.empty())
        throw ArgumentError("k_values and eta_values must be nonempty");
    if (spec.mc_realizations < 1)
        throw ArgumentError("mc_realizations must be at least 1");

    const auto series = build_snapshots(net, spec.window_width);
    const Horizon horizon = net.full_horizon();
    const double V = static_cast<double>(net.node_count());

    std::vector<ResultRow> rows;
    for (std::size_t ki = 0; ki < spec.k_values.size(); ++ki) {
        for (std::size_t ei = 0; ei < spec.eta_values.size(); ++ei) {
            const std::size_t k = spec.k_values[ki];
            const double eta = spec.eta_values[ei];
            const auto schedule = sample_timestamps(series, eta, spec.weights);

            // The cell seed depends on (k, eta) but not on the method, so
            // competing methods are evaluated under shared randomness.
            const std::uint64_t cell_seed = rng::derive(
                spec.rng_seed, kCellTag ^ (ki * 0x10001ULL + ei));

            const auto t0 = std::chrono::steady_clock::now();
            const auto outcome =
                select_seeds(spec.method, net, series, schedule, spec, k, eta,
                             cell_seed);
            const auto t1 = std::chrono::steady_clock::now();

            const auto est =
                estimate_spread_mc(net, outcome.seeds, spec.diffusion, horizon,
                                   spec.mc_realizations, cell_seed);

            ResultRow row;
            row.dataset = label;
            row.method = spec.method;
            row.k = k;
            row.eta = eta;
            row.spread_pct = 100.0 * est.mean / V;
            row.spread_stderr = 100.0 * est.std_error / V;
            row.runtime_seconds =
                spec.measure_runtime
                    ? std::chrono::duration<double>(t1 - t0).count()
                    : 0.0;
            row.evaluations = outcome.evaluations;
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

void export_csv(const std::vector<ResultRow>& rows,
                const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << "dataset,method,k,eta,spread_pct,spread_stderr,runtime_seconds,"
           "evaluations\n";
    char buf[160];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof(buf), "%.6f,%.6f,%.6f,%.6f", r.eta,
                      r.spread_pct, r.spread_stderr, r.runtime_seconds);
        out << r.dataset << ',' << r.method << ',' << r.k << ',' << buf << ','
            << r.evaluations << '\n';
    }
    if (!out) throw IoError("write failed: " + path.string());
}

std::vector<ResultRow> parse_result_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw IoError("missing header: " + path.string());

    std::vector<ResultRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream fields(line);
        std::string cell;
        ResultRow r;
        auto next = [&]() {
            if (!std::getline(fields, cell, ','))
                throw IoError("short row in " + path.string());
            return cell;
        };
        r.dataset = next();
        r.method = next();
        r.k = std::stoull(next());
        r.eta = std::stod(next());
        r.spread_pct = std::stod(next());
        r.spread_stderr = std::stod(next());
        r.runtime_seconds = std::stod(next());
        r.evaluations = std::stoull(next());
        rows.push_back(std::move(r));
    }
    return rows;
}

}  // namespace timax
