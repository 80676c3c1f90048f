#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "timax/baselines.hpp"
#include "timax/common.hpp"
#include "timax/diffusion.hpp"
#include "timax/seeding.hpp"
#include "timax/tgraph.hpp"

namespace timax {

// One experiment grid: a dataset, one seeding method, and the (k, eta) cells
// to sweep. All randomness derives from rng_seed.
struct ExperimentSpec {
    std::string dataset;  // path to an edge list, or "ba:<nodes>:<events>"
    bool directed = false;
    std::string method = "ours";
    std::vector<std::size_t> k_values;
    std::vector<double> eta_values;
    DiffusionParams diffusion = DiffusionParams::defaults();
    BaselineParams baseline;
    SimilarityWeights weights;
    std::size_t mc_realizations = 100;
    std::uint64_t rng_seed = 1;
    Timestamp window_width = 1;
    std::size_t min_iter = 10;
    // Wall-clock selection timing is opt-in; the default keeps output bytes
    // reproducible across runs.
    bool measure_runtime = false;
};

struct ResultRow {
    std::string dataset;
    std::string method;
    std::size_t k = 0;
    double eta = 0.0;
    double spread_pct = 0.0;     // 100 * mean spread / node_count
    double spread_stderr = 0.0;  // on the same percentage scale
    double runtime_seconds = 0.0;
    std::size_t evaluations = 0;
};

// Names accepted by the method dispatch, in registry order.
std::vector<std::string> registered_methods();

struct SeederOutcome {
    std::vector<NodeId> seeds;
    std::size_t evaluations = 0;
};

// Single dispatch point for all seeders.
SeederOutcome select_seeds(const std::string& method, const TemporalNetwork& net,
                           const SnapshotSeries& series,
                           const SampleSchedule& schedule,
                           const ExperimentSpec& spec, std::size_t k,
                           double eta, std::uint64_t cell_seed);

// Resolves spec.dataset (file path or ba:<nodes>:<events> generator form).
TemporalNetwork resolve_dataset(const ExperimentSpec& spec, std::string* label);

std::vector<ResultRow> run_experiment(const ExperimentSpec& spec);
std::vector<ResultRow> run_experiment_on(const ExperimentSpec& spec,
                                         const std::string& label,
                                         const TemporalNetwork& net);

// Fixed 6-decimal CSV with header
// dataset,method,k,eta,spread_pct,spread_stderr,runtime_seconds,evaluations.
void export_csv(const std::vector<ResultRow>& rows,
                const std::filesystem::path& path);
std::vector<ResultRow> parse_result_csv(const std::filesystem::path& path);

}  // namespace timax
