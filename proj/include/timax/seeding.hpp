#pragma once

#include <cstddef>
#include <filesystem>
#include <utility>
#include <vector>

#include "timax/common.hpp"
#include "timax/diffusion.hpp"
#include "timax/tgraph.hpp"

namespace timax {

struct SelectionConfig {
    std::size_t k = 1;          // seed budget
    std::size_t min_iter = 10;  // no-replacement patience
    Horizon horizon;
    double eta = 0.5;
    SimilarityWeights weights;
    Timestamp window_width = 1;

    void validate(std::size_t node_count) const;
};

struct SeedSelection {
    std::vector<NodeId> seeds;  // ascending node ids, |seeds| == k
    double objective = 0.0;     // calc_influence of seeds
    std::size_t evaluations = 0;  // number of calc_influence calls made
};

// Candidate pool: nodes incident to at least one contact in the schedule's
// first interval. Callers fall back to all nodes when this is smaller than k.
std::vector<NodeId> candidate_pool(const TemporalNetwork& net,
                                   const SampleSchedule& schedule,
                                   Horizon horizon);

// Every candidate scored by the influence of its singleton, descending by
// score with ties broken by ascending node id. Returns the full ranking.
std::vector<std::pair<NodeId, double>> top_singletons(
    const TemporalNetwork& net, const DiffusionParams& params,
    const SampleSchedule& schedule, Horizon horizon, std::size_t k);

// Swap-based greedy refinement of the top-k singleton set. Candidates are
// popped in stale singleton-score order (no re-keying, no re-insertion); a
// pop with no strictly positive swap advances the patience counter.
SeedSelection lazy_forward_influence(const TemporalNetwork& net,
                                     const DiffusionParams& params,
                                     const SampleSchedule& schedule,
                                     const SelectionConfig& config);

// Full pipeline: adaptive sampling, singleton scoring, lazy forward
// refinement, final objective evaluation on the returned set.
SeedSelection temporal_influence_maximization(const TemporalNetwork& net,
                                              const DiffusionParams& params,
                                              const SelectionConfig& config);

// Exhaustive maximization over all k-subsets, lexicographically first among
// ties. Refuses instances with more than 10^6 subsets.
SeedSelection brute_force_optimal(const TemporalNetwork& net,
                                  const DiffusionParams& params,
                                  const SampleSchedule& schedule, Horizon horizon,
                                  std::size_t k);

// CSV `rank,node,objective_after`: seeds ordered by descending singleton
// score, each row carrying the objective of the rank-prefix.
void write_seed_csv(const SeedSelection& selection, const TemporalNetwork& net,
                    const DiffusionParams& params, const SampleSchedule& schedule,
                    Horizon horizon, const std::filesystem::path& path);

// Plain newline-separated node id list.
void write_seed_list(const SeedSelection& selection,
                     const std::filesystem::path& path);

}  // namespace timax
