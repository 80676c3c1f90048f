#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "timax/tgraph.hpp"

namespace timax {

// A small generated instance for the active-inactive model.
struct ActiveInactiveInstance {
    std::size_t node_count = 0;
    std::vector<ContactEvent> events;
    double activation_prob = 1.0;
    Timestamp active_window = 1;
};

struct MonotonicityWitness {
    ActiveInactiveInstance instance;
    std::vector<NodeId> base_set;
    NodeId added = 0;
    std::size_t spread_base = 0;      // sigma(base_set)
    std::size_t spread_extended = 0;  // sigma(base_set + added) < spread_base
};

struct SubmodularityWitness {
    ActiveInactiveInstance instance;
    std::vector<NodeId> small_set;  // A
    std::vector<NodeId> large_set;  // B, strict superset of A
    NodeId added = 0;               // x
    std::size_t spread_small = 0, spread_small_ext = 0;
    std::size_t spread_large = 0, spread_large_ext = 0;
};

struct CounterexampleSearchResult {
    std::optional<MonotonicityWitness> monotonicity;
    std::optional<SubmodularityWitness> submodularity;
    std::size_t instances_tried = 0;
};

// Randomized search over small temporal networks for seed sets whose
// active-inactive spread violates monotonicity and submodularity. Stops when
// both witness kinds are found or the instance budget is exhausted.
CounterexampleSearchResult find_counterexample(double activation_prob,
                                               Timestamp active_window,
                                               std::size_t max_nodes,
                                               std::size_t max_windows,
                                               std::uint64_t rng_seed,
                                               std::size_t budget);

std::string describe(const CounterexampleSearchResult& result);

}  // namespace timax
