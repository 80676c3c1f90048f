#pragma once

#include <cstdint>
#include <vector>

#include "timax/common.hpp"
#include "timax/diffusion.hpp"
#include "timax/seeding.hpp"
#include "timax/tgraph.hpp"

namespace timax {

struct BaselineParams {
    double susceptibility_alpha = 0.01;  // degree-discount susceptibility
    double bt_lambda = 0.01;             // reachability-sampling edge keep rate
    std::size_t bt_gamma = 0;            // sample count; 0 means 10 * node_count
    std::size_t ci_radius = 10;          // collective-influence radius, in windows
    double inmfa_lambda = 0.1;           // mean-field infection rate
    double inmfa_mu = 0.05;              // mean-field recovery rate

    void validate() const;
};

// Optional record of the degree-discount run for fine-grained checks.
struct DegreeDiscountTrace {
    struct Update {
        NodeId neighbor;
        std::size_t tau;
        double delta;
    };
    struct Step {
        NodeId picked;
        std::vector<Update> updates;
    };
    std::vector<Step> steps;
};

// Iterative degree discount on the aggregated graph:
// delta_q = D(q) - 2*tau_q - (D(q) - tau_q) * tau_q * alpha.
std::vector<NodeId> dynamic_degree_discount(const TemporalNetwork& net,
                                            std::size_t k,
                                            const BaselineParams& params,
                                            DegreeDiscountTrace* trace = nullptr);

// Reachability sampling on the aggregated graph: gamma samples, each keeping
// edges with probability lambda and collecting the set reachable from a
// uniform random start; seeds are the top-k frequency nodes.
std::vector<NodeId> borgs_tang(const TemporalNetwork& net, std::size_t k,
                               const BaselineParams& params,
                               std::uint64_t rng_seed);

// Collective-influence index over temporal reachability: Gamma(x) times the
// summed dynamic degree of nodes whose earliest temporal arrival from x falls
// within ci_radius windows of the stream start.
std::vector<NodeId> dynamic_ci(const TemporalNetwork& net, std::size_t k,
                               const BaselineParams& params,
                               Timestamp window_width);

// Exhaustive-scan variant of the swap refinement: a sweep scores every
// outside candidate against every seed in singleton-score order and applies
// each strictly positive best swap as it is found. Runs without the lazy
// variant's patience cutoff; sweeps repeat until one makes no swap or the
// cap is hit. Quality ceiling / cost floor for the lazy variant.
SeedSelection forward_influence(const TemporalNetwork& net,
                                const DiffusionParams& params,
                                const SampleSchedule& schedule,
                                const SelectionConfig& config,
                                std::size_t max_sweeps = 1);

// Mean-field S/I/R recursion over per-window adjacency; returns the expected
// ever-infected fraction (I + R averaged over nodes) at the horizon end.
double inmfa_estimate(const SnapshotSeries& series,
                      const std::vector<NodeId>& seeds,
                      const BaselineParams& params, Horizon horizon);

// Greedy argmax of marginal inmfa_estimate gain, ties by ascending id.
std::vector<NodeId> inmfa_seed(const SnapshotSeries& series, std::size_t k,
                               const BaselineParams& params, Horizon horizon);

// Ranks nodes by the entropy (nats) of their neighbor-set transitions across
// consecutive windows; top-k descending.
std::vector<NodeId> entropy_rank(const SnapshotSeries& series, std::size_t k);

// Per-node entropy values backing entropy_rank, exposed for testing.
std::vector<double> neighborhood_entropy(const SnapshotSeries& series);

}  // namespace timax
