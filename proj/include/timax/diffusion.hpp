#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "timax/common.hpp"
#include "timax/tgraph.hpp"

namespace timax {

// cpSI-R parameter block. The composed per-contact probability is
// p0 * (1 - exp(-alpha*k)) * beta * exp(-gamma*dt), so p0*beta <= 1 keeps it
// inside [0,1] for every exposure count k.
struct DiffusionParams {
    double p0 = 0.1;              // base infection probability
    double reinforce_alpha = 0.5; // reinforcement rate per exposure
    double scale_beta = 1.0;      // decay kernel scale
    double decay_gamma = 0.01;    // decay rate per time unit
    Timestamp tau = 10;           // dormancy window in time units

    // Artifact default set used by the CLI when no overrides are given.
    static DiffusionParams defaults() { return {}; }

    void validate() const;

    // Flat key=value serialization (one pair per line).
    std::string to_kv() const;
    static DiffusionParams from_kv(const std::string& text);
};

// Per-contact success probability for the k-th exposure of an ordered pair,
// with the decay kernel anchored at the infector's infection time.
double contact_success_probability(const DiffusionParams& params, std::size_t k,
                                   Timestamp contact_time,
                                   Timestamp infector_infection_time);

// Outcome of one stochastic run. activation_time has one entry per node,
// kNeverInfected for nodes that were never infected; infected lists the
// ever-infected nodes in ascending order.
constexpr Timestamp kNeverInfected = std::int64_t{-1} << 62;

struct Realization {
    std::uint64_t rng_seed = 0;
    std::vector<NodeId> infected;
    std::vector<Timestamp> activation_time;

    std::size_t spread() const { return infected.size(); }
};

// Event-driven cpSI-R run: reinforcement via per-pair exposure counts,
// dormancy after tau time units without an infection attempt, deterministic
// reactivation on contact with an active node. Deterministic per rng_seed.
Realization simulate_cpsir_once(const TemporalNetwork& net,
                                const std::vector<NodeId>& seeds,
                                const DiffusionParams& params, Horizon horizon,
                                std::uint64_t rng_seed);

// Temporal SIR comparison model: per-contact infection, recovery evaluated at
// each distinct-timestamp transition, recovered nodes stay inert.
Realization simulate_sir_once(const TemporalNetwork& net,
                              const std::vector<NodeId>& seeds,
                              double infection_prob, double recovery_prob,
                              Horizon horizon, std::uint64_t rng_seed);

// Active-inactive comparison model: a node activated at time a may transmit
// during (a, a + active_window] (seeds during [t_min, t_min + active_window])
// and then permanently deactivates. Spread counts all ever-activated nodes.
Realization simulate_active_inactive_once(const TemporalNetwork& net,
                                          const std::vector<NodeId>& seeds,
                                          double activation_prob,
                                          Timestamp active_window,
                                          std::uint64_t rng_seed);

struct SpreadEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t n_realizations = 0;
};

// Monte Carlo estimate over realizations seeded base_seed .. base_seed+n-1,
// so competing seed sets evaluated with the same base share randomness.
SpreadEstimate estimate_spread_mc(const TemporalNetwork& net,
                                  const std::vector<NodeId>& seeds,
                                  const DiffusionParams& params, Horizon horizon,
                                  std::size_t n, std::uint64_t base_seed);

// Deterministic probability-propagation estimate of cpSI-R influence over the
// schedule's intervals. Seeds stay pinned at probability 1; every non-seed
// node composes its incoming contact attempts independently per interval.
// Returns |S| + sum of non-seed probabilities at the horizon end.
double calc_influence(const std::vector<NodeId>& seeds, const TemporalNetwork& net,
                      const DiffusionParams& params,
                      const SampleSchedule& schedule, Horizon horizon);

// CSV `node,activation_time` debug dump.
void write_realization_csv(const Realization& r,
                           const std::filesystem::path& path);

}  // namespace timax
