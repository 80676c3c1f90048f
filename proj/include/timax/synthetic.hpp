#pragma once

#include <cstdint>

#include "timax/tgraph.hpp"

namespace timax {

// Preferential-attachment temporal network. Nodes arrive in id order, each
// attaching to an existing node with probability proportional to degree + 1;
// the remaining events are repeat contacts over existing edges with the
// source drawn degree-proportionally. Event times are 0, 1, 2, ...
TemporalNetwork generate_synthetic_ba(std::size_t n_nodes, std::size_t n_events,
                                      std::uint64_t rng_seed);

}  // namespace timax
