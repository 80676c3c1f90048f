#include "timax/synthetic.hpp"

namespace timax {

TemporalNetwork generate_synthetic_ba(std::size_t n_nodes, std::size_t n_events,
                                      std::uint64_t rng_seed) {
    if (n_nodes < 2) throw ArgumentError("need at least 2 nodes");
    if (n_events < n_nodes - 1)
        throw ArgumentError("need at least n_nodes - 1 events");

    rng::SplitMix rng(rng_seed);
    std::vector<ContactEvent> events;
    events.reserve(n_events);

    // endpoint_bag holds one entry per edge endpoint, so sampling from
    // bag + a uniform node pick realizes probability proportional to deg + 1.
    std::vector<NodeId> endpoint_bag;
    endpoint_bag.reserve(2 * n_nodes);
    std::vector<std::vector<NodeId>> adj(n_nodes);

    Timestamp t = 0;
    for (NodeId v = 1; v < n_nodes; ++v) {
        const std::uint64_t r = rng.below(endpoint_bag.size() + v);
        const NodeId u = r < endpoint_bag.size()
                             ? endpoint_bag[r]
                             : static_cast<NodeId>(r - endpoint_bag.size());
        events.push_back({v, u, t++});
        endpoint_bag.push_back(v);
        endpoint_bag.push_back(u);
        adj[v].push_back(u);
        adj[u].push_back(v);
    }
    // Repeat contacts over the grown graph; degree-proportional source.
    for (std::size_t e = n_nodes - 1; e < n_events; ++e) {
        const NodeId u = endpoint_bag[rng.below(endpoint_bag.size())];
        const NodeId v = adj[u][rng.below(adj[u].size())];
        events.push_back({u, v, t++});
    }
    return TemporalNetwork(n_nodes, std::move(events), /*directed=*/false);
}

}  // namespace timax
