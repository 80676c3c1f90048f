#include "timax/diffusion.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_map>

namespace timax {

namespace {

constexpr std::uint64_t kRecoveryTag = 0x5349522d72656376ULL;

enum class Status : std::uint8_t { susceptible, active, dormant, recovered };

std::vector<NodeId> normalize_seeds(const std::vector<NodeId>& seeds,
                                    std::size_t node_count) {
    if (seeds.empty()) throw ArgumentError("seed set must be nonempty");
    std::vector<NodeId> out(seeds);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    if (out.back() >= node_count) throw ArgumentError("seed node out of range");
    return out;
}

Horizon clip_horizon(const TemporalNetwork& net, Horizon h) {
    if (h.end <= h.start) throw ArgumentError("horizon must have positive length");
    h.start = std::max(h.start, net.t_min());
    h.end = std::min(h.end, net.t_max() + 1);
    if (h.end < h.start) h.end = h.start;  // no events in range
    return h;
}

std::uint64_t pair_key(NodeId a, NodeId b, std::size_t node_count) {
    return static_cast<std::uint64_t>(a) * node_count + b;
}

Timestamp saturating_add(Timestamp a, Timestamp b) {
    if (a > 0 && b > std::numeric_limits<Timestamp>::max() - a)
        return std::numeric_limits<Timestamp>::max();
    return a + b;
}

Realization finish_realization(std::uint64_t rng_seed,
                               std::vector<Timestamp> activation_time) {
    Realization r;
    r.rng_seed = rng_seed;
    for (NodeId v = 0; v < activation_time.size(); ++v)
        if (activation_time[v] != kNeverInfected) r.infected.push_back(v);
    r.activation_time = std::move(activation_time);
    return r;
}

}  // namespace

void DiffusionParams::validate() const {
    if (!(p0 >= 0.0 && p0 <= 1.0)) throw ArgumentError("p0 must lie in [0,1]");
    if (!(reinforce_alpha > 0.0)) throw ArgumentError("alpha must be positive");
    if (!(scale_beta > 0.0 && scale_beta <= 1.0))
        throw ArgumentError("beta must lie in (0,1]");
    if (!(decay_gamma >= 0.0)) throw ArgumentError("gamma must be non-negative");
    if (tau <= 0) throw ArgumentError("tau must be positive");
    if (p0 * scale_beta > 1.0 + 1e-12)
        throw ArgumentError("p0*beta must not exceed 1");
    if (!std::isfinite(p0) || !std::isfinite(reinforce_alpha) ||
        !std::isfinite(scale_beta) || !std::isfinite(decay_gamma))
        throw ArgumentError("diffusion parameters must be finite");
}

std::string DiffusionParams::to_kv() const {
    std::ostringstream out;
    out << "p0=" << p0 << '\n'
        << "alpha=" << reinforce_alpha << '\n'
        << "beta=" << scale_beta << '\n'
        << "gamma=" << decay_gamma << '\n'
        << "tau=" << tau << '\n';
    return out.str();
}

DiffusionParams DiffusionParams::from_kv(const std::string& text) {
    DiffusionParams p;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ArgumentError("malformed key=value line: " + line);
        const std::string key = line.substr(0, eq);
        const std::string value = line.substr(eq + 1);
        auto numeric = [&](auto parse) {
            try {
                return parse(value);
            } catch (const std::exception&) {
                throw ArgumentError("malformed value for " + key + ": " + value);
            }
        };
        auto as_double = [](const std::string& v) { return std::stod(v); };
        auto as_time = [](const std::string& v) {
            return static_cast<Timestamp>(std::stoll(v));
        };
        if (key == "p0")
            p.p0 = numeric(as_double);
        else if (key == "alpha")
            p.reinforce_alpha = numeric(as_double);
        else if (key == "beta")
            p.scale_beta = numeric(as_double);
        else if (key == "gamma")
            p.decay_gamma = numeric(as_double);
        else if (key == "tau")
            p.tau = numeric(as_time);
        else
            throw ArgumentError("unknown diffusion parameter: " + key);
    }
    p.validate();
    return p;
}

double contact_success_probability(const DiffusionParams& params, std::size_t k,
                                   Timestamp contact_time,
                                   Timestamp infector_infection_time) {
    if (k < 1) throw ArgumentError("exposure count must be at least 1");
    if (contact_time < infector_infection_time)
        throw ArgumentError("contact precedes infector's infection");
    const double reinforcement =
        1.0 - std::exp(-params.reinforce_alpha * static_cast<double>(k));
    const double dt =
        static_cast<double>(contact_time - infector_infection_time);
    const double kernel = params.scale_beta * std::exp(-params.decay_gamma * dt);
    const double p = params.p0 * reinforcement * kernel;
    return std::clamp(p, 0.0, 1.0);
}

Realization simulate_cpsir_once(const TemporalNetwork& net,
                                const std::vector<NodeId>& seeds_in,
                                const DiffusionParams& params, Horizon horizon,
                                std::uint64_t rng_seed) {
    params.validate();
    const auto seeds = normalize_seeds(seeds_in, net.node_count());
    const Horizon h = clip_horizon(net, horizon);
    const std::size_t V = net.node_count();

    std::vector<Status> status(V, Status::susceptible);
    std::vector<Timestamp> infection_time(V, kNeverInfected);
    std::vector<Timestamp> active_since(V, kNeverInfected);
    std::vector<Timestamp> last_attempt(V, kNeverInfected);  // delta_u
    std::unordered_map<std::uint64_t, std::uint32_t> exposure;

    for (NodeId s : seeds) {
        status[s] = Status::active;
        infection_time[s] = h.start;
        last_attempt[s] = h.start;
        active_since[s] = h.start - 1;  // seeds may transmit from h.start onward
    }

    auto settle_dormancy = [&](NodeId u, Timestamp t) {
        if (status[u] == Status::active && t - last_attempt[u] > params.tau)
            status[u] = Status::dormant;
    };

    const auto& events = net.events();
    for (std::size_t i = net.first_event_at_or_after(h.start);
         i < events.size() && events[i].time < h.end; ++i) {
        const auto& e = events[i];
        settle_dormancy(e.source, e.time);
        settle_dormancy(e.target, e.time);

        auto interact = [&](NodeId a, NodeId b) {
            if (status[a] != Status::active || e.time <= active_since[a]) return;
            if (status[b] == Status::susceptible) {
                const std::uint32_t k = ++exposure[pair_key(a, b, V)];
                const double p =
                    contact_success_probability(params, k, e.time, infection_time[a]);
                last_attempt[a] = e.time;
                if (rng::unit_at(rng_seed, i) < p) {
                    status[b] = Status::active;
                    infection_time[b] = e.time;
                    last_attempt[b] = e.time;
                    active_since[b] = e.time;
                }
            } else if (status[b] == Status::dormant) {
                // Reactivation: fresh attempt clock, infection time preserved.
                status[b] = Status::active;
                last_attempt[b] = e.time;
                active_since[b] = e.time;
            }
        };
        interact(e.source, e.target);
        if (!net.directed()) interact(e.target, e.source);
    }
    return finish_realization(rng_seed, std::move(infection_time));
}

Realization simulate_sir_once(const TemporalNetwork& net,
                              const std::vector<NodeId>& seeds_in,
                              double infection_prob, double recovery_prob,
                              Horizon horizon, std::uint64_t rng_seed) {
    if (!(infection_prob >= 0.0 && infection_prob <= 1.0) ||
        !(recovery_prob >= 0.0 && recovery_prob <= 1.0))
        throw ArgumentError("probabilities must lie in [0,1]");
    const auto seeds = normalize_seeds(seeds_in, net.node_count());
    const Horizon h = clip_horizon(net, horizon);
    const std::size_t V = net.node_count();

    std::vector<Status> status(V, Status::susceptible);
    std::vector<Timestamp> infection_time(V, kNeverInfected);
    std::vector<Timestamp> active_since(V, kNeverInfected);
    std::vector<NodeId> infectious;

    for (NodeId s : seeds) {
        status[s] = Status::active;
        infection_time[s] = h.start;
        active_since[s] = h.start - 1;
        infectious.push_back(s);
    }

    const std::uint64_t recovery_seed = rng::derive(rng_seed, kRecoveryTag);
    std::uint64_t boundary = 0;
    Timestamp prev_time = kNeverInfected;

    const auto& events = net.events();
    for (std::size_t i = net.first_event_at_or_after(h.start);
         i < events.size() && events[i].time < h.end; ++i) {
        const auto& e = events[i];
        if (prev_time != kNeverInfected && e.time > prev_time) {
            // Timestamp transition: every infectious node draws for recovery.
            std::vector<NodeId> still;
            for (NodeId u : infectious) {
                if (rng::unit_at(recovery_seed, boundary * V + u) < recovery_prob)
                    status[u] = Status::recovered;
                else
                    still.push_back(u);
            }
            infectious.swap(still);
            ++boundary;
        }
        prev_time = e.time;

        auto interact = [&](NodeId a, NodeId b) {
            if (status[a] != Status::active || e.time <= active_since[a]) return;
            if (status[b] != Status::susceptible) return;
            if (rng::unit_at(rng_seed, i) < infection_prob) {
                status[b] = Status::active;
                infection_time[b] = e.time;
                active_since[b] = e.time;
                infectious.push_back(b);
            }
        };
        interact(e.source, e.target);
        if (!net.directed()) interact(e.target, e.source);
    }
    return finish_realization(rng_seed, std::move(infection_time));
}

Realization simulate_active_inactive_once(const TemporalNetwork& net,
                                          const std::vector<NodeId>& seeds_in,
                                          double activation_prob,
                                          Timestamp active_window,
                                          std::uint64_t rng_seed) {
    if (!(activation_prob >= 0.0 && activation_prob <= 1.0))
        throw ArgumentError("activation_prob must lie in [0,1]");
    if (active_window < 1) throw ArgumentError("active_window must be >= 1");
    const auto seeds = normalize_seeds(seeds_in, net.node_count());
    const std::size_t V = net.node_count();
    const Timestamp t0 = net.t_min();

    std::vector<Timestamp> activation(V, kNeverInfected);
    std::vector<char> is_seed(V, 0);
    for (NodeId s : seeds) {
        activation[s] = t0;
        is_seed[s] = 1;
    }

    auto transmitting = [&](NodeId u, Timestamp t) {
        if (activation[u] == kNeverInfected) return false;
        const Timestamp deadline = saturating_add(activation[u], active_window);
        if (is_seed[u]) return t >= t0 && t <= deadline;
        return t > activation[u] && t <= deadline;
    };

    const auto& events = net.events();
    for (std::size_t i = 0; i < events.size(); ++i) {
        const auto& e = events[i];
        auto interact = [&](NodeId a, NodeId b) {
            if (!transmitting(a, e.time) || activation[b] != kNeverInfected) return;
            if (rng::unit_at(rng_seed, i) < activation_prob) activation[b] = e.time;
        };
        interact(e.source, e.target);
        if (!net.directed()) interact(e.target, e.source);
    }
    return finish_realization(rng_seed, std::move(activation));
}

SpreadEstimate estimate_spread_mc(const TemporalNetwork& net,
                                  const std::vector<NodeId>& seeds,
                                  const DiffusionParams& params, Horizon horizon,
                                  std::size_t n, std::uint64_t base_seed) {
    if (n < 1) throw ArgumentError("realization count must be at least 1");
    double mean = 0.0;
    double m2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto r = simulate_cpsir_once(net, seeds, params, horizon, base_seed + i);
        const double x = static_cast<double>(r.spread());
        const double d = x - mean;
        mean += d / static_cast<double>(i + 1);
        m2 += d * (x - mean);
    }
    SpreadEstimate est;
    est.mean = mean;
    est.n_realizations = n;
    est.std_error =
        n > 1 ? std::sqrt(m2 / static_cast<double>(n - 1)) /
                    std::sqrt(static_cast<double>(n))
              : 0.0;
    return est;
}

double calc_influence(const std::vector<NodeId>& seeds_in,
                      const TemporalNetwork& net, const DiffusionParams& params,
                      const SampleSchedule& schedule, Horizon horizon) {
    params.validate();
    if (schedule.selected.empty())
        throw ArgumentError("schedule must contain at least one timestamp");
    const auto seeds = normalize_seeds(seeds_in, net.node_count());
    const Horizon h = clip_horizon(net, horizon);
    const std::size_t V = net.node_count();

    // Interval boundaries: horizon start, in-range schedule timestamps,
    // horizon end.
    std::vector<Timestamp> bounds;
    bounds.push_back(h.start);
    for (std::size_t i = 0; i < schedule.selected.size(); ++i) {
        const Timestamp b = schedule.boundary(i);
        if (b > h.start && b < h.end) bounds.push_back(b);
    }
    bounds.push_back(std::max(h.end, h.start));

    std::vector<double> p(V, 0.0);
    std::vector<char> is_seed(V, 0);
    for (NodeId s : seeds) {
        p[s] = 1.0;
        is_seed[s] = 1;
    }

    // The exposure ledger and the opportunity clock evolve from the contact
    // stream alone, independent of the seed set, which keeps the estimator a
    // coverage-style function of the seeds.
    std::unordered_map<std::uint64_t, std::uint32_t> exposure;
    std::unordered_map<NodeId, Timestamp> opportunity;

    std::vector<double> comp(V, 1.0);
    std::vector<std::uint32_t> stamp(V, 0);
    std::uint32_t epoch = 0;
    std::vector<NodeId> touched;

    const auto& events = net.events();
    std::size_t cursor = net.first_event_at_or_after(h.start);

    for (std::size_t j = 0; j + 1 < bounds.size(); ++j) {
        const Timestamp left = bounds[j];
        const Timestamp right = bounds[j + 1];
        ++epoch;
        touched.clear();

        auto contribute = [&](NodeId a, NodeId b, Timestamp t) {
            const std::uint32_t k = ++exposure[pair_key(a, b, V)];
            auto it = opportunity.find(a);
            const Timestamp ref = it == opportunity.end() ? left : it->second;
            if (t - ref > params.tau) return;  // dormant in expectation
            if (it == opportunity.end())
                opportunity.emplace(a, t);
            else
                it->second = t;
            if (p[a] <= 0.0 || is_seed[b]) return;
            const double q = contact_success_probability(params, k, t, left);
            if (q <= 0.0) return;
            if (stamp[b] != epoch) {
                stamp[b] = epoch;
                comp[b] = 1.0;
                touched.push_back(b);
            }
            comp[b] *= 1.0 - p[a] * q;
        };

        while (cursor < events.size() && events[cursor].time < right) {
            const auto& e = events[cursor];
            contribute(e.source, e.target, e.time);
            if (!net.directed()) contribute(e.target, e.source, e.time);
            ++cursor;
        }
        // Synchronous update: all contributions above used the values at the
        // interval's left endpoint.
        for (NodeId b : touched) p[b] = 1.0 - (1.0 - p[b]) * comp[b];
    }

    double total = 0.0;
    for (std::size_t v = 0; v < V; ++v) total += is_seed[v] ? 1.0 : p[v];
    return total;
}

void write_realization_csv(const Realization& r,
                           const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    out << "node,activation_time\n";
    for (NodeId v : r.infected) out << v << ',' << r.activation_time[v] << '\n';
    if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace timax
