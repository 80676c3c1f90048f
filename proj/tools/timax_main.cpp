// Command-line driver: sampling, simulation, seeding, experiment grids,
// synthetic network generation, and counterexample search.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "timax/baselines.hpp"
#include "timax/counterexample.hpp"
#include "timax/diffusion.hpp"
#include "timax/experiment.hpp"
#include "timax/seeding.hpp"
#include "timax/synthetic.hpp"
#include "timax/tgraph.hpp"

namespace {

constexpr std::size_t kDefaultEventCap = 100000;

struct DiffusionFlags {
    double p0 = 0.1;
    double alpha = 0.5;
    double beta = 1.0;
    double gamma = 0.01;
    std::int64_t tau = 0;  // 0 = 10 windows
    std::string params_file;

    void attach(CLI::App* cmd) {
        cmd->add_option("--p0", p0, "base infection probability");
        cmd->add_option("--alpha", alpha, "reinforcement rate");
        cmd->add_option("--beta", beta, "decay kernel scale");
        cmd->add_option("--gamma", gamma, "decay rate");
        cmd->add_option("--tau", tau, "dormancy window (time units; 0 = 10 windows)");
        cmd->add_option("--params", params_file,
                        "key=value parameter file overriding the flags");
    }

    timax::DiffusionParams resolve(timax::Timestamp window_width) const {
        if (!params_file.empty()) {
            std::ifstream in(params_file);
            if (!in) throw timax::IoError("cannot open " + params_file);
            std::string text((std::istreambuf_iterator<char>(in)),
                             std::istreambuf_iterator<char>());
            return timax::DiffusionParams::from_kv(text);
        }
        timax::DiffusionParams p;
        p.p0 = p0;
        p.reinforce_alpha = alpha;
        p.scale_beta = beta;
        p.decay_gamma = gamma;
        p.tau = tau > 0 ? tau : 10 * window_width;
        p.validate();
        return p;
    }
};

std::vector<timax::NodeId> parse_seed_nodes(const std::string& text) {
    std::vector<timax::NodeId> out;
    std::string token;
    std::istringstream in(text);
    while (std::getline(in, token, ','))
        if (!token.empty()) out.push_back(static_cast<timax::NodeId>(std::stoul(token)));
    return out;
}

timax::TemporalNetwork load_input(const std::string& input, bool directed) {
    timax::LoadStats stats;
    auto net = timax::load_edge_list(input, directed, &stats);
    if (stats.self_loops_skipped > 0)
        std::cerr << "warning: skipped " << stats.self_loops_skipped
                  << " self-loop contact(s)\n";
    return net;
}

int run_sample(const std::string& input, bool directed, timax::Timestamp window,
               double eta, double wj, bool invert, const std::string& out_path,
               const std::string& audit_path) {
    const auto net = load_input(input, directed);
    const auto series = timax::build_snapshots(net, window);
    const timax::SimilarityWeights w{wj, 1.0 - wj};
    const auto schedule = timax::sample_timestamps(series, eta, w, invert);
    timax::write_schedule_csv(schedule, out_path);
    if (!audit_path.empty()) timax::write_audit_csv(schedule, audit_path);
    std::cout << "selected " << schedule.selected.size() << " of " << series.size()
              << " windows\n";
    return 0;
}

int run_simulate(const std::string& input, bool directed,
                 const DiffusionFlags& dflags, timax::Timestamp window,
                 const std::string& seeds_text, std::size_t mc,
                 std::uint64_t rng_seed, const std::string& model,
                 double sir_infection, double sir_recovery,
                 const std::string& dump_path) {
    const auto net = load_input(input, directed);
    const auto seeds = parse_seed_nodes(seeds_text);
    const auto horizon = net.full_horizon();

    if (model == "cpsir") {
        const auto params = dflags.resolve(window);
        const auto est =
            timax::estimate_spread_mc(net, seeds, params, horizon, mc, rng_seed);
        std::printf("mean=%.6f stderr=%.6f n=%zu\n", est.mean, est.std_error,
                    est.n_realizations);
        if (!dump_path.empty()) {
            const auto r =
                timax::simulate_cpsir_once(net, seeds, params, horizon, rng_seed);
            timax::write_realization_csv(r, dump_path);
        }
    } else if (model == "sir") {
        double mean = 0.0;
        for (std::size_t i = 0; i < mc; ++i)
            mean += static_cast<double>(
                timax::simulate_sir_once(net, seeds, sir_infection, sir_recovery,
                                         horizon, rng_seed + i)
                    .spread());
        std::printf("mean=%.6f n=%zu\n", mean / static_cast<double>(mc), mc);
    } else {
        throw timax::ArgumentError("unknown model '" + model +
                                   "'; expected cpsir or sir");
    }
    return 0;
}

int run_seed(const std::string& input, bool directed, const DiffusionFlags& dflags,
             timax::Timestamp window, const std::string& method, std::size_t k,
             double eta, double wj, std::size_t min_iter, std::size_t mc,
             std::uint64_t rng_seed, const std::string& out_path,
             const std::string& list_path) {
    timax::ExperimentSpec spec;
    spec.dataset = input;
    spec.directed = directed;
    spec.method = method;
    spec.k_values = {k};
    spec.eta_values = {eta};
    spec.diffusion = dflags.resolve(window);
    spec.weights = {wj, 1.0 - wj};
    spec.mc_realizations = mc;
    spec.rng_seed = rng_seed;
    spec.window_width = window;
    spec.min_iter = min_iter;

    const auto net = load_input(input, directed);
    const auto series = timax::build_snapshots(net, window);
    const auto schedule = timax::sample_timestamps(series, eta, spec.weights);
    const auto outcome = timax::select_seeds(method, net, series, schedule, spec,
                                             k, eta, rng_seed);

    // Objective reporting needs at least one interval; schedule-free methods
    // fall back to a single full-span interval when sampling kept nothing.
    timax::SampleSchedule report = schedule;
    if (report.selected.empty()) {
        std::cerr << "warning: sampling kept no windows at eta=" << eta
                  << "; reporting objectives over one full-span interval\n";
        report.selected = {0};
        report.window_width = net.t_max() - net.t_min() + 1;
        report.origin = net.t_min();
    }

    timax::SeedSelection selection;
    selection.seeds = outcome.seeds;
    selection.evaluations = outcome.evaluations;
    selection.objective = timax::calc_influence(
        selection.seeds, net, spec.diffusion, report, net.full_horizon());

    if (!out_path.empty())
        timax::write_seed_csv(selection, net, spec.diffusion, report,
                              net.full_horizon(), out_path);
    if (!list_path.empty()) timax::write_seed_list(selection, list_path);

    std::cout << "seeds:";
    for (auto v : selection.seeds) std::cout << ' ' << v;
    std::printf("\nobjective=%.6f evaluations=%zu\n", selection.objective,
                selection.evaluations);
    return 0;
}

int run_experiment_cmd(timax::ExperimentSpec spec, const std::string& out_path,
                       bool huge) {
    if (spec.dataset.rfind("ba:", 0) == 0 && !huge) {
        // Guard synthetic sizes unless explicitly unlocked.
        const auto colon = spec.dataset.rfind(':');
        std::size_t events = 0;
        try {
            events = std::stoull(spec.dataset.substr(colon + 1));
        } catch (const std::exception&) {
            throw timax::ArgumentError("malformed generator spec: " +
                                       spec.dataset);
        }
        if (events > kDefaultEventCap)
            throw timax::GuardError(
                "generator above " + std::to_string(kDefaultEventCap) +
                " events requires --huge");
    }
    const auto rows = timax::run_experiment(spec);
    timax::export_csv(rows, out_path);
    std::cout << rows.size() << " rows -> " << out_path << '\n';
    return 0;
}

int run_generate(std::size_t nodes, std::size_t events, std::uint64_t rng_seed,
                 const std::string& out_path, bool huge) {
    if (events > kDefaultEventCap && !huge)
        throw timax::GuardError("generation above " +
                                std::to_string(kDefaultEventCap) +
                                " events requires --huge");
    const auto net = timax::generate_synthetic_ba(nodes, events, rng_seed);
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw timax::IoError("cannot write " + out_path);
    for (const auto& e : net.events())
        out << e.source << ' ' << e.target << ' ' << e.time << '\n';
    if (!out) throw timax::IoError("write failed: " + out_path);
    std::cout << "wrote " << net.events().size() << " events over "
              << net.node_count() << " nodes\n";
    return 0;
}

int run_counterexample(double activation_prob, timax::Timestamp window,
                       std::size_t max_nodes, std::size_t max_windows,
                       std::uint64_t rng_seed, std::size_t budget,
                       const std::string& out_path) {
    const auto result = timax::find_counterexample(
        activation_prob, window, max_nodes, max_windows, rng_seed, budget);
    const std::string text = timax::describe(result);
    if (!out_path.empty()) {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw timax::IoError("cannot write " + out_path);
        out << text;
    }
    std::cout << text;
    return 0;  // a none-result is a valid outcome
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"temporal influence maximization toolkit"};
    app.require_subcommand(1);

    std::string input, out_path, audit_path, list_path, dump_path;
    std::string method = "ours", model = "cpsir", seeds_text = "0";
    bool directed = false, invert = false, huge = false, timing = false;
    timax::Timestamp window = 1;
    double eta = 0.5, wj = 0.5;
    std::size_t k = 1, min_iter = 10, mc = 100;
    std::uint64_t rng_seed = 1;
    DiffusionFlags dflags;
    double sir_infection = 0.1, sir_recovery = 0.05;

    auto* sample = app.add_subcommand("sample", "emit a sampling schedule");
    sample->add_option("--input", input, "edge list file")->required();
    sample->add_flag("--directed", directed, "treat contacts as directed");
    sample->add_option("--window", window, "snapshot window width");
    sample->add_option("--eta", eta, "similarity threshold");
    sample->add_option("--wj", wj, "jaccard weight (kulczynski gets 1-wj)");
    sample->add_flag("--invert-threshold", invert, "keep scores below eta");
    sample->add_option("--out", out_path, "schedule CSV")->required();
    sample->add_option("--audit", audit_path, "audit CSV (index,score,step_used)");

    auto* simulate = app.add_subcommand("simulate", "Monte Carlo spread estimate");
    simulate->add_option("--input", input)->required();
    simulate->add_flag("--directed", directed);
    simulate->add_option("--window", window);
    simulate->add_option("--seeds", seeds_text, "comma-separated seed nodes");
    simulate->add_option("--mc", mc, "realization count");
    simulate->add_option("--seed", rng_seed, "rng seed");
    simulate->add_option("--model", model, "cpsir or sir");
    simulate->add_option("--sir-infection", sir_infection);
    simulate->add_option("--sir-recovery", sir_recovery);
    simulate->add_option("--dump", dump_path, "realization CSV dump");
    dflags.attach(simulate);

    auto* seed_cmd = app.add_subcommand("seed", "run one seeder");
    seed_cmd->add_option("--input", input)->required();
    seed_cmd->add_flag("--directed", directed);
    seed_cmd->add_option("--window", window);
    seed_cmd->add_option("--method", method, "seeding method");
    seed_cmd->add_option("--k", k, "seed budget");
    seed_cmd->add_option("--eta", eta);
    seed_cmd->add_option("--wj", wj);
    seed_cmd->add_option("--min-iter", min_iter, "no-replacement patience");
    seed_cmd->add_option("--mc", mc);
    seed_cmd->add_option("--seed", rng_seed);
    seed_cmd->add_option("--out", out_path, "seed CSV (rank,node,objective_after)");
    seed_cmd->add_option("--list", list_path, "plain node-id list");
    dflags.attach(seed_cmd);

    std::string k_list = "10", eta_list = "0.5";
    auto* experiment = app.add_subcommand("experiment", "full grid to CSV");
    experiment->add_option("--input", input, "edge list or ba:<nodes>:<events>")
        ->required();
    experiment->add_flag("--directed", directed);
    experiment->add_option("--window", window);
    experiment->add_option("--method", method);
    experiment->add_option("--k", k_list, "comma-separated budgets");
    experiment->add_option("--eta", eta_list, "comma-separated thresholds");
    experiment->add_option("--wj", wj);
    experiment->add_option("--min-iter", min_iter);
    experiment->add_option("--mc", mc);
    experiment->add_option("--seed", rng_seed);
    experiment->add_option("--out", out_path)->required();
    experiment->add_flag("--huge", huge, "unlock paper-scale sizes");
    experiment->add_flag("--timing", timing, "record wall-clock selection time");
    dflags.attach(experiment);

    std::size_t gen_nodes = 100, gen_events = 1000;
    auto* generate = app.add_subcommand("generate", "synthetic temporal network");
    generate->add_option("--nodes", gen_nodes)->required();
    generate->add_option("--events", gen_events)->required();
    generate->add_option("--seed", rng_seed);
    generate->add_option("--out", out_path)->required();
    generate->add_flag("--huge", huge);

    double activation_prob = 1.0;
    std::size_t max_nodes = 8, max_windows = 5, budget = 100000;
    auto* counter = app.add_subcommand("counterexample",
                                       "active-inactive witness search");
    counter->add_option("--activation", activation_prob);
    counter->add_option("--window", window, "active window length");
    counter->add_option("--max-nodes", max_nodes);
    counter->add_option("--max-windows", max_windows);
    counter->add_option("--budget", budget, "instance budget");
    counter->add_option("--seed", rng_seed);
    counter->add_option("--out", out_path, "witness report file");

    try {
        app.parse(argc, argv);

        if (sample->parsed())
            return run_sample(input, directed, window, eta, wj, invert, out_path,
                              audit_path);
        if (simulate->parsed())
            return run_simulate(input, directed, dflags, window, seeds_text, mc,
                                rng_seed, model, sir_infection, sir_recovery,
                                dump_path);
        if (seed_cmd->parsed())
            return run_seed(input, directed, dflags, window, method, k, eta, wj,
                            min_iter, mc, rng_seed, out_path, list_path);
        if (experiment->parsed()) {
            timax::ExperimentSpec spec;
            spec.dataset = input;
            spec.directed = directed;
            spec.method = method;
            for (auto v : parse_seed_nodes(k_list)) spec.k_values.push_back(v);
            {
                std::istringstream in(eta_list);
                std::string token;
                while (std::getline(in, token, ','))
                    if (!token.empty()) spec.eta_values.push_back(std::stod(token));
            }
            spec.diffusion = dflags.resolve(window);
            spec.weights = {wj, 1.0 - wj};
            spec.mc_realizations = mc;
            spec.rng_seed = rng_seed;
            spec.window_width = window;
            spec.min_iter = min_iter;
            spec.measure_runtime = timing;
            return run_experiment_cmd(std::move(spec), out_path, huge);
        }
        if (generate->parsed())
            return run_generate(gen_nodes, gen_events, rng_seed, out_path, huge);
        if (counter->parsed())
            return run_counterexample(activation_prob, window, max_nodes,
                                      max_windows, rng_seed, budget, out_path);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const timax::ArgumentError& e) {
        std::cerr << "argument error: " << e.what() << '\n';
        return 2;
    } catch (const timax::GuardError& e) {
        std::cerr << "guard refusal: " << e.what() << '\n';
        return 4;
    } catch (const timax::IoError& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
