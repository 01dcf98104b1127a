#include "oambandit/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "oambandit/error.hpp"
#include "oambandit/experiments.hpp"
#include "oambandit/io.hpp"
#include "oambandit/oam_core.hpp"

namespace oambandit {

namespace {

constexpr int kMaxHomArms = 8;
constexpr double kEqualTolerance = 1e-12;

struct CliOptions {
    int arms = 3;
    std::vector<double> probs{0.9, 0.7, 0.1};
    double beta = 20.0;
    std::uint64_t trials = 1000;
    std::uint64_t reps = 1000;
    int players = 1;
    std::string policy = "greedy";
    std::string coupling = "physical";
    std::vector<double> theta;
    std::uint64_t seed = 0;
    std::string out;
    std::string format = "csv";
    int threads = 0;
    std::string grid;
    bool require_equal = false;

    CLI::Option* arms_opt = nullptr;
    CLI::Option* probs_opt = nullptr;
};

void add_options(CLI::App& app, CliOptions& o) {
    o.arms_opt = app.add_option("--arms", o.arms, "Number of arms / OAM modes K")->capture_default_str();
    o.probs_opt = app.add_option("--probs", o.probs, "Reward probabilities, comma separated")
                      ->delimiter(',')
                      ->capture_default_str();
    app.add_option("--beta", o.beta, "Softmax inverse temperature")->capture_default_str();
    app.add_option("--trials", o.trials, "Rounds per repetition (horizon T)")->capture_default_str();
    app.add_option("--reps", o.reps, "Repetitions")->capture_default_str();
    app.add_option("--players", o.players, "1 or 2")->capture_default_str();
    app.add_option("--policy", o.policy, "Two-player policy")
        ->check(CLI::IsMember({"greedy", "equilibrium", "quantum"}))
        ->capture_default_str();
    app.add_option("--coupling", o.coupling, "Quantum policy coupling")
        ->check(CLI::IsMember({"physical", "abstract"}))
        ->capture_default_str();
    app.add_option("--theta", o.theta, "Half phase differences theta_k in radians, comma separated")->delimiter(',');
    app.add_option("--seed", o.seed, "Base seed")->envname("OAM_BANDIT_SEED")->capture_default_str();
    app.add_option("--out", o.out, "Output file (hom-table, sweep) or directory (simulate)");
    app.add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    app.add_option("--threads", o.threads, "OpenMP threads, 0 = all cores")->capture_default_str();
    app.add_option("--grid", o.grid, "Sweep environments: p1,p2,p3;p1,p2,p3;...");
    app.add_flag("--require-equal", o.require_equal, "hom-table: fail unless all cross-side pairs are equal");
}

std::vector<double> parse_number_list(const std::string& text, const std::string& field) {
    std::vector<double> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            throw InvalidConfiguration(field + ": '" + item + "' is not a number");
        }
        if (used != item.size() && item.find_first_not_of(" \t", used) != std::string::npos) {
            throw InvalidConfiguration(field + ": '" + item + "' is not a number");
        }
        values.push_back(v);
    }
    if (values.empty()) throw InvalidConfiguration(field + ": empty list");
    return values;
}

std::vector<std::vector<double>> parse_grid(const std::string& text) {
    std::vector<std::vector<double>> envs;
    std::stringstream ss(text);
    std::string row;
    while (std::getline(ss, row, ';')) {
        if (row.find_first_not_of(" \t") == std::string::npos) continue;
        envs.push_back(parse_number_list(row, "grid"));
    }
    if (envs.empty()) throw InvalidConfiguration("grid: no environments given");
    for (const auto& env : envs) {
        if (env.size() != envs.front().size()) throw InvalidConfiguration("grid: environments differ in length");
    }
    return envs;
}

ExperimentConfig experiment_config(const CliOptions& o) {
    ExperimentConfig cfg;
    if (o.probs_opt->count() > 0) {
        if (o.arms_opt->count() > 0 && static_cast<std::size_t>(o.arms) != o.probs.size()) {
            throw InvalidConfiguration("probs: expected " + std::to_string(o.arms) + " values for --arms, got " +
                                       std::to_string(o.probs.size()));
        }
    } else if (o.arms_opt->count() > 0 && o.arms != 3) {
        throw InvalidConfiguration("probs: --arms " + std::to_string(o.arms) +
                                   " needs --probs with that many values (defaults exist only for 3 arms)");
    }
    cfg.probs = o.probs;
    cfg.horizon = o.trials;
    cfg.reps = o.reps;
    cfg.beta = o.beta;
    cfg.players = o.players;
    cfg.policy = parse_policy(o.policy);
    cfg.coupling = parse_coupling(o.coupling);
    cfg.theta = o.theta;
    cfg.seed = o.seed;
    cfg.threads = o.threads;
    cfg.validate();
    return cfg;
}

/// Writes via `emit` to the --out file, or to `out` when no file is given.
template <typename Emit>
void emit_to(const std::string& path, std::ostream& out, Emit emit) {
    if (path.empty()) {
        emit(out);
        return;
    }
    const std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream file(p);
    if (!file) throw std::runtime_error("cannot open output file " + path);
    emit(file);
}

int cmd_hom_table(const CliOptions& o, std::ostream& out, std::ostream& err) {
    const int k = o.arms;
    if (k < 1 || k > kMaxHomArms) {
        throw InvalidConfiguration("arms: hom-table supports 1.." + std::to_string(kMaxHomArms) + ", got " +
                                   std::to_string(k));
    }
    std::vector<double> theta = o.theta;
    if (!theta.empty() && theta.size() != static_cast<std::size_t>(k)) {
        throw InvalidConfiguration("theta: expected " + std::to_string(k) + " angles, got " +
                                   std::to_string(theta.size()));
    }
    if (o.require_equal) {
        if (k >= 4) canonical_equal_phases(k);  // throws Unachievable
    }
    if (theta.empty()) {
        if (k <= 3) {
            theta = canonical_equal_phases(k);
        } else {
            theta.assign(static_cast<std::size_t>(k), 0.0);
            err << "warning: no equalizing phases exist for K = " << k << "; using theta = 0\n";
        }
    }
    const TwoPhotonDistribution dist = outcome_distribution_from_theta(theta);
    if (o.require_equal && k > 1) {
        const SquareMatrix cross = cross_side_matrix(theta);
        const double ref = cross(0, 1);
        for (int i = 0; i < k; ++i) {
            for (int j = 0; j < k; ++j) {
                if (i != j && std::abs(cross(i, j) - ref) > kEqualTolerance) {
                    throw Unachievable("theta does not equalize the cross-side probabilities");
                }
            }
        }
    }
    emit_to(o.out, out, [&](std::ostream& os) {
        if (o.format == "json") {
            os << to_json(dist).dump(2) << '\n';
        } else {
            write_csv(os, dist);
        }
    });
    return kExitOk;
}

int cmd_simulate(const CliOptions& o, std::ostream& out) {
    const ExperimentConfig cfg = experiment_config(o);
    const MetricsSeries m = run_experiment(cfg);

    const std::filesystem::path dir = o.out.empty() ? std::filesystem::path(".") : std::filesystem::path(o.out);
    std::filesystem::create_directories(dir);
    const std::string stem = output_stem(cfg);

    nlohmann::json summary = summary_json(cfg, m);
    if (o.format == "json") {
        summary["series"] = series_json(m);
    } else {
        std::ofstream csv(dir / (stem + ".csv"));
        if (!csv) throw std::runtime_error("cannot open " + (dir / (stem + ".csv")).string());
        write_series_csv(csv, m);
        out << "wrote " << (dir / (stem + ".csv")).string() << '\n';
    }
    {
        std::ofstream js(dir / (stem + ".json"));
        if (!js) throw std::runtime_error("cannot open " + (dir / (stem + ".json")).string());
        js << summary.dump(2) << '\n';
    }
    out << "wrote " << (dir / (stem + ".json")).string() << '\n';

    out << std::setprecision(6);
    if (cfg.players == 1) {
        out << "final_cdr=" << tail_mean(m.cdr) << " final_reward=" << tail_mean(m.reward_total)
            << (m.tied_best ? " tied_best=1" : "") << '\n';
    } else {
        out << "policy=" << to_string(cfg.policy) << " total_reward=" << tail_mean(m.reward_total)
            << " reward_a=" << tail_mean(m.reward_a) << " reward_b=" << tail_mean(m.reward_b)
            << " conflicts=" << m.conflicts << '\n';
    }
    return kExitOk;
}

int cmd_sweep(const CliOptions& o, std::ostream& out) {
    const std::vector<std::vector<double>> envs =
        o.grid.empty() ? std::vector<std::vector<double>>{{0.9, 0.3, 0.1}, {0.9, 0.5, 0.1}, {0.9, 0.7, 0.1}}
                       : parse_grid(o.grid);
    ExperimentConfig base = experiment_config(o);
    base.players = 2;
    for (const auto& env : envs) {
        ExperimentConfig probe = base;
        probe.probs = env;
        probe.policy = PolicyKind::Quantum;
        if (probe.theta.size() != env.size()) probe.theta.clear();
        probe.validate();
    }
    const std::vector<SweepRow> rows = sweep_environments(base, envs);
    emit_to(o.out, out, [&](std::ostream& os) { write_sweep_csv(os, rows); });
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Photonic OAM decision making for multi-armed bandits", "oam_bandit"};
    app.set_config("--config", "", "Flat key=value file mirroring the long flags; flags win");
    app.require_subcommand(1, 1);

    CliOptions opts;
    add_options(app, opts);
    CLI::App* hom = app.add_subcommand("hom-table", "Two-photon interference outcome table");
    CLI::App* sim = app.add_subcommand("simulate", "Run a single- or two-player bandit simulation");
    CLI::App* sweep = app.add_subcommand("sweep", "Compare two-player policies over an environment grid");
    for (CLI::App* sub : {hom, sim, sweep}) sub->fallthrough();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (hom->parsed()) return cmd_hom_table(opts, out, err);
        if (sim->parsed()) return cmd_simulate(opts, out);
        return cmd_sweep(opts, out);
    } catch (const InvalidConfiguration& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Unsupported& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitRuntime;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
}

}  // namespace oambandit
