#include "oambandit/experiments.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <exception>
#include <limits>
#include <optional>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "oambandit/detection.hpp"
#include "oambandit/error.hpp"
#include "oambandit/oam_core.hpp"

namespace oambandit {

void ExperimentConfig::validate() const {
    if (probs.empty()) throw InvalidConfiguration("probs: at least one arm is required");
    for (std::size_t k = 0; k < probs.size(); ++k) {
        if (!(probs[k] >= 0.0 && probs[k] <= 1.0)) {
            throw InvalidConfiguration("probs: entry " + std::to_string(k + 1) + " = " + std::to_string(probs[k]) +
                                       " outside [0, 1]");
        }
    }
    if (horizon < 1) throw InvalidConfiguration("trials: horizon must be >= 1");
    if (reps < 1) throw InvalidConfiguration("reps: repetition count must be >= 1");
    if (!(beta >= 0.0) || !std::isfinite(beta)) throw InvalidConfiguration("beta: must be finite and >= 0");
    if (players != 1 && players != 2) throw InvalidConfiguration("players: must be 1 or 2");
    if (players == 1 && policy != PolicyKind::Greedy) {
        throw InvalidConfiguration("policy: a single player only supports greedy");
    }
    if (players == 2 && policy != PolicyKind::Greedy && probs.size() != 3) {
        throw InvalidConfiguration("arms: the " + std::string(to_string(policy)) +
                                   " policy is defined for exactly 3 arms");
    }
    if (!theta.empty() && theta.size() != probs.size()) {
        throw InvalidConfiguration("theta: expected " + std::to_string(probs.size()) + " angles, got " +
                                   std::to_string(theta.size()));
    }
    if (threads < 0) throw InvalidConfiguration("threads: must be >= 0");
}

namespace {

/// Integer counts for one or more repetitions; addition is exact, so merge
/// order never changes the result.
struct Tally {
    std::size_t arms;
    std::size_t horizon;
    std::size_t players;
    std::vector<std::uint64_t> selections;  // [player][t][arm]
    std::vector<std::uint64_t> pairs;       // [t][a][b], two players only
    std::vector<std::uint64_t> half_rewards;  // [player][t], reward in units of 1/2

    Tally(std::size_t k, std::size_t t, std::size_t p)
        : arms(k), horizon(t), players(p), selections(p * t * k, 0), pairs(p == 2 ? t * k * k : 0, 0),
          half_rewards(p * t, 0) {}

    void merge(const Tally& other) {
        for (std::size_t i = 0; i < selections.size(); ++i) selections[i] += other.selections[i];
        for (std::size_t i = 0; i < pairs.size(); ++i) pairs[i] += other.pairs[i];
        for (std::size_t i = 0; i < half_rewards.size(); ++i) half_rewards[i] += other.half_rewards[i];
    }
};

/// Immutable per-run setup shared by every repetition.
struct Prepared {
    ExperimentConfig cfg;
    Environment env;
    SoftmaxParams params;
    DetectionChain detector;
    std::optional<CoincidenceChain> coincidence;

    explicit Prepared(const ExperimentConfig& c)
        : cfg(c), env(c.probs), params{c.beta},
          detector(slm_state(std::vector<double>(c.probs.size(), 0.0), +1)) {
        if (c.players == 2 && c.policy == PolicyKind::Quantum && c.coupling == Coupling::Physical) {
            const std::vector<double> theta =
                c.theta.empty() ? canonical_equal_phases(static_cast<int>(c.probs.size())) : c.theta;
            coincidence.emplace(theta);
        }
    }
};

SelectionProbs player_probs(const Prepared& prep, const Estimates& est) {
    if (prep.cfg.players == 1) return softmax_probs(est, prep.params);
    switch (prep.cfg.policy) {
        case PolicyKind::Greedy: return softmax_probs(est, prep.params);
        case PolicyKind::Equilibrium: return equilibrium_select_probs(est, prep.params);
        case PolicyKind::Quantum: return qi_marginals(est, prep.params);
    }
    return softmax_probs(est, prep.params);
}

std::array<std::size_t, 2> choose_pair(const Prepared& prep, const Estimates& est_a, const Estimates& est_b,
                                       Rng& rng) {
    const SelectionProbs s_a = player_probs(prep, est_a);
    const SelectionProbs s_b = player_probs(prep, est_b);
    if (prep.cfg.policy != PolicyKind::Quantum) {
        const std::size_t a = prep.detector.select(attenuators_from_probs(s_a), rng).arm;
        const std::size_t b = prep.detector.select(attenuators_from_probs(s_b), rng).arm;
        return {a, b};
    }
    if (prep.coincidence) {
        const PairDetection hit =
            prep.coincidence->select(attenuators_from_probs(s_a), attenuators_from_probs(s_b), rng);
        return {hit.arm_a, hit.arm_b};
    }
    const SquareMatrix joint = qi_joint_abstract(s_a, s_b);
    const std::size_t cell = sample_index(joint.values(), 1.0, rng);
    return {cell / joint.size(), cell % joint.size()};
}

void run_repetition(const Prepared& prep, std::uint64_t rep, Tally& tally) {
    const std::size_t k = tally.arms;
    const std::size_t horizon = tally.horizon;
    const std::size_t players = tally.players;
    Rng rng = make_stream(prep.cfg.seed, rep);

    std::vector<History> histories(players, History(k, horizon));
    std::vector<Estimates> est(players);
    std::array<std::size_t, 2> picks{};
    std::array<double, 2> rewards{};

    std::size_t t = 0;
    try {
        for (; t < horizon; ++t) {
            for (std::size_t p = 0; p < players; ++p) histories[p].estimate_into(est[p]);
            if (players == 1) {
                const SelectionProbs s = softmax_probs(est[0], prep.params);
                picks[0] = prep.detector.select(attenuators_from_probs(s), rng).arm;
            } else {
                picks = choose_pair(prep, est[0], est[1], rng);
            }
            settle_round(prep.env, std::span<const std::size_t>(picks.data(), players), rng,
                         std::span<double>(rewards.data(), players));
            for (std::size_t p = 0; p < players; ++p) {
                histories[p].record(picks[p], rewards[p]);
                tally.selections[(p * horizon + t) * k + picks[p]] += 1;
                tally.half_rewards[p * horizon + t] += static_cast<std::uint64_t>(std::lround(rewards[p] * 2.0));
            }
            if (players == 2) tally.pairs[(t * k + picks[0]) * k + picks[1]] += 1;
        }
    } catch (const DeadChannel& e) {
        throw DeadChannel(std::string(e.what()) + " at round " + std::to_string(t + 1) + " of repetition " +
                          std::to_string(rep));
    }
}

MetricsSeries finalize(const Prepared& prep, const Tally& tally) {
    const std::size_t k = tally.arms;
    const std::size_t horizon = tally.horizon;
    const std::size_t players = tally.players;
    const double reps = static_cast<double>(prep.cfg.reps);

    MetricsSeries m;
    m.arms = k;
    m.horizon = horizon;
    m.players = players;
    m.reps = prep.cfg.reps;
    m.best_arm = prep.env.best_arm();
    m.tied_best = prep.env.has_tied_best();

    m.select_prob.assign(players, std::vector<double>(horizon * k));
    for (std::size_t p = 0; p < players; ++p) {
        for (std::size_t i = 0; i < horizon * k; ++i) {
            m.select_prob[p][i] = static_cast<double>(tally.selections[p * horizon * k + i]) / reps;
        }
    }
    m.cdr.assign(horizon, 0.0);
    for (std::size_t t = 0; t < horizon; ++t) {
        double sum = 0.0;
        for (std::size_t p = 0; p < players; ++p) sum += m.selection(p, t, m.best_arm);
        m.cdr[t] = sum / static_cast<double>(players);
    }

    auto half_to_mean = [&](std::size_t p, std::size_t t) {
        return static_cast<double>(tally.half_rewards[p * horizon + t]) / (2.0 * reps);
    };
    m.reward_a.resize(horizon);
    m.reward_b.assign(horizon, 0.0);
    m.reward_total.resize(horizon);
    for (std::size_t t = 0; t < horizon; ++t) {
        m.reward_a[t] = half_to_mean(0, t);
        if (players == 2) m.reward_b[t] = half_to_mean(1, t);
        // Summed in integer units so the total is exact.
        std::uint64_t total = tally.half_rewards[t];
        if (players == 2) total += tally.half_rewards[horizon + t];
        m.reward_total[t] = static_cast<double>(total) / (2.0 * reps);
    }

    if (players == 2) {
        m.pair_prob.resize(horizon * k * k);
        m.conflict_rate.assign(horizon, 0.0);
        std::vector<std::uint64_t> pooled(k * k, 0);
        for (std::size_t t = 0; t < horizon; ++t) {
            std::uint64_t same = 0;
            for (std::size_t a = 0; a < k; ++a) {
                for (std::size_t b = 0; b < k; ++b) {
                    const std::uint64_t c = tally.pairs[(t * k + a) * k + b];
                    m.pair_prob[(t * k + a) * k + b] = static_cast<double>(c) / reps;
                    pooled[a * k + b] += c;
                    if (a == b) same += c;
                }
            }
            m.conflict_rate[t] = static_cast<double>(same) / reps;
            m.conflicts += same;
        }
        m.conflict_matrix = SquareMatrix(k);
        const double all = reps * static_cast<double>(horizon);
        for (std::size_t a = 0; a < k; ++a) {
            for (std::size_t b = 0; b < k; ++b) m.conflict_matrix(a, b) = static_cast<double>(pooled[a * k + b]) / all;
        }
    }
    return m;
}

Tally run_serial(const Prepared& prep) {
    Tally tally(prep.cfg.arms(), prep.cfg.horizon, static_cast<std::size_t>(prep.cfg.players));
    for (std::uint64_t rep = 0; rep < prep.cfg.reps; ++rep) run_repetition(prep, rep, tally);
    return tally;
}

Tally run_parallel(const Prepared& prep) {
#ifdef _OPENMP
    const std::size_t k = prep.cfg.arms();
    const std::size_t horizon = prep.cfg.horizon;
    const std::size_t players = static_cast<std::size_t>(prep.cfg.players);
    const long long reps = static_cast<long long>(prep.cfg.reps);
    const int threads = prep.cfg.threads > 0 ? prep.cfg.threads : omp_get_max_threads();

    Tally total(k, horizon, players);
    std::exception_ptr failure;
    long long failed_rep = std::numeric_limits<long long>::max();

#pragma omp parallel num_threads(threads)
    {
        Tally local(k, horizon, players);
#pragma omp for schedule(dynamic, 4)
        for (long long rep = 0; rep < reps; ++rep) {
            try {
                run_repetition(prep, static_cast<std::uint64_t>(rep), local);
            } catch (...) {
#pragma omp critical(oambandit_failure)
                {
                    // Report the lowest failing repetition, as the serial path would.
                    if (rep < failed_rep) {
                        failed_rep = rep;
                        failure = std::current_exception();
                    }
                }
            }
        }
#pragma omp critical(oambandit_merge)
        total.merge(local);
    }
    if (failure) std::rethrow_exception(failure);
    return total;
#else
    return run_serial(prep);
#endif
}

}  // namespace

double tail_mean(std::span<const double> series, std::size_t window) {
    if (series.empty()) return 0.0;
    const std::size_t n = std::min(window, series.size());
    double sum = 0.0;
    for (std::size_t i = series.size() - n; i < series.size(); ++i) sum += series[i];
    return sum / static_cast<double>(n);
}

double tail_selection(const MetricsSeries& m, std::size_t player, std::size_t arm, std::size_t window) {
    const std::size_t n = std::min(window, m.horizon);
    double sum = 0.0;
    for (std::size_t t = m.horizon - n; t < m.horizon; ++t) sum += m.selection(player, t, arm);
    return sum / static_cast<double>(n);
}

MetricsSeries run_experiment(const ExperimentConfig& cfg, Execution mode) {
    cfg.validate();
    const Prepared prep(cfg);
    const Tally tally = mode == Execution::Serial ? run_serial(prep) : run_parallel(prep);
    return finalize(prep, tally);
}

MetricsSeries run_single_player(const ExperimentConfig& cfg, Execution mode) {
    if (cfg.players != 1) throw InvalidConfiguration("players: run_single_player requires players = 1");
    return run_experiment(cfg, mode);
}

MetricsSeries run_two_player(const ExperimentConfig& cfg, Execution mode) {
    if (cfg.players != 2) throw InvalidConfiguration("players: run_two_player requires players = 2");
    return run_experiment(cfg, mode);
}

double expected_total_reward(std::span<const double> strategy_a, std::span<const double> strategy_b,
                             const Environment& env) {
    if (strategy_a.size() != env.arms() || strategy_b.size() != env.arms()) {
        throw InvalidConfiguration("strategy length does not match the environment");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < env.arms(); ++i) {
        total += env[i] * (1.0 - (1.0 - strategy_a[i]) * (1.0 - strategy_b[i]));
    }
    return total;
}

double expected_total_reward(const MixedStrategy& a, const MixedStrategy& b, const Environment& env) {
    return expected_total_reward(a.alpha, b.alpha, env);
}

std::vector<SweepRow> sweep_environments(const ExperimentConfig& base, std::span<const std::vector<double>> envs,
                                         Execution mode) {
    if (envs.empty()) throw InvalidConfiguration("grid: at least one environment is required");
    std::vector<SweepRow> rows;
    rows.reserve(envs.size());
    for (const auto& probs : envs) {
        SweepRow row;
        row.probs = probs;
        for (const PolicyKind kind : {PolicyKind::Greedy, PolicyKind::Equilibrium, PolicyKind::Quantum}) {
            ExperimentConfig cfg = base;
            cfg.probs = probs;
            cfg.players = 2;
            cfg.policy = kind;
            if (cfg.theta.size() != probs.size()) cfg.theta.clear();
            const double final_total = tail_mean(run_two_player(cfg, mode).reward_total);
            switch (kind) {
                case PolicyKind::Greedy: row.greedy = final_total; break;
                case PolicyKind::Equilibrium: row.equilibrium = final_total; break;
                case PolicyKind::Quantum: row.quantum = final_total; break;
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace oambandit
