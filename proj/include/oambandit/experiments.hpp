#pragma once

// Monte Carlo harness for the single-player and two-player bandit runs.
//
// Every repetition draws from its own stream make_stream(seed, rep) and adds
// integer counts into a tally, so the OpenMP driver and the serial reference
// produce bit-identical metrics for any thread count or schedule.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "oambandit/bandit.hpp"
#include "oambandit/matrix.hpp"
#include "oambandit/policies.hpp"

namespace oambandit {

struct ExperimentConfig {
    std::vector<double> probs{0.9, 0.7, 0.1};
    std::uint64_t horizon = 1000;
    std::uint64_t reps = 1000;
    double beta = 20.0;
    int players = 1;
    PolicyKind policy = PolicyKind::Greedy;
    Coupling coupling = Coupling::Physical;
    /// Half phase differences for the interfering source; empty selects the
    /// equalizing phases for K <= 3.
    std::vector<double> theta;
    std::uint64_t seed = 0;
    /// OpenMP thread count, 0 for the runtime default.
    int threads = 0;

    std::size_t arms() const noexcept { return probs.size(); }
    /// Throws InvalidConfiguration naming the offending field.
    void validate() const;
};

enum class Execution { Parallel, Serial };

/// Averages over repetitions, indexed by round t = 0..T-1 and 0-based arm.
struct MetricsSeries {
    std::size_t arms = 0;
    std::size_t horizon = 0;
    std::size_t players = 0;
    std::uint64_t reps = 0;
    std::size_t best_arm = 0;
    bool tied_best = false;

    /// Empirical selection frequency, [player][t * arms + arm].
    std::vector<std::vector<double>> select_prob;
    /// Frequency of the best arm per round, averaged over players.
    std::vector<double> cdr;
    /// Two players only: frequency of (arm_a, arm_b) per round, [t * arms^2 + a * arms + b].
    std::vector<double> pair_prob;
    /// Two players only: pair frequencies pooled over all rounds; sums to one.
    SquareMatrix conflict_matrix;
    /// Two players only: probability both chose the same arm, per round.
    std::vector<double> conflict_rate;
    /// Total number of same-arm selections over all rounds and repetitions.
    std::uint64_t conflicts = 0;
    std::vector<double> reward_a;
    std::vector<double> reward_b;
    std::vector<double> reward_total;

    double selection(std::size_t player, std::size_t t, std::size_t arm) const {
        return select_prob[player][t * arms + arm];
    }
    double pair(std::size_t t, std::size_t arm_a, std::size_t arm_b) const {
        return pair_prob[(t * arms + arm_a) * arms + arm_b];
    }

    friend bool operator==(const MetricsSeries&, const MetricsSeries&) = default;
};

/// Mean of the last `window` entries (all of them if the series is shorter).
double tail_mean(std::span<const double> series, std::size_t window = 100);

/// Mean selection frequency of `arm` by `player` over the last `window` rounds.
double tail_selection(const MetricsSeries& m, std::size_t player, std::size_t arm, std::size_t window = 100);

MetricsSeries run_single_player(const ExperimentConfig& cfg, Execution mode = Execution::Parallel);
MetricsSeries run_two_player(const ExperimentConfig& cfg, Execution mode = Execution::Parallel);
/// Dispatches on cfg.players.
MetricsSeries run_experiment(const ExperimentConfig& cfg, Execution mode = Execution::Parallel);

/// Exact per-round expected total reward when the players mix independently:
/// sum_i P_i * (1 - (1 - a_i)(1 - b_i)). A conflicted win pays one in total.
double expected_total_reward(std::span<const double> strategy_a, std::span<const double> strategy_b,
                             const Environment& env);
double expected_total_reward(const MixedStrategy& a, const MixedStrategy& b, const Environment& env);

struct SweepRow {
    std::vector<double> probs;
    double greedy = 0.0;
    double equilibrium = 0.0;
    double quantum = 0.0;
};

/// Final (last-100-round) mean total reward of every two-player policy per environment.
std::vector<SweepRow> sweep_environments(const ExperimentConfig& base, std::span<const std::vector<double>> envs,
                                         Execution mode = Execution::Parallel);

}  // namespace oambandit
