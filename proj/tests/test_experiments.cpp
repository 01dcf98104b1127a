#include <gtest/gtest.h>

#include <numeric>

#include "oambandit/error.hpp"
#include "oambandit/experiments.hpp"

namespace oambandit {
namespace {

ExperimentConfig small_config(PolicyKind policy, int players) {
    ExperimentConfig cfg;
    cfg.horizon = 150;
    cfg.reps = 120;
    cfg.players = players;
    cfg.policy = policy;
    cfg.seed = 7;
    return cfg;
}

TEST(ExperimentConfig, ValidationNamesField) {
    auto expect_field = [](ExperimentConfig cfg, const std::string& field) {
        try {
            cfg.validate();
            ADD_FAILURE() << "no error for " << field;
        } catch (const InvalidConfiguration& e) {
            EXPECT_NE(std::string(e.what()).find(field), std::string::npos) << e.what();
        }
    };
    ExperimentConfig cfg;
    cfg.probs = {0.5, 1.2, 0.1};
    expect_field(cfg, "probs");
    cfg = {};
    cfg.horizon = 0;
    expect_field(cfg, "trials");
    cfg = {};
    cfg.reps = 0;
    expect_field(cfg, "reps");
    cfg = {};
    cfg.beta = -1.0;
    expect_field(cfg, "beta");
    cfg = {};
    cfg.players = 3;
    expect_field(cfg, "players");
    cfg = {};
    cfg.policy = PolicyKind::Quantum;
    expect_field(cfg, "policy");
    cfg = small_config(PolicyKind::Equilibrium, 2);
    cfg.probs = {0.9, 0.7, 0.1, 0.2};
    expect_field(cfg, "arms");
    cfg = small_config(PolicyKind::Quantum, 2);
    cfg.theta = {0.0, 1.0};
    expect_field(cfg, "theta");
}

class BothModes : public ::testing::TestWithParam<std::tuple<PolicyKind, int>> {};

TEST_P(BothModes, SerialAndParallelAreBitIdentical) {
    const auto [policy, players] = GetParam();
    const auto cfg = small_config(policy, players);
    const auto serial = run_experiment(cfg, Execution::Serial);
    const auto parallel = run_experiment(cfg, Execution::Parallel);
    EXPECT_TRUE(serial == parallel);
    auto threaded = cfg;
    threaded.threads = 3;
    EXPECT_TRUE(run_experiment(threaded, Execution::Parallel) == serial);
}

TEST_P(BothModes, SameSeedSameResultDifferentSeedDiffers) {
    const auto [policy, players] = GetParam();
    auto cfg = small_config(policy, players);
    const auto a = run_experiment(cfg);
    EXPECT_TRUE(run_experiment(cfg) == a);
    cfg.seed = 8;
    EXPECT_FALSE(run_experiment(cfg) == a);
}

TEST_P(BothModes, SelectionFrequenciesSumToOne) {
    const auto [policy, players] = GetParam();
    const auto m = run_experiment(small_config(policy, players));
    ASSERT_EQ(m.select_prob.size(), static_cast<std::size_t>(players));
    for (std::size_t p = 0; p < m.players; ++p) {
        for (std::size_t t = 0; t < m.horizon; ++t) {
            double s = 0.0;
            for (std::size_t k = 0; k < m.arms; ++k) s += m.selection(p, t, k);
            EXPECT_NEAR(s, 1.0, 1e-12);
        }
    }
    for (std::size_t t = 0; t < m.horizon; ++t) {
        EXPECT_GE(m.reward_total[t], 0.0);
        EXPECT_LE(m.reward_total[t], static_cast<double>(players));
    }
    if (players == 2) EXPECT_NEAR(m.conflict_matrix.sum(), 1.0, 1e-12);
}

INSTANTIATE_TEST_SUITE_P(Policies, BothModes,
                         ::testing::Values(std::make_tuple(PolicyKind::Greedy, 1),
                                           std::make_tuple(PolicyKind::Greedy, 2),
                                           std::make_tuple(PolicyKind::Equilibrium, 2),
                                           std::make_tuple(PolicyKind::Quantum, 2)));

TEST(SinglePlayer, FirstRoundIsUniform) {
    ExperimentConfig cfg;
    cfg.horizon = 1;
    cfg.reps = 30000;
    cfg.seed = 3;
    const auto m = run_single_player(cfg);
    for (std::size_t k = 0; k < 3; ++k) EXPECT_NEAR(m.selection(0, 0, k), 1.0 / 3.0, 0.015);
}

TEST(SinglePlayer, TiedBestIsFlagged) {
    ExperimentConfig cfg = small_config(PolicyKind::Greedy, 1);
    cfg.probs = {0.6, 0.6, 0.1};
    const auto m = run_single_player(cfg);
    EXPECT_TRUE(m.tied_best);
    EXPECT_EQ(m.best_arm, 0u);
    EXPECT_FALSE(run_single_player(small_config(PolicyKind::Greedy, 1)).tied_best);
}

TEST(SinglePlayer, CdrIsBestArmSelection) {
    const auto m = run_single_player(small_config(PolicyKind::Greedy, 1));
    for (std::size_t t = 0; t < m.horizon; ++t) EXPECT_EQ(m.cdr[t], m.selection(0, t, m.best_arm));
    EXPECT_GT(tail_mean(m.cdr, 50), m.cdr[0]);
}

TEST(TwoPlayer, RejectsSinglePlayerConfig) {
    EXPECT_THROW(run_two_player(small_config(PolicyKind::Greedy, 1)), InvalidConfiguration);
}

TEST(TwoPlayer, QuantumNeverConflicts) {
    for (Coupling c : {Coupling::Physical, Coupling::Abstract}) {
        auto cfg = small_config(PolicyKind::Quantum, 2);
        cfg.coupling = c;
        const auto m = run_two_player(cfg);
        EXPECT_EQ(m.conflicts, 0u);
        for (double r : m.conflict_rate) EXPECT_EQ(r, 0.0);
        for (std::size_t k = 0; k < 3; ++k) EXPECT_EQ(m.conflict_matrix(k, k), 0.0);
    }
}

TEST(TwoPlayer, QuantumPlayersShareRewardsEvenly) {
    auto cfg = small_config(PolicyKind::Quantum, 2);
    cfg.reps = 2000;
    const auto m = run_two_player(cfg);
    EXPECT_NEAR(tail_mean(m.reward_a), tail_mean(m.reward_b), 0.03);
}

TEST(TwoPlayer, GreedyConflictsAreCountedConsistently) {
    const auto m = run_two_player(small_config(PolicyKind::Greedy, 2));
    double pooled_diag = 0.0;
    for (std::size_t k = 0; k < 3; ++k) pooled_diag += m.conflict_matrix(k, k);
    const double mean_rate = std::accumulate(m.conflict_rate.begin(), m.conflict_rate.end(), 0.0) / m.horizon;
    EXPECT_NEAR(pooled_diag, mean_rate, 1e-12);
    EXPECT_NEAR(static_cast<double>(m.conflicts), mean_rate * m.horizon * m.reps, 1e-6);
    EXPECT_GT(m.conflicts, 0u);
}

TEST(ExpectedTotalReward, Examples) {
    const Environment env({0.9, 0.7, 0.1});
    const std::vector<double> arm1{1, 0, 0};
    const std::vector<double> arm2{0, 1, 0};
    EXPECT_NEAR(expected_total_reward(arm1, arm2, env), 1.6, 1e-15);
    EXPECT_NEAR(expected_total_reward(arm1, arm1, env), 0.9, 1e-15);
    const MixedStrategy nash{{0.6875, 0.3125, 0.0}};
    EXPECT_NEAR(expected_total_reward(nash, nash, env), 1.18125, 1e-14);
    EXPECT_NEAR(expected_total_reward(nash_mixed_strategy(env.probs()), nash_mixed_strategy(env.probs()), env),
                1.18125, 1e-12);
}

TEST(TwoPlayer, EquilibriumTotalApproachesNashOracle) {
    auto cfg = small_config(PolicyKind::Equilibrium, 2);
    cfg.horizon = 1000;
    cfg.reps = 1000;
    cfg.seed = 42;
    const auto m = run_two_player(cfg);
    const Environment env(cfg.probs);
    const auto nash = nash_mixed_strategy(cfg.probs);
    EXPECT_NEAR(tail_mean(m.reward_total), expected_total_reward(nash, nash, env), 0.05);
}

TEST(TailMean, Window) {
    const std::vector<double> v{1, 2, 3, 4};
    EXPECT_DOUBLE_EQ(tail_mean(v, 2), 3.5);
    EXPECT_DOUBLE_EQ(tail_mean(v, 10), 2.5);
}

TEST(Sweep, DuplicateEnvironmentsGiveIdenticalRows) {
    ExperimentConfig base = small_config(PolicyKind::Greedy, 2);
    base.reps = 60;
    const std::vector<std::vector<double>> envs{{0.9, 0.5, 0.1}, {0.9, 0.5, 0.1}};
    const auto rows = sweep_environments(base, envs);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0].greedy, rows[1].greedy);
    EXPECT_EQ(rows[0].equilibrium, rows[1].equilibrium);
    EXPECT_EQ(rows[0].quantum, rows[1].quantum);
    EXPECT_EQ(rows[0].probs, envs[0]);
}

}  // namespace
}  // namespace oambandit
