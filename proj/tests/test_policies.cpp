#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "nash_oracle.hpp"
#include "oambandit/detection.hpp"
#include "oambandit/error.hpp"
#include "oambandit/policies.hpp"

namespace oambandit {
namespace {

// Reference values below were computed with 40-digit mpmath.
constexpr double kSoftmax[3] = {0.98201368151450273, 0.017986207974416048, 1.1051108122593744e-7};
constexpr double kOrdering123 = 0.98200764785098174;
constexpr double kPi11 = 0.98201368151450273;
constexpr double kPi22 = 0.98200764983865725;
constexpr double kPi33 = 0.99999385380131696;
constexpr double kQi[3] = {0.49999999799412183, 0.49999692890653665, 3.0730993415219377e-6};

Estimates make_estimates(std::vector<double> p_hat) {
    Estimates e;
    e.tried.assign(p_hat.size(), true);
    e.p_hat = std::move(p_hat);
    return e;
}

double sum(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
}

TEST(PolicyNames, RoundTrip) {
    for (auto k : {PolicyKind::Greedy, PolicyKind::Equilibrium, PolicyKind::Quantum}) {
        EXPECT_EQ(parse_policy(to_string(k)), k);
    }
    EXPECT_EQ(parse_coupling("abstract"), Coupling::Abstract);
    EXPECT_THROW(parse_policy("random"), InvalidConfiguration);
    EXPECT_THROW(parse_coupling("magic"), InvalidConfiguration);
}

TEST(Softmax, ReferenceValues) {
    const auto s = softmax_probs(make_estimates({0.9, 0.7, 0.1}), {20.0});
    for (int k = 0; k < 3; ++k) EXPECT_NEAR(s[k], kSoftmax[k], 1e-15);
}

TEST(Softmax, UniformCases) {
    for (double p : softmax_probs(make_estimates({0.4, 0.4, 0.4}), {20.0})) EXPECT_NEAR(p, 1.0 / 3.0, 1e-15);
    for (double p : softmax_probs(make_estimates({0.9, 0.2, 0.5}), {0.0})) EXPECT_NEAR(p, 1.0 / 3.0, 1e-15);
    Estimates partial = make_estimates({1.0, 0.0, 0.0});
    partial.tried[2] = false;
    for (double p : softmax_probs(partial, {20.0})) EXPECT_EQ(p, 1.0 / 3.0);
}

TEST(Softmax, ShiftInvariantAndArgmaxPreserving) {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(0.0, 0.8);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t k = 2 + trial % 6;
        std::vector<double> p(k);
        for (double& x : p) x = u(rng);
        const double c = u(rng) / 4.0;
        std::vector<double> shifted = p;
        for (double& x : shifted) x += c;
        const auto s = softmax_probs(make_estimates(p), {20.0});
        const auto t = softmax_probs(make_estimates(shifted), {20.0});
        for (std::size_t i = 0; i < k; ++i) EXPECT_NEAR(s[i], t[i], 1e-12);
        EXPECT_EQ(std::max_element(s.begin(), s.end()) - s.begin(), std::max_element(p.begin(), p.end()) - p.begin());
        EXPECT_NEAR(sum(s), 1.0, 1e-12);
    }
}

TEST(Attenuators, ReferenceValues) {
    const auto d = attenuators_from_probs(std::vector<double>{0.5, 0.3, 0.2});
    EXPECT_EQ(d[0], 1.0);
    EXPECT_NEAR(d[1], 0.77459666924148338, 1e-15);
    EXPECT_NEAR(d[2], 0.63245553203367587, 1e-15);

    const auto flat = attenuators_from_probs(std::vector<double>{0.25, 0.25, 0.25, 0.25});
    for (double v : flat.transmittance()) EXPECT_EQ(v, 1.0);

    const auto sharp = attenuators_from_probs(std::vector<double>(kSoftmax, kSoftmax + 3));
    EXPECT_EQ(sharp[0], 1.0);
    EXPECT_NEAR(sharp[1], 0.13533528323661269, 1e-12);
    EXPECT_NEAR(sharp[2], 0.00033546262790251184, 1e-15);
}

TEST(Attenuators, RejectsDegenerateInput) {
    EXPECT_THROW(attenuators_from_probs(std::vector<double>{0.0, 0.0}), InvalidConfiguration);
    EXPECT_THROW(attenuators_from_probs(std::vector<double>{}), InvalidConfiguration);
}

TEST(Attenuators, DetectionRoundTripReproducesProbabilities) {
    std::mt19937_64 rng(22);
    std::gamma_distribution<double> g(0.5);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t k = 1 + trial % 8;
        std::vector<double> s(k);
        for (double& x : s) x = g(rng) + 1e-300;
        const double total = sum(s);
        for (double& x : s) x /= total;
        const DetectionChain chain(slm_state(std::vector<double>(k, 0.0)));
        const auto bank = attenuators_from_probs(s);
        EXPECT_TRUE(bank.normalized());
        const auto back = chain.conditional_distribution(bank);
        for (std::size_t i = 0; i < k; ++i) EXPECT_NEAR(back[i], s[i], 1e-12);
    }
}

TEST(OrderingProbability, ReferenceValues) {
    const auto est = make_estimates({0.9, 0.7, 0.1});
    EXPECT_NEAR(ordering_probability(est, {20.0}, {0, 1, 2}), kOrdering123, 1e-15);
    const auto flat = make_estimates({0.5, 0.5, 0.5});
    EXPECT_NEAR(ordering_probability(flat, {20.0}, {2, 0, 1}), 1.0 / 6.0, 1e-15);
}

TEST(OrderingProbability, SixOrderingsSumToOne) {
    const auto est = make_estimates({0.3, 0.8, 0.55});
    std::array<std::size_t, 3> o{0, 1, 2};
    double total = 0.0;
    do {
        total += ordering_probability(est, {7.0}, o);
    } while (std::next_permutation(o.begin(), o.end()));
    EXPECT_NEAR(total, 1.0, 1e-14);
}

TEST(OrderingProbability, Errors) {
    EXPECT_THROW(ordering_probability(make_estimates({0.1, 0.2}), {20.0}, {0, 1, 2}), Unsupported);
    EXPECT_THROW(ordering_probability(make_estimates({0.1, 0.2, 0.3}), {20.0}, {0, 0, 2}), InvalidConfiguration);
}

TEST(RankProbabilities, ReferenceValuesAndDoublyStochastic) {
    const auto pi = rank_probabilities(make_estimates({0.9, 0.7, 0.1}), {20.0});
    EXPECT_NEAR(pi[0][0], kPi11, 1e-15);
    EXPECT_NEAR(pi[1][1], kPi22, 1e-15);
    EXPECT_NEAR(pi[2][2], kPi33, 1e-15);

    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        const auto r = rank_probabilities(make_estimates({u(rng), u(rng), u(rng)}), {20.0 * u(rng)});
        for (std::size_t i = 0; i < 3; ++i) {
            EXPECT_NEAR(r[i][0] + r[i][1] + r[i][2], 1.0, 1e-9);
            EXPECT_NEAR(r[0][i] + r[1][i] + r[2][i], 1.0, 1e-9);
        }
    }
    for (const auto& row : rank_probabilities(make_estimates({0.2, 0.2, 0.2}), {20.0})) {
        for (double v : row) EXPECT_NEAR(v, 1.0 / 3.0, 1e-15);
    }
    EXPECT_THROW(rank_probabilities(make_estimates({0.1, 0.2, 0.3, 0.4}), {20.0}), Unsupported);
}

TEST(Nash, CaseOnePureBestArm) {
    const auto s = nash_mixed_strategy(std::vector<double>{0.9, 0.3, 0.1});
    EXPECT_EQ(s.alpha, (std::array<double, 3>{1.0, 0.0, 0.0}));
}

TEST(Nash, CaseTwoTopTwoMix) {
    const auto s = nash_mixed_strategy(std::vector<double>{0.9, 0.7, 0.1});
    EXPECT_NEAR(s.alpha[0], 0.6875, 1e-12);
    EXPECT_NEAR(s.alpha[1], 0.3125, 1e-12);
    EXPECT_EQ(s.alpha[2], 0.0);
}

TEST(Nash, CaseThreeFullMix) {
    const auto s = nash_mixed_strategy(std::vector<double>{0.5, 0.45, 0.4});
    EXPECT_NEAR(s.alpha[0], 0.51239669421487603, 1e-12);
    EXPECT_NEAR(s.alpha[1], 0.34710743801652893, 1e-12);
    EXPECT_NEAR(s.alpha[2], 0.14049586776859504, 1e-12);
}

TEST(Nash, ReturnsOriginalArmOrder) {
    const auto s = nash_mixed_strategy(std::vector<double>{0.1, 0.9, 0.7});
    EXPECT_EQ(s.alpha[0], 0.0);
    EXPECT_NEAR(s.alpha[1], 0.6875, 1e-12);
    EXPECT_NEAR(s.alpha[2], 0.3125, 1e-12);
}

TEST(Nash, BoundaryAndDegenerateInputs) {
    // P* == 2 P**: mixed branch, which collapses to the pure strategy.
    const auto edge = nash_mixed_strategy(std::vector<double>{0.8, 0.4, 0.1});
    EXPECT_NEAR(edge.alpha[0], 1.0, 1e-12);
    EXPECT_NEAR(edge.alpha[1], 0.0, 1e-12);
    const auto zero = nash_mixed_strategy(std::vector<double>{0.0, 0.0, 0.0});
    for (double a : zero.alpha) EXPECT_NEAR(a, 1.0 / 3.0, 1e-15);
    const auto single = nash_mixed_strategy(std::vector<double>{0.0, 0.6, 0.0});
    EXPECT_EQ(single.alpha, (std::array<double, 3>{0.0, 1.0, 0.0}));
    const auto tie = nash_mixed_strategy(std::vector<double>{0.5, 0.5, 0.0});
    EXPECT_NEAR(tie.alpha[0], 0.5, 1e-15);
    EXPECT_NEAR(tie.alpha[1], 0.5, 1e-15);
    EXPECT_THROW(nash_mixed_strategy(std::vector<double>{0.5, 0.5}), Unsupported);
}

TEST(Nash, RandomTriplesAreSymmetricEquilibria) {
    std::mt19937_64 rng(24);
    std::uniform_real_distribution<double> u(0.05, 0.95);
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<double> p{u(rng), u(rng), u(rng)};
        const auto s = nash_mixed_strategy(p);
        EXPECT_NEAR(sum(s.alpha), 1.0, 1e-12);
        for (double a : s.alpha) EXPECT_GE(a, -1e-12);
        EXPECT_LE(test::best_deviation_gain(s.alpha, p), 1e-9);
    }
}

TEST(Nash, CaseThreeComponentsStrictlyInsideUnitInterval) {
    std::mt19937_64 rng(25);
    std::uniform_real_distribution<double> u(0.05, 0.95);
    int seen = 0;
    while (seen < 200) {
        std::vector<double> p{u(rng), u(rng), u(rng)};
        std::vector<double> sorted = p;
        std::sort(sorted.rbegin(), sorted.rend());
        const double q = sorted[0] * sorted[1] + sorted[1] * sorted[2] + sorted[2] * sorted[0];
        if (sorted[0] > 2 * sorted[1] || sorted[0] * sorted[1] / q >= 0.4) continue;
        ++seen;
        for (double a : nash_mixed_strategy(p).alpha) {
            EXPECT_GT(a, 0.0);
            EXPECT_LT(a, 1.0);
        }
    }
}

TEST(EquilibriumSelect, ConfidentLimitMatchesNash) {
    const auto s = equilibrium_select_probs(make_estimates({0.9, 0.7, 0.1}), {1000.0});
    EXPECT_NEAR(s[0], 0.6875, 1e-12);
    EXPECT_NEAR(s[1], 0.3125, 1e-12);
    EXPECT_NEAR(s[2], 0.0, 1e-12);
}

TEST(EquilibriumSelect, ReferenceAtBetaTwenty) {
    const auto s = equilibrium_select_probs(make_estimates({0.9, 0.7, 0.1}), {20.0});
    EXPECT_NEAR(s[0], 0.68075512931426467, 1e-14);
    EXPECT_NEAR(s[1], 0.31924290855699142, 1e-14);
    EXPECT_NEAR(s[2], 1.9621287439109376e-6, 1e-15);
}

TEST(EquilibriumSelect, SymmetryAndNormalization) {
    for (double v : equilibrium_select_probs(make_estimates({0.6, 0.6, 0.6}), {20.0})) EXPECT_NEAR(v, 1.0 / 3.0, 1e-12);
    std::mt19937_64 rng(26);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        EXPECT_NEAR(sum(equilibrium_select_probs(make_estimates({u(rng), u(rng), u(rng)}), {20.0})), 1.0, 1e-12);
    }
    Estimates untried = make_estimates({0.9, 0.0, 0.1});
    untried.tried[1] = false;
    for (double v : equilibrium_select_probs(untried, {20.0})) EXPECT_EQ(v, 1.0 / 3.0);
    EXPECT_THROW(equilibrium_select_probs(make_estimates({0.9, 0.1}), {20.0}), Unsupported);
}

TEST(QiMarginals, ReferenceAndNormalization) {
    const auto s = qi_marginals(make_estimates({0.9, 0.7, 0.1}), {20.0});
    for (int k = 0; k < 3; ++k) EXPECT_NEAR(s[k], kQi[k], 1e-15);
    for (double v : qi_marginals(make_estimates({0.3, 0.3, 0.3}), {20.0})) EXPECT_NEAR(v, 1.0 / 3.0, 1e-15);
    EXPECT_THROW(qi_marginals(make_estimates({0.9, 0.1}), {20.0}), Unsupported);
}

TEST(QiMarginals, TopTwoCarryMostMassWhenGapsAreWide) {
    std::mt19937_64 rng(27);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int checked = 0;
    while (checked < 300) {
        std::vector<double> p{u(rng), u(rng), u(rng)};
        std::vector<double> sorted = p;
        std::sort(sorted.rbegin(), sorted.rend());
        if (sorted[0] - sorted[1] <= 0.2 || sorted[1] - sorted[2] <= 0.2) continue;
        ++checked;
        const auto s = qi_marginals(make_estimates(p), {20.0});
        EXPECT_NEAR(sum(s), 1.0, 1e-12);
        const Ordering order = rank_arms(p);
        EXPECT_GE(s[order[0]] + s[order[1]], 2.0 / 3.0);
    }
}

TEST(QiJointAbstract, Examples) {
    const auto q = qi_joint_abstract(std::vector<double>{0.5, 0.5, 0.0}, std::vector<double>{0.5, 0.5, 0.0});
    EXPECT_NEAR(q(0, 1), 0.5, 1e-15);
    EXPECT_NEAR(q(1, 0), 0.5, 1e-15);
    const std::vector<double> flat(3, 1.0 / 3.0);
    const auto u = qi_joint_abstract(flat, flat);
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) EXPECT_NEAR(u(i, j), i == j ? 0.0 : 1.0 / 6.0, 1e-15);
    }
    EXPECT_THROW(qi_joint_abstract(std::vector<double>{1, 0, 0}, std::vector<double>{1, 0, 0}), DeadChannel);
}

}  // namespace
}  // namespace oambandit
