#include "oambandit/policies.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "oambandit/error.hpp"

namespace oambandit {

std::string_view to_string(PolicyKind kind) noexcept {
    switch (kind) {
        case PolicyKind::Greedy: return "greedy";
        case PolicyKind::Equilibrium: return "equilibrium";
        case PolicyKind::Quantum: return "quantum";
    }
    return "unknown";
}

std::string_view to_string(Coupling coupling) noexcept {
    switch (coupling) {
        case Coupling::Physical: return "physical";
        case Coupling::Abstract: return "abstract";
    }
    return "unknown";
}

PolicyKind parse_policy(std::string_view name) {
    if (name == "greedy") return PolicyKind::Greedy;
    if (name == "equilibrium") return PolicyKind::Equilibrium;
    if (name == "quantum") return PolicyKind::Quantum;
    throw InvalidConfiguration("policy must be one of greedy, equilibrium, quantum; got '" + std::string(name) + "'");
}

Coupling parse_coupling(std::string_view name) {
    if (name == "physical") return Coupling::Physical;
    if (name == "abstract") return Coupling::Abstract;
    throw InvalidConfiguration("coupling must be physical or abstract; got '" + std::string(name) + "'");
}

namespace {

SelectionProbs uniform(std::size_t arms) {
    return SelectionProbs(arms, 1.0 / static_cast<double>(arms));
}

void require_three_arms(const Estimates& est, const char* what) {
    if (est.arms() != 3) {
        throw Unsupported(std::string(what) + " is defined for exactly 3 arms, got " + std::to_string(est.arms()));
    }
}

}  // namespace

SelectionProbs softmax_probs(const Estimates& est, SoftmaxParams params) {
    const std::size_t n = est.arms();
    if (n == 0) throw InvalidConfiguration("softmax over zero arms");
    if (!(params.beta >= 0.0)) throw InvalidConfiguration("beta must be >= 0");
    if (!est.all_tried()) return uniform(n);

    const double top = *std::max_element(est.p_hat.begin(), est.p_hat.end());
    SelectionProbs s(n);
    double total = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        s[k] = std::exp(params.beta * (est.p_hat[k] - top));
        total += s[k];
    }
    for (double& v : s) v /= total;
    return s;
}

AttenuatorBank attenuators_from_probs(std::span<const double> probs) {
    if (probs.empty()) throw InvalidConfiguration("empty selection probabilities");
    for (double v : probs) {
        if (!(v >= 0.0 && v <= 1.0)) throw InvalidConfiguration("selection probability outside [0, 1]");
    }
    const double top = *std::max_element(probs.begin(), probs.end());
    if (!(top > 0.0)) throw InvalidConfiguration("selection probabilities are all zero");
    std::vector<double> d(probs.size());
    for (std::size_t k = 0; k < d.size(); ++k) {
        d[k] = probs[k] == top ? 1.0 : std::sqrt(probs[k] / top);
    }
    return AttenuatorBank(std::move(d));
}

double ordering_probability(const Estimates& est, SoftmaxParams params, Ordering ordering) {
    require_three_arms(est, "ordering_probability");
    const auto [a, b, c] = ordering;
    if (a > 2 || b > 2 || c > 2 || a == b || b == c || a == c) {
        throw InvalidConfiguration("ordering must be a permutation of the three arms");
    }
    const auto& p = est.p_hat;
    // Boltzmann ratios written as logistic terms relative to the numerator.
    const double ea_b = std::exp(params.beta * (p[b] - p[a]));
    const double ea_c = std::exp(params.beta * (p[c] - p[a]));
    const double eb_c = std::exp(params.beta * (p[c] - p[b]));
    return (1.0 / (1.0 + ea_b + ea_c)) * (1.0 / (1.0 + eb_c));
}

RankProbabilities rank_probabilities(const Estimates& est, SoftmaxParams params) {
    require_three_arms(est, "rank_probabilities");
    static constexpr std::array<Ordering, 6> kOrderings{{
        {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0},
    }};
    RankProbabilities pi{};
    for (const Ordering& o : kOrderings) {
        const double p = ordering_probability(est, params, o);
        for (std::size_t rank = 0; rank < 3; ++rank) pi[o[rank]][rank] += p;
    }
    return pi;
}

Ordering rank_arms(std::span<const double> values) {
    if (values.size() != 3) throw Unsupported("ranking is defined for exactly 3 arms");
    Ordering order{0, 1, 2};
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return values[x] > values[y]; });
    return order;
}

MixedStrategy nash_mixed_strategy(std::span<const double> probs) {
    if (probs.size() != 3) throw Unsupported("Nash strategy is defined for exactly 3 arms");
    for (double v : probs) {
        if (!(v >= 0.0 && v <= 1.0)) throw InvalidConfiguration("reward value outside [0, 1]");
    }
    const Ordering order = rank_arms(probs);
    const double p1 = probs[order[0]];
    const double p2 = probs[order[1]];
    const double p3 = probs[order[2]];

    std::array<double, 3> by_rank{};
    if (p1 > 2.0 * p2) {
        by_rank = {1.0, 0.0, 0.0};
    } else {
        const double q = p1 * p2 + p2 * p3 + p3 * p1;
        if (q == 0.0) {
            // Only reachable when every value is zero.
            by_rank = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
        } else if (p1 * p2 / q >= 0.4) {
            by_rank = {(2.0 * p1 - p2) / (p1 + p2), (2.0 * p2 - p1) / (p1 + p2), 0.0};
        } else {
            by_rank = {2.0 - 5.0 * p2 * p3 / q, 2.0 - 5.0 * p3 * p1 / q, 2.0 - 5.0 * p1 * p2 / q};
        }
    }
    MixedStrategy out;
    for (std::size_t r = 0; r < 3; ++r) out.alpha[order[r]] = by_rank[r];
    return out;
}

SelectionProbs equilibrium_select_probs(const Estimates& est, SoftmaxParams params) {
    require_three_arms(est, "equilibrium_select_probs");
    if (!est.all_tried()) return uniform(3);

    const Ordering order = rank_arms(est.p_hat);
    const MixedStrategy nash = nash_mixed_strategy(est.p_hat);
    std::array<double, 3> alpha_by_rank{};
    for (std::size_t r = 0; r < 3; ++r) alpha_by_rank[r] = nash.alpha[order[r]];

    const RankProbabilities pi = rank_probabilities(est, params);
    SelectionProbs s(3, 0.0);
    for (std::size_t k = 0; k < 3; ++k) {
        for (std::size_t r = 0; r < 3; ++r) s[k] += alpha_by_rank[r] * pi[k][r];
    }
    return s;
}

SelectionProbs qi_marginals(const Estimates& est, SoftmaxParams params) {
    require_three_arms(est, "qi_marginals");
    if (!est.all_tried()) return uniform(3);

    const RankProbabilities pi = rank_probabilities(est, params);
    SelectionProbs s(3);
    for (std::size_t k = 0; k < 3; ++k) s[k] = 0.5 * (pi[k][0] + pi[k][1]);
    return s;
}

SquareMatrix qi_joint_abstract(std::span<const double> probs_a, std::span<const double> probs_b) {
    const std::size_t n = probs_a.size();
    if (n == 0 || probs_b.size() != n) throw InvalidConfiguration("marginals must be nonempty and of equal length");
    SquareMatrix q(n);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            q(i, j) = probs_a[i] * probs_b[j];
            total += q(i, j);
        }
    }
    if (!(total > 0.0)) throw DeadChannel("marginals leave no off-diagonal mass");
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) q(i, j) /= total;
    }
    return q;
}

}  // namespace oambandit
