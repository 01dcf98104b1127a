#pragma once

// Selection policies for the (competitive) bandit: softmax greedy play, the
// symmetric mixed Nash strategy for three arms, and the quantum-interference
// policy that aims both players at the two best arms.

#include <array>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "oambandit/bandit.hpp"
#include "oambandit/detection.hpp"
#include "oambandit/matrix.hpp"

namespace oambandit {

enum class PolicyKind { Greedy, Equilibrium, Quantum };
enum class Coupling { Physical, Abstract };

std::string_view to_string(PolicyKind kind) noexcept;
std::string_view to_string(Coupling coupling) noexcept;
/// Throws InvalidConfiguration on an unknown name.
PolicyKind parse_policy(std::string_view name);
Coupling parse_coupling(std::string_view name);

struct SoftmaxParams {
    double beta = 20.0;  // inverse temperature
};

/// Probability of each arm; nonnegative, sums to one.
using SelectionProbs = std::vector<double>;

/// Uniform while any arm is untried, Boltzmann weights exp(beta * p_hat) otherwise.
SelectionProbs softmax_probs(const Estimates& est, SoftmaxParams params);

/// d_k = sqrt(s_k / max s). The largest transmittance is exactly one.
AttenuatorBank attenuators_from_probs(std::span<const double> probs);

/// Arm indices (0-based) listed from best to worst.
using Ordering = std::array<std::size_t, 3>;

/// Probability that the arms rank as `ordering` under the softmax confidence
/// model: softmax(a | a,b,c) * softmax(b | b,c). Three arms only.
double ordering_probability(const Estimates& est, SoftmaxParams params, Ordering ordering);

/// rank[k][r]: probability that arm k holds rank r (0 = best).
using RankProbabilities = std::array<std::array<double, 3>, 3>;

RankProbabilities rank_probabilities(const Estimates& est, SoftmaxParams params);

/// Mixed strategy over three arms, in original arm order.
struct MixedStrategy {
    std::array<double, 3> alpha{};
};

/// Arms sorted by decreasing value; ties go to the lower index.
Ordering rank_arms(std::span<const double> values);

/// Symmetric Nash equilibrium of the two-player, three-machine game with
/// split rewards. With P* >= P** >= P*** and Q = P*P** + P**P*** + P***P*:
///   P* > 2P**                       -> pure on the best machine
///   otherwise, P*P**/Q >= 2/5       -> mix over the top two
///   otherwise                       -> mix over all three
MixedStrategy nash_mixed_strategy(std::span<const double> probs);

/// Nash weights by estimated rank, spread over arms by rank probability.
SelectionProbs equilibrium_select_probs(const Estimates& est, SoftmaxParams params);

/// Half the probability of being best plus half of being second best.
SelectionProbs qi_marginals(const Estimates& est, SoftmaxParams params);

/// Product coupling of two marginals with the diagonal removed, renormalized.
SquareMatrix qi_joint_abstract(std::span<const double> probs_a, std::span<const double> probs_b);

}  // namespace oambandit
