#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "oambandit/random.hpp"

namespace oambandit {

/// Bernoulli slot machines; arm k pays 1 with probability P[k].
class Environment {
public:
    explicit Environment(std::vector<double> probs);

    std::size_t arms() const noexcept { return probs_.size(); }
    std::span<const double> probs() const noexcept { return probs_; }
    double operator[](std::size_t arm) const noexcept { return probs_[arm]; }

    /// Lowest-index arm among the maxima.
    std::size_t best_arm() const noexcept;
    /// True when more than one arm attains the maximum.
    bool has_tied_best() const noexcept;

private:
    std::vector<double> probs_;
};

/// Plays one round. Each distinct selected machine is drawn once; a win is
/// split equally among the players that chose it. Returns one reward per player.
std::vector<double> settle_round(const Environment& env, std::span<const std::size_t> selections, Rng& rng);

/// Allocation-free variant writing into `rewards` (same length as `selections`).
void settle_round(const Environment& env, std::span<const std::size_t> selections, Rng& rng,
                  std::span<double> rewards);

/// Per-arm maximum-likelihood estimates; untried arms carry p_hat = 0.
struct Estimates {
    std::vector<double> p_hat;
    std::vector<bool> tried;

    std::size_t arms() const noexcept { return p_hat.size(); }
    bool all_tried() const noexcept;
};

/// One player's win/loss record. A split win counts as a win event, so the
/// estimate tracks the machine's reward probability rather than the payoff.
class History {
public:
    History(std::size_t arms, std::uint64_t horizon);

    std::size_t arms() const noexcept { return wins_.size(); }
    std::uint64_t round() const noexcept { return round_; }
    std::uint64_t horizon() const noexcept { return horizon_; }
    std::uint64_t wins(std::size_t arm) const noexcept { return wins_[arm]; }
    std::uint64_t losses(std::size_t arm) const noexcept { return losses_[arm]; }
    std::uint64_t pulls(std::size_t arm) const noexcept { return wins_[arm] + losses_[arm]; }

    /// Records the outcome of one selection in place and advances the round.
    /// Throws HorizonExceeded once `horizon` rounds have been recorded.
    void record(std::size_t arm, double reward);

    Estimates estimate() const;
    /// Writes estimates into `out` without reallocating.
    void estimate_into(Estimates& out) const;

    /// Builds a history with given counts; the round counter is their total.
    static History from_counts(std::vector<std::uint64_t> wins, std::vector<std::uint64_t> losses,
                               std::uint64_t horizon);

private:
    std::vector<std::uint64_t> wins_;
    std::vector<std::uint64_t> losses_;
    std::uint64_t round_ = 0;
    std::uint64_t horizon_;
};

/// Functional form of History::record.
History update_history(History history, std::size_t arm, double reward);

Estimates estimate(const History& history);

}  // namespace oambandit
