#include "oambandit/bandit.hpp"

#include <algorithm>
#include <string>

#include "oambandit/error.hpp"

namespace oambandit {

Environment::Environment(std::vector<double> probs) : probs_(std::move(probs)) {
    if (probs_.empty()) throw InvalidConfiguration("environment needs at least one arm");
    for (std::size_t k = 0; k < probs_.size(); ++k) {
        if (!(probs_[k] >= 0.0 && probs_[k] <= 1.0)) {
            throw InvalidConfiguration("reward probability P[" + std::to_string(k + 1) + "] = " +
                                       std::to_string(probs_[k]) + " outside [0, 1]");
        }
    }
}

std::size_t Environment::best_arm() const noexcept {
    return static_cast<std::size_t>(std::max_element(probs_.begin(), probs_.end()) - probs_.begin());
}

bool Environment::has_tied_best() const noexcept {
    const double top = probs_[best_arm()];
    return std::count(probs_.begin(), probs_.end(), top) > 1;
}

void settle_round(const Environment& env, std::span<const std::size_t> selections, Rng& rng,
                  std::span<double> rewards) {
    const std::size_t arms = env.arms();
    for (std::size_t arm : selections) {
        if (arm >= arms) {
            throw InvalidConfiguration("selected arm " + std::to_string(arm + 1) + " outside 1.." +
                                       std::to_string(arms));
        }
    }
    std::fill(rewards.begin(), rewards.end(), 0.0);
    // Machines are drawn in ascending arm order so the stream consumption is
    // independent of player order.
    for (std::size_t arm = 0; arm < arms; ++arm) {
        const auto takers = std::count(selections.begin(), selections.end(), arm);
        if (takers == 0) continue;
        const bool win = uniform01(rng) < env[arm];
        if (!win) continue;
        const double share = 1.0 / static_cast<double>(takers);
        for (std::size_t p = 0; p < selections.size(); ++p) {
            if (selections[p] == arm) rewards[p] = share;
        }
    }
}

std::vector<double> settle_round(const Environment& env, std::span<const std::size_t> selections, Rng& rng) {
    std::vector<double> rewards(selections.size(), 0.0);
    settle_round(env, selections, rng, rewards);
    return rewards;
}

bool Estimates::all_tried() const noexcept {
    return std::all_of(tried.begin(), tried.end(), [](bool t) { return t; });
}

History::History(std::size_t arms, std::uint64_t horizon)
    : wins_(arms, 0), losses_(arms, 0), horizon_(horizon) {
    if (arms == 0) throw InvalidConfiguration("history needs at least one arm");
}

History History::from_counts(std::vector<std::uint64_t> wins, std::vector<std::uint64_t> losses,
                             std::uint64_t horizon) {
    if (wins.size() != losses.size()) throw InvalidConfiguration("wins and losses lengths differ");
    History h(wins.size(), horizon);
    h.wins_ = std::move(wins);
    h.losses_ = std::move(losses);
    for (std::size_t k = 0; k < h.wins_.size(); ++k) h.round_ += h.wins_[k] + h.losses_[k];
    if (h.round_ > horizon) throw HorizonExceeded("history counts exceed horizon");
    return h;
}

void History::record(std::size_t arm, double reward) {
    if (arm >= wins_.size()) {
        throw InvalidConfiguration("arm " + std::to_string(arm + 1) + " outside 1.." + std::to_string(wins_.size()));
    }
    if (!(reward >= 0.0 && reward <= 1.0)) {
        throw InvalidConfiguration("reward " + std::to_string(reward) + " outside [0, 1]");
    }
    if (round_ >= horizon_) {
        throw HorizonExceeded("history already holds " + std::to_string(horizon_) + " rounds");
    }
    if (reward > 0.0) {
        ++wins_[arm];
    } else {
        ++losses_[arm];
    }
    ++round_;
}

void History::estimate_into(Estimates& out) const {
    const std::size_t n = wins_.size();
    out.p_hat.resize(n);
    out.tried.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const std::uint64_t pulls = wins_[k] + losses_[k];
        out.tried[k] = pulls > 0;
        out.p_hat[k] = pulls > 0 ? static_cast<double>(wins_[k]) / static_cast<double>(pulls) : 0.0;
    }
}

Estimates History::estimate() const {
    Estimates out;
    estimate_into(out);
    return out;
}

History update_history(History history, std::size_t arm, double reward) {
    history.record(arm, reward);
    return history;
}

Estimates estimate(const History& history) {
    return history.estimate();
}

}  // namespace oambandit
