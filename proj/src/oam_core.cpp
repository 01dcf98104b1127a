#include "oambandit/oam_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "oambandit/error.hpp"

namespace oambandit {

namespace {

void require_mode_count(int mode_count) {
    if (mode_count < 1) {
        throw InvalidConfiguration("mode count K must be >= 1, got " + std::to_string(mode_count));
    }
}

double sin_squared(double x) {
    const double s = std::sin(x);
    return s * s;
}

double cos_squared(double x) {
    const double c = std::cos(x);
    return c * c;
}

}  // namespace

OamLabel make_label(int value, int mode_count) {
    require_mode_count(mode_count);
    if (value == 0 || value > mode_count || value < -mode_count) {
        throw InvalidConfiguration("OAM label " + std::to_string(value) + " outside +-" +
                                   std::to_string(mode_count) + " or zero");
    }
    return OamLabel{value};
}

double canonical_angle(double radians) noexcept {
    constexpr double two_pi = 2.0 * kPi;
    double r = std::fmod(radians, two_pi);
    if (r < 0.0) r += two_pi;
    if (r >= two_pi) r = 0.0;
    return r;
}

// ---------------------------------------------------------------------------
// SinglePhotonState

SinglePhotonState::SinglePhotonState(int mode_count, std::vector<Term> terms)
    : mode_count_(mode_count), terms_(std::move(terms)) {
    require_mode_count(mode_count);
    std::erase_if(terms_, [](const Term& t) { return t.second == Amplitude{}; });
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& a, const Term& b) { return a.first < b.first; });
    const auto dup = std::adjacent_find(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) {
        return a.first == b.first;
    });
    if (dup != terms_.end()) {
        throw InvalidConfiguration("duplicate OAM label " + std::to_string(dup->first.value));
    }
    const double norm = norm_squared();
    if (std::abs(norm - 1.0) > kNormTolerance) {
        throw InvalidConfiguration("state is not normalized: sum |a|^2 = " + std::to_string(norm));
    }
}

Amplitude SinglePhotonState::amplitude(OamLabel label) const noexcept {
    const auto it = std::lower_bound(terms_.begin(), terms_.end(), label,
                                     [](const Term& t, OamLabel l) { return t.first < l; });
    if (it != terms_.end() && it->first == label) return it->second;
    return {};
}

double SinglePhotonState::norm_squared() const noexcept {
    return std::accumulate(terms_.begin(), terms_.end(), 0.0,
                           [](double acc, const Term& t) { return acc + std::norm(t.second); });
}

bool SinglePhotonState::approx_equal(const SinglePhotonState& other, double tol) const {
    if (mode_count_ != other.mode_count_) return false;
    for (const auto& [label, amp] : terms_) {
        if (std::abs(amp - other.amplitude(label)) > tol) return false;
    }
    for (const auto& [label, amp] : other.terms_) {
        if (std::abs(amp - amplitude(label)) > tol) return false;
    }
    return true;
}

SinglePhotonState SinglePhotonState::shifted(int shift) const {
    std::vector<Term> out(terms_.begin(), terms_.end());
    for (auto& t : out) t.first.value += shift;
    return SinglePhotonState(mode_count_, std::move(out));
}

SinglePhotonState SinglePhotonState::mirrored() const {
    std::vector<Term> out(terms_.begin(), terms_.end());
    for (auto& t : out) t.first.value = -t.first.value;
    return SinglePhotonState(mode_count_, std::move(out));
}

SinglePhotonState slm_state(std::span<const double> phases, int sign) {
    const int k = static_cast<int>(phases.size());
    require_mode_count(k);
    if (sign != 1 && sign != -1) {
        throw InvalidConfiguration("SLM sign must be +1 or -1, got " + std::to_string(sign));
    }
    const double scale = 1.0 / std::sqrt(static_cast<double>(k));
    std::vector<SinglePhotonState::Term> terms;
    terms.reserve(phases.size());
    for (int i = 0; i < k; ++i) {
        terms.emplace_back(OamLabel{sign * (i + 1)}, std::polar(scale, phases[i]));
    }
    return SinglePhotonState(k, std::move(terms));
}

SinglePhotonState flip(const SinglePhotonState& state) {
    return state.mirrored();
}

std::array<BeamSplitterBranch, 2> beam_splitter_single(const SinglePhotonState& state) {
    const double h = 1.0 / std::sqrt(2.0);
    return {BeamSplitterBranch{Path::Transmitted, Amplitude{h, 0.0}, state},
            BeamSplitterBranch{Path::Reflected, Amplitude{0.0, h}, flip(state)}};
}

// ---------------------------------------------------------------------------
// PhaseConfig

PhaseConfig::PhaseConfig(std::vector<double> phi, std::vector<double> psi)
    : phi_(std::move(phi)), psi_(std::move(psi)) {
    require_mode_count(static_cast<int>(phi_.size()));
    if (phi_.size() != psi_.size()) {
        throw InvalidConfiguration("phi and psi lengths differ (" + std::to_string(phi_.size()) +
                                   " vs " + std::to_string(psi_.size()) + ")");
    }
}

PhaseConfig PhaseConfig::from_theta(std::span<const double> theta) {
    std::vector<double> phi(theta.begin(), theta.end());
    for (double& p : phi) p *= 2.0;
    return PhaseConfig(std::move(phi), std::vector<double>(theta.size(), 0.0));
}

std::vector<double> PhaseConfig::theta() const {
    std::vector<double> out(phi_.size());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = 0.5 * (phi_[k] - psi_[k]);
    return out;
}

// ---------------------------------------------------------------------------
// Two-photon outcomes

TwoPhotonOutcome TwoPhotonOutcome::same_side(OutcomeKind side, int a, int b) {
    if (side == OutcomeKind::CrossSide) {
        throw InvalidConfiguration("same_side requires SameSideA or SameSideB");
    }
    return {side, std::min(a, b), std::max(a, b)};
}

TwoPhotonOutcome TwoPhotonOutcome::cross_side(int arm_a, int arm_b) {
    return {OutcomeKind::CrossSide, arm_a, arm_b};
}

TwoPhotonDistribution::TwoPhotonDistribution(int mode_count, std::vector<double> theta,
                                             std::map<TwoPhotonOutcome, double> entries)
    : mode_count_(mode_count), theta_(std::move(theta)), entries_(std::move(entries)) {
    require_mode_count(mode_count);
}

double TwoPhotonDistribution::probability(TwoPhotonOutcome outcome) const {
    if (outcome.first < 1 || outcome.second < 1 || outcome.first > mode_count_ ||
        outcome.second > mode_count_) {
        throw InvalidConfiguration("outcome arm outside 1.." + std::to_string(mode_count_));
    }
    if (outcome.kind != OutcomeKind::CrossSide && outcome.first > outcome.second) {
        std::swap(outcome.first, outcome.second);
    }
    const auto it = entries_.find(outcome);
    return it == entries_.end() ? 0.0 : it->second;
}

double TwoPhotonDistribution::total() const noexcept {
    double sum = 0.0;
    for (const auto& [_, p] : entries_) sum += p;
    return sum;
}

TwoPhotonDistribution outcome_distribution_from_theta(std::span<const double> theta) {
    const int k = static_cast<int>(theta.size());
    require_mode_count(k);
    const double inv_k2 = 1.0 / (static_cast<double>(k) * k);

    std::map<TwoPhotonOutcome, double> entries;
    for (const auto side : {OutcomeKind::SameSideA, OutcomeKind::SameSideB}) {
        for (int a = 1; a <= k; ++a) {
            entries[{side, a, a}] = 0.5 * inv_k2;
            for (int b = a + 1; b <= k; ++b) {
                entries[{side, a, b}] = inv_k2 * cos_squared(theta[a - 1] - theta[b - 1]);
            }
        }
    }
    for (int a = 1; a <= k; ++a) {
        for (int b = 1; b <= k; ++b) {
            entries[{OutcomeKind::CrossSide, a, b}] =
                a == b ? 0.0 : inv_k2 * sin_squared(theta[a - 1] - theta[b - 1]);
        }
    }
    return TwoPhotonDistribution(k, std::vector<double>(theta.begin(), theta.end()), std::move(entries));
}

TwoPhotonDistribution outcome_distribution(const PhaseConfig& config) {
    return outcome_distribution_from_theta(config.theta());
}

SquareMatrix cross_side_matrix(std::span<const double> theta) {
    const std::size_t k = theta.size();
    require_mode_count(static_cast<int>(k));
    const double inv_k2 = 1.0 / (static_cast<double>(k) * static_cast<double>(k));
    SquareMatrix m(k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            if (i != j) m(i, j) = inv_k2 * sin_squared(theta[i] - theta[j]);
        }
    }
    return m;
}

std::vector<double> canonical_equal_phases(int mode_count) {
    require_mode_count(mode_count);
    switch (mode_count) {
        case 1: return {0.0};
        case 2: return {0.0, kPi / 2.0};
        case 3: return {0.0, kPi / 3.0, 2.0 * kPi / 3.0};
        default:
            throw Unachievable("cross-side probabilities cannot all be equalized by phases alone for K = " +
                               std::to_string(mode_count) + " (K >= 4)");
    }
}

}  // namespace oambandit
