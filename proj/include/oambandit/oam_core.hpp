#pragma once

// Complex-amplitude algebra for single photons carrying orbital angular
// momentum (OAM), the 1:1 beam splitter with reflection-induced OAM flip, and
// the closed-form two-photon outcome distribution obtained when two K-mode
// OAM photons interfere on one beam splitter.

#include <array>
#include <compare>
#include <complex>
#include <cstddef>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "oambandit/matrix.hpp"

namespace oambandit {

using Amplitude = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kNormTolerance = 1e-12;

/// Signed OAM value l. Zero is only meaningful after a hologram shift.
struct OamLabel {
    int value = 0;

    constexpr int magnitude() const noexcept { return value < 0 ? -value : value; }
    friend constexpr auto operator<=>(OamLabel, OamLabel) = default;
};

/// Validated label for a K-mode system: nonzero and within +-K.
OamLabel make_label(int value, int mode_count);

/// Reduces an angle to [0, 2*pi). Used at comparison points only.
double canonical_angle(double radians) noexcept;

/// Pure single-photon state as a sparse superposition over OAM labels.
/// Terms are kept sorted by label; zero amplitudes are dropped.
class SinglePhotonState {
public:
    using Term = std::pair<OamLabel, Amplitude>;

    /// Builds a state, checking that the squared amplitudes sum to one.
    SinglePhotonState(int mode_count, std::vector<Term> terms);

    int mode_count() const noexcept { return mode_count_; }
    std::span<const Term> terms() const noexcept { return terms_; }

    /// Amplitude on `label`, zero if absent.
    Amplitude amplitude(OamLabel label) const noexcept;
    double norm_squared() const noexcept;

    /// Componentwise equality within `tol`.
    bool approx_equal(const SinglePhotonState& other, double tol = kNormTolerance) const;

    /// Same amplitudes with every label l moved to l + shift.
    SinglePhotonState shifted(int shift) const;
    /// Same amplitudes with every label l moved to -l.
    SinglePhotonState mirrored() const;

private:
    int mode_count_ = 0;
    std::vector<Term> terms_;
};

/// State produced by the phase-only SLM: e^{i phases[k]}/sqrt(K) on label sign*(k+1).
SinglePhotonState slm_state(std::span<const double> phases, int sign = +1);

/// Reflection flips every label l -> -l.
SinglePhotonState flip(const SinglePhotonState& state);

enum class Path { Transmitted, Reflected };

/// One output branch of the beam splitter: `factor` times `state` on `path`.
struct BeamSplitterBranch {
    Path path;
    Amplitude factor;
    SinglePhotonState state;

    /// Branch amplitude on `label`, factor included.
    Amplitude amplitude(OamLabel label) const noexcept { return factor * state.amplitude(label); }
};

/// 1:1 beam splitter: transmitted (1/sqrt2)|state>, reflected (i/sqrt2) R|state>.
std::array<BeamSplitterBranch, 2> beam_splitter_single(const SinglePhotonState& state);

/// Source phase programs for the two interfering photons.
/// phi drives the +l photon, psi the -l photon.
class PhaseConfig {
public:
    PhaseConfig(std::vector<double> phi, std::vector<double> psi);

    /// Config realising the given half phase differences (phi = 2 theta, psi = 0).
    static PhaseConfig from_theta(std::span<const double> theta);

    int mode_count() const noexcept { return static_cast<int>(phi_.size()); }
    std::span<const double> phi() const noexcept { return phi_; }
    std::span<const double> psi() const noexcept { return psi_; }

    /// theta_k = (phi_k - psi_k) / 2.
    std::vector<double> theta() const;

private:
    std::vector<double> phi_;
    std::vector<double> psi_;
};

enum class OutcomeKind { SameSideA, SameSideB, CrossSide };

/// One detectable two-photon outcome. Arms are OAM magnitudes in 1..K.
/// Same-side pairs are unordered and stored with first <= second; cross-side
/// pairs are ordered (first = player A's magnitude, second = player B's).
struct TwoPhotonOutcome {
    OutcomeKind kind;
    int first;
    int second;

    static TwoPhotonOutcome same_side(OutcomeKind side, int a, int b);
    static TwoPhotonOutcome cross_side(int arm_a, int arm_b);

    friend auto operator<=>(const TwoPhotonOutcome&, const TwoPhotonOutcome&) = default;
};

/// Exact probability table over all two-photon outcomes for one phase setting.
class TwoPhotonDistribution {
public:
    TwoPhotonDistribution(int mode_count, std::vector<double> theta,
                          std::map<TwoPhotonOutcome, double> entries);

    int mode_count() const noexcept { return mode_count_; }
    std::span<const double> theta() const noexcept { return theta_; }
    const std::map<TwoPhotonOutcome, double>& entries() const noexcept { return entries_; }

    /// Probability of `outcome`; same-side pairs may be given in either order.
    double probability(TwoPhotonOutcome outcome) const;
    double total() const noexcept;

private:
    int mode_count_;
    std::vector<double> theta_;
    std::map<TwoPhotonOutcome, double> entries_;
};

/// Closed-form outcome table:
///   same side, same mode        1 / (2 K^2)
///   same side, modes k1 < k2    cos^2(theta_k1 - theta_k2) / K^2
///   cross side, ordered (k1,k2) sin^2(theta_k1 - theta_k2) / K^2
TwoPhotonDistribution outcome_distribution(const PhaseConfig& config);
TwoPhotonDistribution outcome_distribution_from_theta(std::span<const double> theta);

/// Cross-side block as a K x K matrix, M(i,j) = sin^2(theta_i - theta_j) / K^2
/// with 0-based arm indices. The diagonal is exactly zero.
SquareMatrix cross_side_matrix(std::span<const double> theta);

/// Theta that equalises every off-diagonal cross-side probability.
/// Only K <= 3 admits such a choice; K >= 4 throws Unachievable.
std::vector<double> canonical_equal_phases(int mode_count);

}  // namespace oambandit
