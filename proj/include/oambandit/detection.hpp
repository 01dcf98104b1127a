#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "oambandit/matrix.hpp"
#include "oambandit/oam_core.hpp"
#include "oambandit/random.hpp"

namespace oambandit {

/// Per-arm amplitude transmittances d_k in [0, 1].
/// Detection probability on arm k scales with d_k^2.
class AttenuatorBank {
public:
    explicit AttenuatorBank(std::vector<double> transmittance);

    /// Lossless bank, every d_k = 1.
    static AttenuatorBank open(std::size_t arms);

    std::size_t size() const noexcept { return d_.size(); }
    std::span<const double> transmittance() const noexcept { return d_; }
    double operator[](std::size_t arm) const noexcept { return d_[arm]; }

    /// True when the largest transmittance is exactly one.
    bool normalized() const noexcept;

    /// Every transmittance multiplied by `factor` (0 < factor <= 1).
    AttenuatorBank scaled(double factor) const;

private:
    std::vector<double> d_;
};

struct SingleDetection {
    std::size_t arm;  // 0-based
};

/// Coincidence: one photon at each player. arm_a != arm_b always.
struct PairDetection {
    std::size_t arm_a;
    std::size_t arm_b;
};

/// Hologram adds l_HG to every OAM label.
SinglePhotonState hologram_shift(const SinglePhotonState& state, int shift);

/// Amplitude on l = 0, the only component passed by zeroth-order extraction.
Amplitude zeroth_order_amplitude(const SinglePhotonState& state);

/// Detector bank for one player: per arm k, a hologram shifting by -(k+1),
/// an attenuator and a zeroth-order filter ahead of a photodetector.
/// The source-state amplitudes reaching each detector are computed once.
class DetectionChain {
public:
    explicit DetectionChain(const SinglePhotonState& source);

    std::size_t arms() const noexcept { return passed_.size(); }

    /// Probability of each arm conditioned on some detector firing.
    std::vector<double> conditional_distribution(const AttenuatorBank& att) const;

    /// Repeat-until-detection draw; lost shots are not observable.
    /// Throws DeadChannel when no arm can fire.
    SingleDetection select(const AttenuatorBank& att, Rng& rng) const;

private:
    std::vector<double> passed_;  // |zeroth-order amplitude|^2 per arm
};

SingleDetection single_photon_select(const SinglePhotonState& state, const AttenuatorBank& att, Rng& rng);

/// Two-player coincidence detection behind the interfering beam splitter.
/// Pair (i, j) has weight d^A_i^2 d^B_j^2 sin^2(theta_i - theta_j); same-side
/// events and lost shots are discarded.
class CoincidenceChain {
public:
    explicit CoincidenceChain(std::span<const double> theta);

    std::size_t arms() const noexcept { return cross_.size(); }
    const SquareMatrix& cross_side() const noexcept { return cross_; }

    /// Joint distribution over ordered (arm_a, arm_b), renormalized.
    SquareMatrix conditional_distribution(const AttenuatorBank& att_a, const AttenuatorBank& att_b) const;

    PairDetection select(const AttenuatorBank& att_a, const AttenuatorBank& att_b, Rng& rng) const;

private:
    SquareMatrix cross_;
};

PairDetection coincidence_select(std::span<const double> theta, const AttenuatorBank& att_a,
                                 const AttenuatorBank& att_b, Rng& rng);

}  // namespace oambandit
