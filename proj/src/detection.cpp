#include "oambandit/detection.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "oambandit/error.hpp"

namespace oambandit {

AttenuatorBank::AttenuatorBank(std::vector<double> transmittance) : d_(std::move(transmittance)) {
    if (d_.empty()) throw InvalidConfiguration("attenuator bank needs at least one arm");
    for (std::size_t k = 0; k < d_.size(); ++k) {
        if (!(d_[k] >= 0.0 && d_[k] <= 1.0)) {
            throw InvalidConfiguration("transmittance d[" + std::to_string(k) + "] = " +
                                       std::to_string(d_[k]) + " outside [0, 1]");
        }
    }
}

AttenuatorBank AttenuatorBank::open(std::size_t arms) {
    return AttenuatorBank(std::vector<double>(arms, 1.0));
}

bool AttenuatorBank::normalized() const noexcept {
    return *std::max_element(d_.begin(), d_.end()) == 1.0;
}

AttenuatorBank AttenuatorBank::scaled(double factor) const {
    if (!(factor > 0.0 && factor <= 1.0)) {
        throw InvalidConfiguration("attenuator scale factor must lie in (0, 1]");
    }
    std::vector<double> out = d_;
    for (double& v : out) v *= factor;
    return AttenuatorBank(std::move(out));
}

SinglePhotonState hologram_shift(const SinglePhotonState& state, int shift) {
    return state.shifted(shift);
}

Amplitude zeroth_order_amplitude(const SinglePhotonState& state) {
    return state.amplitude(OamLabel{0});
}

// ---------------------------------------------------------------------------

DetectionChain::DetectionChain(const SinglePhotonState& source) {
    const int k = source.mode_count();
    passed_.reserve(static_cast<std::size_t>(k));
    for (int arm = 1; arm <= k; ++arm) {
        passed_.push_back(std::norm(zeroth_order_amplitude(hologram_shift(source, -arm))));
    }
}

std::vector<double> DetectionChain::conditional_distribution(const AttenuatorBank& att) const {
    if (att.size() != passed_.size()) {
        throw InvalidConfiguration("attenuator bank has " + std::to_string(att.size()) +
                                   " arms, detector has " + std::to_string(passed_.size()));
    }
    std::vector<double> w(passed_.size());
    double total = 0.0;
    for (std::size_t k = 0; k < w.size(); ++k) {
        w[k] = att[k] * att[k] * passed_[k];
        total += w[k];
    }
    if (!(total > 0.0)) throw DeadChannel("no detector can fire: all attenuated amplitudes are zero");
    for (double& v : w) v /= total;
    return w;
}

SingleDetection DetectionChain::select(const AttenuatorBank& att, Rng& rng) const {
    const std::size_t n = passed_.size();
    if (att.size() != n) {
        throw InvalidConfiguration("attenuator bank has " + std::to_string(att.size()) +
                                   " arms, detector has " + std::to_string(n));
    }
    double total = 0.0;
    for (std::size_t k = 0; k < n; ++k) total += att[k] * att[k] * passed_[k];
    if (!(total > 0.0)) throw DeadChannel("no detector can fire: all attenuated amplitudes are zero");

    const double target = uniform01(rng) * total;
    double acc = 0.0;
    std::size_t last = 0;
    for (std::size_t k = 0; k < n; ++k) {
        const double w = att[k] * att[k] * passed_[k];
        if (w <= 0.0) continue;
        acc += w;
        last = k;
        if (target < acc) return {k};
    }
    return {last};
}

SingleDetection single_photon_select(const SinglePhotonState& state, const AttenuatorBank& att, Rng& rng) {
    return DetectionChain(state).select(att, rng);
}

// ---------------------------------------------------------------------------

CoincidenceChain::CoincidenceChain(std::span<const double> theta) : cross_(cross_side_matrix(theta)) {}

namespace {

void check_banks(std::size_t arms, const AttenuatorBank& a, const AttenuatorBank& b) {
    if (a.size() != arms || b.size() != arms) {
        throw InvalidConfiguration("attenuator banks must have " + std::to_string(arms) + " arms");
    }
}

}  // namespace

SquareMatrix CoincidenceChain::conditional_distribution(const AttenuatorBank& att_a,
                                                        const AttenuatorBank& att_b) const {
    const std::size_t n = cross_.size();
    check_banks(n, att_a, att_b);
    SquareMatrix joint(n);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            joint(i, j) = att_a[i] * att_a[i] * att_b[j] * att_b[j] * cross_(i, j);
            total += joint(i, j);
        }
    }
    if (!(total > 0.0)) throw DeadChannel("no coincidence possible: cross-side mass is zero");
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) joint(i, j) /= total;
    }
    return joint;
}

PairDetection CoincidenceChain::select(const AttenuatorBank& att_a, const AttenuatorBank& att_b, Rng& rng) const {
    const std::size_t n = cross_.size();
    check_banks(n, att_a, att_b);
    auto weight = [&](std::size_t i, std::size_t j) {
        return att_a[i] * att_a[i] * att_b[j] * att_b[j] * cross_(i, j);
    };
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) total += weight(i, j);
    }
    if (!(total > 0.0)) throw DeadChannel("no coincidence possible: cross-side mass is zero");

    const double target = uniform01(rng) * total;
    double acc = 0.0;
    PairDetection last{0, 1};
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double w = weight(i, j);
            if (w <= 0.0) continue;
            acc += w;
            last = {i, j};
            if (target < acc) return last;
        }
    }
    return last;
}

PairDetection coincidence_select(std::span<const double> theta, const AttenuatorBank& att_a,
                                 const AttenuatorBank& att_b, Rng& rng) {
    return CoincidenceChain(theta).select(att_a, att_b, rng);
}

}  // namespace oambandit
