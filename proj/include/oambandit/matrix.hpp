#pragma once

#include <cstddef>
#include <numeric>
#include <vector>

namespace oambandit {

/// Dense row-major square matrix of doubles.
class SquareMatrix {
public:
    SquareMatrix() = default;
    explicit SquareMatrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}

    std::size_t size() const noexcept { return n_; }

    double& operator()(std::size_t row, std::size_t col) noexcept { return data_[row * n_ + col]; }
    double operator()(std::size_t row, std::size_t col) const noexcept { return data_[row * n_ + col]; }

    double sum() const noexcept { return std::accumulate(data_.begin(), data_.end(), 0.0); }

    const std::vector<double>& values() const noexcept { return data_; }

    friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

}  // namespace oambandit
