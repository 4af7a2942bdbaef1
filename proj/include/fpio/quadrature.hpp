#pragma once

// Composite trapezoidal quadrature on arbitrary (non-uniform) grids.
// Reductions use pairwise summation in index order so results do not
// depend on how callers partition the work.

#include <cmath>
#include <cstddef>
#include <span>
#include <sstream>
#include <vector>

#include "fpio/errors.hpp"

namespace fpio {

/// Pairwise (cascade) sum in index order.
template <typename T>
T pairwise_sum(std::span<const T> values) {
    const std::size_t n = values.size();
    if (n == 0) return T(0);
    if (n <= 8) {
        T acc = values[0];
        for (std::size_t i = 1; i < n; ++i) acc += values[i];
        return acc;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

template <typename Scalar>
void check_grid(std::span<const Scalar> grid) {
    if (grid.size() < 2) {
        throw DomainError("quadrature grid needs at least 2 points");
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!std::isfinite(grid[i])) throw DomainError("quadrature grid contains a non-finite point");
        if (i > 0 && !(grid[i] > grid[i - 1])) {
            std::ostringstream msg;
            msg << "quadrature grid must be strictly increasing (index " << i << ")";
            throw DomainError(msg.str());
        }
    }
}

/// Trapezoid weights w_i with sum_i w_i f_i = integral of f over the grid.
template <typename Scalar>
std::vector<Scalar> trapezoid_weights(std::span<const Scalar> grid) {
    check_grid(grid);
    const std::size_t n = grid.size();
    std::vector<Scalar> w(n, Scalar(0));
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const Scalar h = (grid[i + 1] - grid[i]) / Scalar(2);
        w[i] += h;
        w[i + 1] += h;
    }
    return w;
}

template <typename T, typename Scalar>
T weighted_sum(std::span<const T> samples, std::span<const Scalar> weights) {
    if (samples.size() != weights.size()) {
        std::ostringstream msg;
        msg << "sample count " << samples.size() << " does not match grid size " << weights.size();
        throw ValidationError(msg.str());
    }
    std::vector<T> terms(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) terms[i] = samples[i] * weights[i];
    return pairwise_sum(std::span<const T>(terms));
}

/// Composite trapezoid rule of `samples` over `grid`.
template <typename T, typename Scalar>
T trapezoid(std::span<const T> samples, std::span<const Scalar> grid) {
    if (samples.size() != grid.size()) {
        std::ostringstream msg;
        msg << "sample count " << samples.size() << " does not match grid size " << grid.size();
        throw ValidationError(msg.str());
    }
    const auto w = trapezoid_weights(grid);
    return weighted_sum(samples, std::span<const Scalar>(w));
}

/// Strictly increasing frequency grid with cached trapezoid weights.
class FrequencyGrid {
public:
    explicit FrequencyGrid(std::vector<double> points)
        : points_(std::move(points)), weights_(trapezoid_weights(std::span<const double>(points_))) {}

    /// `count` evenly spaced points on [start, stop].
    static FrequencyGrid uniform(double start, double stop, std::size_t count) {
        if (count < 2) throw DomainError("uniform grid needs count >= 2");
        if (!(stop > start)) throw DomainError("uniform grid needs stop > start");
        std::vector<double> p(count);
        const double step = (stop - start) / static_cast<double>(count - 1);
        for (std::size_t i = 0; i < count; ++i) p[i] = start + step * static_cast<double>(i);
        p.back() = stop;
        return FrequencyGrid(std::move(p));
    }

    std::size_t size() const noexcept { return points_.size(); }
    std::span<const double> points() const noexcept { return points_; }
    std::span<const double> weights() const noexcept { return weights_; }
    double operator[](std::size_t i) const { return points_[i]; }

    bool operator==(const FrequencyGrid& other) const { return points_ == other.points_; }

private:
    std::vector<double> points_;
    std::vector<double> weights_;
};

}  // namespace fpio
