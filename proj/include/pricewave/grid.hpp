#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace pricewave {

/// Uniform node grid on [x_min, x_max].  The model's distinguished points
/// x = -1, 0, 1 must land exactly on nodes; the single-node delta sources
/// and the pinning of the free boundary rely on it.
class Grid1D {
public:
    Grid1D(double x_min, double x_max, int n_cells)
        : x_min_(x_min), x_max_(x_max), n_cells_(n_cells) {
        if (n_cells < 4) throw std::invalid_argument("Grid1D: need at least 4 cells");
        if (!(x_min < -1.0 && 1.0 < x_max))
            throw std::invalid_argument("Grid1D: domain must contain [-1, 1] strictly");
        h_ = (x_max - x_min) / n_cells;
        idx_minus_ = checked_node(-1.0);
        idx_zero_ = checked_node(0.0);
        idx_plus_ = checked_node(1.0);
    }

    static Grid1D from_spacing(double x_min, double x_max, double h) {
        const double cells = (x_max - x_min) / h;
        const double rounded = std::round(cells);
        if (std::abs(cells - rounded) > 1e-9 * std::max(1.0, cells))
            throw std::invalid_argument("Grid1D: spacing does not divide the domain");
        return Grid1D(x_min, x_max, static_cast<int>(rounded));
    }

    double x_min() const { return x_min_; }
    double x_max() const { return x_max_; }
    double h() const { return h_; }
    int n_cells() const { return n_cells_; }
    std::size_t n_nodes() const { return static_cast<std::size_t>(n_cells_) + 1; }

    double x(std::size_t i) const { return x_min_ + static_cast<double>(i) * h_; }

    std::size_t node_minus_one() const { return idx_minus_; }
    std::size_t node_zero() const { return idx_zero_; }
    std::size_t node_plus_one() const { return idx_plus_; }

    /// Index of the node at coordinate v; throws if v is off-node.
    std::size_t node_index(double v) const {
        const double k = (v - x_min_) / h_;
        const double rounded = std::round(k);
        if (std::abs(k - rounded) > 1e-9 * std::max(1.0, std::abs(k)) || rounded < 0 ||
            rounded > n_cells_)
            throw std::invalid_argument("Grid1D: " + std::to_string(v) + " is not a grid node");
        return static_cast<std::size_t>(rounded);
    }

    bool symmetric() const { return x_min_ == -x_max_; }

private:
    std::size_t checked_node(double v) const {
        const double k = (v - x_min_) / h_;
        const double rounded = std::round(k);
        if (std::abs(k - rounded) > 1e-9 || rounded <= 0 || rounded >= n_cells_)
            throw std::invalid_argument("Grid1D: node required at x = " + std::to_string(v));
        return static_cast<std::size_t>(rounded);
    }

    double x_min_;
    double x_max_;
    int n_cells_;
    double h_;
    std::size_t idx_minus_;
    std::size_t idx_zero_;
    std::size_t idx_plus_;
};

}  // namespace pricewave
