#pragma once

// Uniform Cartesian grids on boxes in E_n, axis-aligned index sub-boxes
// (regions), and the per-axis quadrature weights paired with the difference
// stencils. Nodes are vertex-centered: axis k carries points_k nodes from
// min_k to max_k with spacing h_k = (max_k - min_k)/(points_k - 1), flattened
// row-major (last axis fastest).

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "kcalc/basis.hpp"

namespace kcalc {

struct Axis {
  double min = 0.0;
  double max = 0.0;
  int points = 0;

  friend bool operator==(const Axis& a, const Axis& b) {
    return a.min == b.min && a.max == b.max && a.points == b.points;
  }
};

class GridSpec {
 public:
  explicit GridSpec(std::vector<Axis> axes) : axes_(std::move(axes)) {
    check_dimension(static_cast<int>(axes_.size()));
    for (const Axis& a : axes_) {
      if (!(a.min < a.max))
        throw std::invalid_argument("axis needs min < max");
      if (a.points < 3)
        throw std::invalid_argument("axis needs at least 3 points");
    }
    strides_.assign(axes_.size(), 1);
    total_ = 1;
    for (int k = static_cast<int>(axes_.size()) - 1; k >= 0; --k) {
      strides_[static_cast<std::size_t>(k)] = total_;
      total_ *= static_cast<std::size_t>(axes_[static_cast<std::size_t>(k)].points);
    }
  }

  int dimension() const { return static_cast<int>(axes_.size()); }
  const Axis& axis(int k) const { return axes_[static_cast<std::size_t>(k)]; }
  int points(int k) const { return axis(k).points; }
  std::size_t stride(int k) const { return strides_[static_cast<std::size_t>(k)]; }
  std::size_t node_count() const { return total_; }

  double spacing(int k) const {
    const Axis& a = axis(k);
    return (a.max - a.min) / static_cast<double>(a.points - 1);
  }

  double cell_volume() const {
    double v = 1.0;
    for (int k = 0; k < dimension(); ++k) v *= spacing(k);
    return v;
  }

  double coordinate(int k, int i) const {
    return axis(k).min + static_cast<double>(i) * spacing(k);
  }

  std::size_t flatten(const std::vector<int>& idx) const {
    std::size_t node = 0;
    for (int k = 0; k < dimension(); ++k)
      node += static_cast<std::size_t>(idx[static_cast<std::size_t>(k)]) * stride(k);
    return node;
  }

  void unflatten(std::size_t node, std::vector<int>& idx) const {
    idx.resize(axes_.size());
    for (int k = 0; k < dimension(); ++k) {
      idx[static_cast<std::size_t>(k)] = static_cast<int>(node / stride(k)) % points(k);
    }
  }

  void coordinates(std::size_t node, std::vector<double>& x) const {
    x.resize(axes_.size());
    for (int k = 0; k < dimension(); ++k) {
      const int i = static_cast<int>(node / stride(k)) % points(k);
      x[static_cast<std::size_t>(k)] = coordinate(k, i);
    }
  }

  // Distance (in cells) from the nearest grid face along any axis.
  int boundary_distance(std::size_t node) const {
    int d = points(0);
    for (int k = 0; k < dimension(); ++k) {
      const int i = static_cast<int>(node / stride(k)) % points(k);
      d = std::min(d, std::min(i, points(k) - 1 - i));
    }
    return d;
  }

  friend bool operator==(const GridSpec& a, const GridSpec& b) {
    return a.axes_ == b.axes_;
  }

 private:
  std::vector<Axis> axes_;
  std::vector<std::size_t> strides_;
  std::size_t total_ = 0;
};

// Per-axis quadrature weights dual to the difference stencils: with these,
// sum_i w_i (Df)_i telescopes to f_end - f_start exactly, so the discrete
// Stokes sum is exact to rounding. A perturbed trapezoid, second order.
inline std::vector<double> stokes_weights(double h, int points) {
  if (points < 3) throw std::invalid_argument("weights need at least 3 points");
  std::vector<double> w(static_cast<std::size_t>(points), h);
  if (points == 3) {
    w[0] = w[2] = h / 3.0;
    w[1] = 4.0 * h / 3.0;
  } else {
    w[0] = w[static_cast<std::size_t>(points - 1)] = 0.25 * h;
    w[1] = w[static_cast<std::size_t>(points - 2)] = 1.25 * h;
  }
  return w;
}

// Axis-aligned index sub-box of a parent grid (bounds inclusive).
class Region {
 public:
  enum class Location { interior, boundary, exterior };

  Region(GridSpec parent, std::vector<std::pair<int, int>> bounds)
      : parent_(std::move(parent)), bounds_(std::move(bounds)) {
    if (static_cast<int>(bounds_.size()) != parent_.dimension())
      throw std::invalid_argument("region bounds must cover every axis");
    for (int k = 0; k < parent_.dimension(); ++k) {
      const auto& [lo, hi] = bounds_[static_cast<std::size_t>(k)];
      if (lo < 0 || hi >= parent_.points(k) || hi - lo + 1 < 3)
        throw std::invalid_argument("region axis " + std::to_string(k + 1) +
                                    " must hold >= 3 in-range nodes");
    }
  }

  static Region full(const GridSpec& grid) {
    std::vector<std::pair<int, int>> b;
    for (int k = 0; k < grid.dimension(); ++k)
      b.emplace_back(0, grid.points(k) - 1);
    return Region(grid, std::move(b));
  }

  const GridSpec& parent() const { return parent_; }
  int lo(int k) const { return bounds_[static_cast<std::size_t>(k)].first; }
  int hi(int k) const { return bounds_[static_cast<std::size_t>(k)].second; }
  int extent(int k) const { return hi(k) - lo(k) + 1; }

  bool is_full() const {
    for (int k = 0; k < parent_.dimension(); ++k)
      if (lo(k) != 0 || hi(k) != parent_.points(k) - 1) return false;
    return true;
  }

  std::size_t node_count() const {
    std::size_t c = 1;
    for (int k = 0; k < parent_.dimension(); ++k)
      c *= static_cast<std::size_t>(extent(k));
    return c;
  }

  // The sub-box as a grid of its own (node set and spacings preserved).
  GridSpec subgrid() const {
    std::vector<Axis> axes;
    for (int k = 0; k < parent_.dimension(); ++k) {
      Axis a;
      a.min = parent_.coordinate(k, lo(k));
      a.max = parent_.coordinate(k, hi(k));
      a.points = extent(k);
      axes.push_back(a);
    }
    return GridSpec(std::move(axes));
  }

  // Interior means all 2n axis-neighbours stay inside the sub-box.
  Location classify(const std::vector<int>& parent_idx) const {
    bool interior = true;
    for (int k = 0; k < parent_.dimension(); ++k) {
      const int i = parent_idx[static_cast<std::size_t>(k)];
      if (i < lo(k) || i > hi(k)) return Location::exterior;
      if (i == lo(k) || i == hi(k)) interior = false;
    }
    return interior ? Location::interior : Location::boundary;
  }

 private:
  GridSpec parent_;
  std::vector<std::pair<int, int>> bounds_;
};

// 1 for nodes at least `offset` cells away from every grid face, else 0.
inline std::vector<std::uint8_t> interior_mask(const GridSpec& grid, int offset) {
  std::vector<std::uint8_t> mask(grid.node_count(), 1);
  if (offset <= 0) return mask;
  for (std::size_t node = 0; node < grid.node_count(); ++node)
    mask[node] = grid.boundary_distance(node) >= offset ? 1 : 0;
  return mask;
}

}  // namespace kcalc
