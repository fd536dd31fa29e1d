#pragma once

// Scalar products of form fields and the discrete Green identity
// d(u,v)_1 = (u, ∂v) + (v, ∂u), together with the energy quadrature used by
// the uniqueness checks.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "kcalc/basis.hpp"
#include "kcalc/form_field.hpp"
#include "kcalc/grid.hpp"
#include "kcalc/multivector.hpp"

namespace kcalc {

// Zero-order scalar product (u, v): the pointwise scalar part of
// reversion(u) ∨ v. Only equal-mask component pairs survive, each with unit
// net sign, so this is the Euclidean pairing of coefficients.
inline Lattice scalar_product_zero(const FormField& u, const FormField& v) {
  u.require_same_grid(v);
  Lattice out(u.grid().node_count(), 0.0);
  for (const auto& [mask, lu] : u.components()) {
    const Lattice* lv = v.find(mask);
    if (lv == nullptr) continue;
    const double sign = static_cast<double>(reversion_sign(mask)) *
                        static_cast<double>(clifford_sign(mask, mask));
    for (std::size_t node = 0; node < out.size(); ++node)
      out[node] += sign * lu[node] * (*lv)[node];
  }
  return out;
}

// First-order scalar product (u,v)_1 = Σ_i (dx^i ∨ u, v) dx^i·z, a grade
// n−1 field; its exterior derivative is what the Green identity equates
// with (u,∂v) + (v,∂u).
inline FormField scalar_product_one(const FormField& u, const FormField& v) {
  u.require_same_grid(v);
  const int n = u.grid().dimension();
  const BasisMask full = full_mask(n);
  FormField out(u.grid());
  for (int i = 1; i <= n; ++i) {
    const BasisMask axis = BasisMask{1} << (i - 1);
    const Multivector dxi(n, axis, 1.0);
    const Lattice inner = scalar_product_zero(clifford_product(dxi, u), v);
    // dx^i · z = clifford_sign(axis, full) dx^(full minus axis)
    const double sign = clifford_sign(axis, full);
    out.accumulate(full & ~axis, inner, sign);
  }
  out.drop_zero_components();
  return out;
}

namespace detail {

// per-axis boundary-corrected quadrature weights, one table per axis
inline std::vector<std::vector<double>> axis_weight_table(const GridSpec& grid) {
  std::vector<std::vector<double>> w;
  w.reserve(static_cast<std::size_t>(grid.dimension()));
  for (int k = 0; k < grid.dimension(); ++k)
    w.push_back(stokes_weights(grid.spacing(k), grid.points(k)));
  return w;
}

// per-node product of the per-axis weights
inline Lattice stokes_weight_lattice(const GridSpec& grid) {
  const auto axis_w = axis_weight_table(grid);
  Lattice out(grid.node_count(), 1.0);
  std::vector<int> idx;
  for (std::size_t node = 0; node < out.size(); ++node) {
    grid.unflatten(node, idx);
    for (int k = 0; k < grid.dimension(); ++k)
      out[node] *= axis_w[static_cast<std::size_t>(k)]
                         [static_cast<std::size_t>(idx[static_cast<std::size_t>(k)])];
  }
  return out;
}

}  // namespace detail

struct GreenIdentityReport {
  double pointwise_max = 0.0;   // max |d(u,v)_1 − (u,∂v) − (v,∂u)| at interior nodes
  double boundary_sum = 0.0;    // oriented face quadrature of (u,v)_1
  double volume_sum = 0.0;      // volume quadrature of (u,∂v) + (v,∂u)
  double integrated_gap = 0.0;  // |boundary_sum − volume_sum|
};

// Pointwise and integrated residuals of the Green identity on a region.
// The volume quadrature uses the boundary-corrected weights whose telescoping
// makes the weighted sum of d(u,v)_1 equal the face sum identically, so the
// integrated gap is exactly the weighted integral of the pointwise residual.
inline GreenIdentityReport green_identity_report(const FormField& u_in,
                                                 const FormField& v_in,
                                                 const Region& region) {
  u_in.require_same_grid(v_in);
  const FormField u = restrict_to(u_in, region);
  const FormField v = restrict_to(v_in, region);
  const GridSpec& grid = u.grid();
  const int n = grid.dimension();
  const BasisMask full = full_mask(n);

  const FormField current = scalar_product_one(u, v);
  const FormField d_current = exterior_derivative(current);
  Lattice lhs(grid.node_count(), 0.0);
  if (const Lattice* top = d_current.find(full)) lhs = *top;

  Lattice rhs = scalar_product_zero(u, kahler_derivative(v));
  {
    const Lattice other = scalar_product_zero(v, kahler_derivative(u));
    for (std::size_t node = 0; node < rhs.size(); ++node)
      rhs[node] += other[node];
  }

  GreenIdentityReport report;
  const std::vector<std::uint8_t> inner = interior_mask(grid, 1);
  for (std::size_t node = 0; node < lhs.size(); ++node)
    if (inner[node])
      report.pointwise_max =
          std::max(report.pointwise_max, std::abs(lhs[node] - rhs[node]));

  const auto axis_w = detail::axis_weight_table(grid);
  {
    const Lattice weights = detail::stokes_weight_lattice(grid);
    for (std::size_t node = 0; node < rhs.size(); ++node)
      report.volume_sum += weights[node] * rhs[node];
  }

  // face sum: component on full∖{i} carries orientation dx^i ∧ dx^(full∖i)
  // = (−1)^(i−1) z; top face minus bottom face, transverse weights only.
  std::vector<int> idx;
  for (int i = 1; i <= n; ++i) {
    const BasisMask axis = BasisMask{1} << (i - 1);
    const Lattice* comp = current.find(full & ~axis);
    if (comp == nullptr) continue;
    const double orient = (i % 2 == 1) ? 1.0 : -1.0;
    const std::size_t stride = grid.stride(i - 1);
    const int count = grid.points(i - 1);
    for (std::size_t node = 0; node < comp->size(); ++node) {
      grid.unflatten(node, idx);
      if (idx[static_cast<std::size_t>(i - 1)] != 0) continue;
      double transverse = 1.0;
      for (int k = 0; k < n; ++k)
        if (k != i - 1)
          transverse *= axis_w[static_cast<std::size_t>(k)]
                              [static_cast<std::size_t>(idx[static_cast<std::size_t>(k)])];
      const std::size_t top = node + stride * static_cast<std::size_t>(count - 1);
      report.boundary_sum += orient * transverse * ((*comp)[top] - (*comp)[node]);
    }
  }
  report.integrated_gap = std::abs(report.boundary_sum - report.volume_sum);
  return report;
}

// Squared energy: Σ over region nodes and basis indices of coefficient²,
// weighted by the same boundary-corrected quadrature, so a unit constant
// coefficient integrates to the exact region volume.
inline double energy_norm(const FormField& alpha, const Region& region) {
  const FormField local = restrict_to(alpha, region);
  const Lattice weights = detail::stokes_weight_lattice(local.grid());
  double acc = 0.0;
  for (const auto& [mask, lat] : local.components())
    for (std::size_t node = 0; node < lat.size(); ++node)
      acc += weights[node] * lat[node] * lat[node];
  return acc;
}

}  // namespace kcalc
