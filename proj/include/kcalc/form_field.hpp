#pragma once

// Sampled differential forms: one dense scalar lattice per basis monomial,
// plus the discrete operators d_h (central interior, one-sided second-order
// at faces), d, delta, the Kahler derivative and the Laplacian, and the
// pointwise algebra lifted to fields.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "kcalc/basis.hpp"
#include "kcalc/grid.hpp"
#include "kcalc/multivector.hpp"

namespace kcalc {

using Lattice = std::vector<double>;

class FormField {
 public:
  explicit FormField(GridSpec grid) : grid_(std::move(grid)) {}

  const GridSpec& grid() const { return grid_; }
  const std::map<BasisMask, Lattice>& components() const { return comps_; }
  bool empty() const { return comps_.empty(); }

  Lattice& component(BasisMask mask) {
    if ((mask & ~full_mask(grid_.dimension())) != 0u)
      throw std::invalid_argument("basis mask uses axes beyond the dimension");
    auto [it, inserted] = comps_.try_emplace(mask);
    if (inserted) it->second.assign(grid_.node_count(), 0.0);
    return it->second;
  }

  const Lattice* find(BasisMask mask) const {
    auto it = comps_.find(mask);
    return it == comps_.end() ? nullptr : &it->second;
  }

  double value(BasisMask mask, std::size_t node) const {
    const Lattice* lat = find(mask);
    return lat ? (*lat)[node] : 0.0;
  }

  Multivector at(std::size_t node) const {
    Multivector m(grid_.dimension());
    for (const auto& [mask, lat] : comps_) m.add(mask, lat[node]);
    return m;
  }

  // Grade if every non-null component lattice sits on one grade.
  std::optional<int> homogeneous_grade() const {
    std::optional<int> g;
    for (const auto& [mask, lat] : comps_) {
      bool nonzero = false;
      for (double v : lat)
        if (v != 0.0) {
          nonzero = true;
          break;
        }
      if (!nonzero) continue;
      const int r = grade_of(mask);
      if (g && *g != r) return std::nullopt;
      g = r;
    }
    return g;
  }

  // Grades carrying a nonzero lattice, ascending.
  std::vector<int> grades() const {
    std::vector<int> out;
    for (int r = 0; r <= grid_.dimension(); ++r) {
      bool present = false;
      for (const auto& [mask, lat] : comps_) {
        if (grade_of(mask) != r) continue;
        for (double v : lat)
          if (v != 0.0) {
            present = true;
            break;
          }
        if (present) break;
      }
      if (present) out.push_back(r);
    }
    return out;
  }

  void drop_zero_components() {
    for (auto it = comps_.begin(); it != comps_.end();) {
      bool nonzero = false;
      for (double v : it->second)
        if (v != 0.0) {
          nonzero = true;
          break;
        }
      it = nonzero ? std::next(it) : comps_.erase(it);
    }
  }

  void accumulate(BasisMask mask, const Lattice& values, double factor) {
    Lattice& lat = component(mask);
    for (std::size_t i = 0; i < lat.size(); ++i) lat[i] += factor * values[i];
  }

  FormField& operator+=(const FormField& o) {
    require_same_grid(o);
    for (const auto& [mask, lat] : o.comps_) accumulate(mask, lat, 1.0);
    return *this;
  }
  FormField& operator-=(const FormField& o) {
    require_same_grid(o);
    for (const auto& [mask, lat] : o.comps_) accumulate(mask, lat, -1.0);
    return *this;
  }
  FormField& operator*=(double s) {
    for (auto& [mask, lat] : comps_)
      for (double& v : lat) v *= s;
    return *this;
  }

  friend FormField operator+(FormField a, const FormField& b) { return a += b; }
  friend FormField operator-(FormField a, const FormField& b) { return a -= b; }
  friend FormField operator*(FormField a, double s) { return a *= s; }
  friend FormField operator*(double s, FormField a) { return a *= s; }

  void require_same_grid(const FormField& o) const {
    if (!(grid_ == o.grid_))
      throw std::invalid_argument("fields live on different grids");
  }

 private:
  GridSpec grid_;
  std::map<BasisMask, Lattice> comps_;
};

// Samples coefficient functions of the node coordinates.
inline FormField sample_field(
    const GridSpec& grid,
    const std::map<BasisMask, std::function<double(const std::vector<double>&)>>&
        coefficients) {
  FormField f(grid);
  std::vector<double> x;
  for (const auto& [mask, fn] : coefficients) {
    Lattice& lat = f.component(mask);
    for (std::size_t node = 0; node < grid.node_count(); ++node) {
      grid.coordinates(node, x);
      lat[node] = fn(x);
    }
  }
  return f;
}

// ---------------------------------------------------------------------------
// difference stencils

// Central differences inside, one-sided second-order at the faces; the
// one-sided forms subtract node values first so constant lattices map to
// exactly zero.
inline Lattice partial_derivative(const Lattice& f, const GridSpec& grid, int axis) {
  if (axis < 1 || axis > grid.dimension())
    throw std::invalid_argument("derivative axis outside dimension");
  const int k = axis - 1;
  const std::size_t stride = grid.stride(k);
  const int count = grid.points(k);
  const double inv2h = 1.0 / (2.0 * grid.spacing(k));
  Lattice out(f.size());
  for (std::size_t node = 0; node < f.size(); ++node) {
    const int i = static_cast<int>(node / stride) % count;
    if (i == 0)
      out[node] = (4.0 * (f[node + stride] - f[node]) -
                   (f[node + 2 * stride] - f[node])) * inv2h;
    else if (i == count - 1)
      out[node] = (4.0 * (f[node] - f[node - stride]) -
                   (f[node] - f[node - 2 * stride])) * inv2h;
    else
      out[node] = (f[node + stride] - f[node - stride]) * inv2h;
  }
  return out;
}

inline FormField partial_derivative(const FormField& u, int axis) {
  FormField out(u.grid());
  for (const auto& [mask, lat] : u.components())
    out.component(mask) = partial_derivative(lat, u.grid(), axis);
  return out;
}

// Per-axis second differences accumulated into one lattice: the compact
// (2n+1)-point Laplacian, one-sided at the faces. Composing two
// first-derivative stencils instead doubles the effective spacing, so this
// form is preferred wherever a scalar's Laplacian feeds a quadrature.
inline Lattice second_difference_laplacian(const Lattice& f,
                                           const GridSpec& grid) {
  Lattice out(f.size(), 0.0);
  for (int k = 0; k < grid.dimension(); ++k) {
    const std::size_t stride = grid.stride(k);
    const int count = grid.points(k);
    const double inv_h2 = 1.0 / (grid.spacing(k) * grid.spacing(k));
    for (std::size_t node = 0; node < f.size(); ++node) {
      const int i = static_cast<int>(node / stride) % count;
      double second;
      if (i == 0)
        second = f[node] - 2.0 * f[node + stride] + f[node + 2 * stride];
      else if (i == count - 1)
        second = f[node] - 2.0 * f[node - stride] + f[node - 2 * stride];
      else
        second = f[node + stride] - 2.0 * f[node] + f[node - stride];
      out[node] += second * inv_h2;
    }
  }
  return out;
}

// d u = sum_h dx^h ^ d_h u.
inline FormField exterior_derivative(const FormField& u) {
  FormField out(u.grid());
  const int n = u.grid().dimension();
  for (const auto& [mask, lat] : u.components())
    for (int h = 1; h <= n; ++h) {
      const BasisMask hm = BasisMask{1} << (h - 1);
      if (!exterior_nonzero(hm, mask)) continue;
      out.accumulate(clifford_mask(hm, mask),
                     partial_derivative(lat, u.grid(), h),
                     clifford_sign(hm, mask));
    }
  return out;
}

// delta u = sum_h dx^h . d_h u.
inline FormField interior_derivative(const FormField& u) {
  FormField out(u.grid());
  const int n = u.grid().dimension();
  for (const auto& [mask, lat] : u.components())
    for (int h = 1; h <= n; ++h) {
      const BasisMask hm = BasisMask{1} << (h - 1);
      if (exterior_nonzero(hm, mask)) continue;
      out.accumulate(clifford_mask(hm, mask),
                     partial_derivative(lat, u.grid(), h),
                     clifford_sign(hm, mask));
    }
  return out;
}

// The Kahler derivative assembled directly as sum_h dx^h v d_h u; term by
// term identical to exterior_derivative + interior_derivative.
inline FormField kahler_derivative(const FormField& u) {
  FormField out(u.grid());
  const int n = u.grid().dimension();
  for (const auto& [mask, lat] : u.components())
    for (int h = 1; h <= n; ++h) {
      const BasisMask hm = BasisMask{1} << (h - 1);
      out.accumulate(clifford_mask(hm, mask),
                     partial_derivative(lat, u.grid(), h),
                     clifford_sign(hm, mask));
    }
  return out;
}

// Laplacian via the composition delta(d u) + d(delta u).
inline FormField laplacian(const FormField& u) {
  return interior_derivative(exterior_derivative(u)) +
         exterior_derivative(interior_derivative(u));
}

// ---------------------------------------------------------------------------
// pointwise algebra on fields

namespace detail {

enum class ProductKind { clifford, exterior, interior_left };

inline bool product_term_survives(ProductKind kind, BasisMask a, BasisMask b) {
  switch (kind) {
    case ProductKind::clifford: return true;
    case ProductKind::exterior: return exterior_nonzero(a, b);
    case ProductKind::interior_left: return !exterior_nonzero(a, b);
  }
  return false;
}

inline FormField field_product(ProductKind kind, const FormField& u,
                               const FormField& v) {
  u.require_same_grid(v);
  FormField out(u.grid());
  for (const auto& [a, la] : u.components())
    for (const auto& [b, lb] : v.components()) {
      if (!product_term_survives(kind, a, b)) continue;
      const double sign = clifford_sign(a, b);
      Lattice& dst = out.component(clifford_mask(a, b));
      for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += sign * la[i] * lb[i];
    }
  return out;
}

}  // namespace detail

inline FormField clifford_product(const FormField& u, const FormField& v) {
  return detail::field_product(detail::ProductKind::clifford, u, v);
}

inline FormField exterior_product(const FormField& u, const FormField& v) {
  return detail::field_product(detail::ProductKind::exterior, u, v);
}

// w . u for a grade-1 w (per node the grade-lowering half of w v u).
inline FormField interior_product(const FormField& w, const FormField& u) {
  for (const auto& [mask, lat] : w.components())
    if (grade_of(mask) != 1)
      throw std::invalid_argument("interior product requires a grade-1 left factor");
  return detail::field_product(detail::ProductKind::interior_left, w, u);
}

// Products with constant differentials.
inline FormField clifford_product(const FormField& u, const Multivector& c) {
  FormField out(u.grid());
  for (const auto& [a, la] : u.components())
    for (const auto& [b, cb] : c.terms())
      out.accumulate(clifford_mask(a, b), la, clifford_sign(a, b) * cb);
  return out;
}

inline FormField clifford_product(const Multivector& c, const FormField& u) {
  FormField out(u.grid());
  for (const auto& [a, ca] : c.terms())
    for (const auto& [b, lb] : u.components())
      out.accumulate(clifford_mask(a, b), lb, clifford_sign(a, b) * ca);
  return out;
}

inline FormField exterior_product(const Multivector& c, const FormField& u) {
  FormField out(u.grid());
  for (const auto& [a, ca] : c.terms())
    for (const auto& [b, lb] : u.components())
      if (exterior_nonzero(a, b))
        out.accumulate(clifford_mask(a, b), lb, clifford_sign(a, b) * ca);
  return out;
}

// e^h u = dx^h . u for a single axis h.
inline FormField axis_interior(int h, const FormField& u) {
  FormField out(u.grid());
  const BasisMask hm = BasisMask{1} << (h - 1);
  for (const auto& [b, lb] : u.components())
    if (!exterior_nonzero(hm, b))
      out.accumulate(clifford_mask(hm, b), lb, clifford_sign(hm, b));
  return out;
}

// u . w for a grade-1 constant w (used by the constant-differential rules).
inline FormField interior_product_right(const FormField& u, const Multivector& w) {
  if (!w.is_zero() && w.homogeneous_grade() != 1)
    throw std::invalid_argument("interior product requires a grade-1 right factor");
  FormField out(u.grid());
  for (const auto& [a, la] : u.components())
    for (const auto& [b, cb] : w.terms())
      if (!exterior_nonzero(a, b))
        out.accumulate(clifford_mask(a, b), la, clifford_sign(a, b) * cb);
  return out;
}

// c . w for a constant c and a grade-1 field w.
inline FormField interior_product_right(const Multivector& c, const FormField& w) {
  for (const auto& [mask, lat] : w.components())
    if (grade_of(mask) != 1)
      throw std::invalid_argument("interior product requires a grade-1 right factor");
  FormField out(w.grid());
  for (const auto& [a, ca] : c.terms())
    for (const auto& [b, lb] : w.components())
      if (!exterior_nonzero(a, b))
        out.accumulate(clifford_mask(a, b), lb, clifford_sign(a, b) * ca);
  return out;
}

inline FormField eta(const FormField& u) {
  FormField out(u.grid());
  for (const auto& [mask, lat] : u.components())
    out.accumulate(mask, lat, eta_sign(mask));
  return out;
}

inline FormField reversion(const FormField& u) {
  FormField out(u.grid());
  for (const auto& [mask, lat] : u.components())
    out.accumulate(mask, lat, reversion_sign(mask));
  return out;
}

inline FormField grade_project(const FormField& u, int r) {
  FormField out(u.grid());
  for (const auto& [mask, lat] : u.components())
    if (grade_of(mask) == r) out.accumulate(mask, lat, 1.0);
  return out;
}

// ---------------------------------------------------------------------------
// norms over node subsets

inline double max_abs(const FormField& u, const std::vector<std::uint8_t>& mask) {
  double worst = 0.0;
  for (const auto& [m, lat] : u.components())
    for (std::size_t i = 0; i < lat.size(); ++i)
      if (mask.empty() || mask[i]) worst = std::max(worst, std::abs(lat[i]));
  return worst;
}

inline double max_abs(const FormField& u) { return max_abs(u, {}); }

inline double l2_norm(const FormField& u, const std::vector<std::uint8_t>& mask) {
  double sum = 0.0;
  for (const auto& [m, lat] : u.components())
    for (std::size_t i = 0; i < lat.size(); ++i)
      if (mask.empty() || mask[i]) sum += lat[i] * lat[i];
  return std::sqrt(sum);
}

inline double l2_norm(const FormField& u) { return l2_norm(u, {}); }

// ---------------------------------------------------------------------------
// product rules

// Max-norm residuals of the Leibniz-type identities tying d_h, d, delta and
// the Kahler derivative to the Clifford and exterior products.  Each key
// names derivative-of-product; boundary nodes are excluded unless asked for.
struct ProductRuleReport {
  std::map<std::string, double> residuals;

  double max_residual() const {
    double worst = 0.0;
    for (const auto& [key, value] : residuals) worst = std::max(worst, value);
    return worst;
  }
};

namespace detail {

inline FormField cross_terms(ProductKind kind, const FormField& u,
                             const FormField& v) {
  // sum_h (e^h u) * d_h v under the requested product.
  FormField out(u.grid());
  for (int h = 1; h <= u.grid().dimension(); ++h)
    out += field_product(kind, axis_interior(h, u), partial_derivative(v, h));
  return out;
}

inline FormField cross_terms_reversed(ProductKind kind, const FormField& u,
                                      const FormField& v) {
  // sum_h eta(d_h u) * (e_h v) under the requested product.
  FormField out(u.grid());
  for (int h = 1; h <= u.grid().dimension(); ++h)
    out += field_product(kind, eta(partial_derivative(u, h)), axis_interior(h, v));
  return out;
}

}  // namespace detail

// Residuals measured at the nodes selected by `mask` (empty = all nodes).
inline ProductRuleReport verify_product_rules(
    const FormField& u, const FormField& v,
    const std::vector<std::uint8_t>& mask) {
  u.require_same_grid(v);
  ProductRuleReport rep;
  const auto measure = [&](const char* key, const FormField& gap) {
    rep.residuals[key] = max_abs(gap, mask);
  };

  using detail::ProductKind;
  const FormField uv = clifford_product(u, v);
  const FormField uwv = exterior_product(u, v);
  const FormField cross_c = detail::cross_terms(ProductKind::clifford, u, v);
  const FormField cross_rc = detail::cross_terms_reversed(ProductKind::clifford, u, v);
  const FormField cross_e = detail::cross_terms(ProductKind::exterior, u, v);
  const FormField cross_re = detail::cross_terms_reversed(ProductKind::exterior, u, v);

  {
    double worst = 0.0;
    for (int h = 1; h <= u.grid().dimension(); ++h) {
      const FormField gap = partial_derivative(uv, h) -
                            clifford_product(partial_derivative(u, h), v) -
                            clifford_product(u, partial_derivative(v, h));
      worst = std::max(worst, max_abs(gap, mask));
    }
    rep.residuals["leibniz_partial_clifford"] = worst;
  }

  measure("kahler_of_clifford",
          kahler_derivative(uv) - clifford_product(kahler_derivative(u), v) -
              clifford_product(eta(u), kahler_derivative(v)) - 2.0 * cross_c);
  measure("exterior_of_clifford",
          exterior_derivative(uv) -
              clifford_product(exterior_derivative(u), v) -
              clifford_product(eta(u), exterior_derivative(v)) - cross_c +
              cross_rc);
  measure("interior_of_clifford",
          interior_derivative(uv) -
              clifford_product(interior_derivative(u), v) -
              clifford_product(eta(u), interior_derivative(v)) - cross_c -
              cross_rc);
  measure("kahler_of_exterior",
          kahler_derivative(uwv) - exterior_product(kahler_derivative(u), v) -
              exterior_product(eta(u), kahler_derivative(v)) - cross_e -
              cross_re);
  measure("exterior_of_exterior",
          exterior_derivative(uwv) -
              exterior_product(exterior_derivative(u), v) -
              exterior_product(eta(u), exterior_derivative(v)));
  measure("interior_of_exterior",
          interior_derivative(uwv) -
              exterior_product(interior_derivative(u), v) -
              exterior_product(eta(u), interior_derivative(v)) - cross_e -
              cross_re);
  return rep;
}

inline ProductRuleReport verify_product_rules(const FormField& u,
                                              const FormField& v,
                                              bool include_boundary = false) {
  return verify_product_rules(u, v,
                              include_boundary ? std::vector<std::uint8_t>{}
                                               : interior_mask(u.grid(), 1));
}

// Restriction to a region's sub-box (values copied onto the subgrid).
inline FormField restrict_to(const FormField& u, const Region& region) {
  if (!(u.grid() == region.parent()))
    throw std::invalid_argument("field does not live on the region's parent grid");
  const GridSpec sub = region.subgrid();
  FormField out(sub);
  const int n = sub.dimension();
  std::vector<int> idx;
  for (const auto& [mask, lat] : u.components()) {
    Lattice& dst = out.component(mask);
    for (std::size_t node = 0; node < sub.node_count(); ++node) {
      sub.unflatten(node, idx);
      std::size_t parent_node = 0;
      for (int k = 0; k < n; ++k)
        parent_node += static_cast<std::size_t>(idx[static_cast<std::size_t>(k)] +
                                                region.lo(k)) *
                       region.parent().stride(k);
      dst[node] = lat[parent_node];
    }
  }
  return out;
}

}  // namespace kcalc
