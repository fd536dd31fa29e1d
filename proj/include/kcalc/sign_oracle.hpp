#pragma once

// Reference route for the algebra products, deliberately independent of the
// bitmask machinery in basis.hpp: a product of monomials is the concatenated
// axis list, bubble-sorted with one sign flip per transposition, with adjacent
// equal axes cancelled in pairs (identity metric). Used by the exhaustive
// check-algebra suite and the unit tests.

#include <utility>
#include <vector>

#include "kcalc/basis.hpp"
#include "kcalc/multivector.hpp"

namespace kcalc::oracle {

struct SignedMonomial {
  std::vector<int> axes;  // strictly increasing after normalization
  int sign = 1;           // 0 means the product vanished (never for Clifford)
};

// Sorts the concatenation of two increasing axis lists, counting transpositions
// and cancelling equal neighbours.
inline SignedMonomial clifford_monomial(const std::vector<int>& a,
                                        const std::vector<int>& b) {
  SignedMonomial m;
  m.axes = a;
  m.axes.insert(m.axes.end(), b.begin(), b.end());
  bool moved = true;
  while (moved) {
    moved = false;
    for (std::size_t i = 0; i + 1 < m.axes.size(); ++i) {
      if (m.axes[i] > m.axes[i + 1]) {
        std::swap(m.axes[i], m.axes[i + 1]);
        m.sign = -m.sign;
        moved = true;
      } else if (m.axes[i] == m.axes[i + 1]) {
        m.axes.erase(m.axes.begin() + static_cast<long>(i),
                     m.axes.begin() + static_cast<long>(i) + 2);
        moved = true;
        break;
      }
    }
  }
  return m;
}

inline Multivector clifford_product(const Multivector& u, const Multivector& v) {
  Multivector out(u.dimension());
  for (const auto& [ma, ca] : u.terms())
    for (const auto& [mb, cb] : v.terms()) {
      SignedMonomial m = clifford_monomial(axes_of(ma), axes_of(mb));
      out.add(mask_from_axes(m.axes, u.dimension()), m.sign * ca * cb);
    }
  return out;
}

inline Multivector exterior_product(const Multivector& u, const Multivector& v) {
  Multivector out(u.dimension());
  for (const auto& [ma, cb_outer] : u.terms())
    for (const auto& [mb, cb] : v.terms()) {
      const std::vector<int> a = axes_of(ma), b = axes_of(mb);
      bool shared = false;
      for (int x : a)
        for (int y : b)
          if (x == y) shared = true;
      if (shared) continue;  // repeated generator: wedge term vanishes
      SignedMonomial m = clifford_monomial(a, b);
      out.add(mask_from_axes(m.axes, u.dimension()), m.sign * cb_outer * cb);
    }
  return out;
}

// w . u = w v u - w ^ u for grade-1 w.
inline Multivector interior_product(const Multivector& w, const Multivector& u) {
  return oracle::clifford_product(w, u) - oracle::exterior_product(w, u);
}

// Complement by definition: search the sign s with dx^A ^ (s dx^Abar) = z.
inline Complement complement_of(BasisMask a, int n) {
  Complement c;
  c.mask = full_mask(n) & ~a;
  const Multivector lhs = oracle::exterior_product(Multivector(n, a, 1.0),
                                                   Multivector(n, c.mask, 1.0));
  c.sign = lhs.coeff(full_mask(n)) > 0 ? 1 : -1;
  return c;
}

}  // namespace kcalc::oracle
