#pragma once

// Exhaustive verification of the algebra against the list-based oracle:
// every product of basis monomials, associativity on all triples, the
// generator anticommutation relation, the grade-1 split of the Clifford
// product, involution properties and signed complements.

#include <cstdint>
#include <string>
#include <vector>

#include "kcalc/basis.hpp"
#include "kcalc/multivector.hpp"
#include "kcalc/sign_oracle.hpp"

namespace kcalc {

struct AlgebraCheckReport {
  int dimension = 0;
  long long checks = 0;
  long long mismatches = 0;
  std::vector<std::string> failures;  // first few mismatch descriptions

  bool ok() const { return mismatches == 0; }

  void record(bool good, long long weight, const std::string& what) {
    checks += weight;
    if (!good) {
      ++mismatches;
      if (failures.size() < 16) failures.push_back(what);
    }
  }
};

// Exhaustive suite for one dimension. Pair products scale as 4^n and the
// associativity sweep as 8^n; n <= 6 stays well under a second.
inline AlgebraCheckReport check_algebra(int n) {
  check_dimension(n);
  AlgebraCheckReport rep;
  rep.dimension = n;
  const BasisMask full = full_mask(n);

  auto mono = [n](BasisMask m) { return Multivector(n, m, 1.0); };

  // Products of all basis pairs against the oracle, all three operations.
  for (BasisMask a = 0; a <= full; ++a) {
    for (BasisMask b = 0; b <= full; ++b) {
      const Multivector u = mono(a), v = mono(b);
      rep.record(clifford_product(u, v) == oracle::clifford_product(u, v), 1,
                 "clifford " + basis_label(a) + "," + basis_label(b));
      rep.record(exterior_product(u, v) == oracle::exterior_product(u, v), 1,
                 "exterior " + basis_label(a) + "," + basis_label(b));
      if (grade_of(a) == 1)
        rep.record(interior_product(u, v) == oracle::interior_product(u, v), 1,
                   "interior " + basis_label(a) + "," + basis_label(b));
      // Grade-1 split: w v u = w ^ u + w . u.
      if (grade_of(a) == 1)
        rep.record(clifford_product(u, v) ==
                       exterior_product(u, v) + interior_product(u, v),
                   1, "split " + basis_label(a) + "," + basis_label(b));
    }
  }

  // Generator relation dx^i v dx^j + dx^j v dx^i = 2 delta^ij.
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      const Multivector gi(n, BasisMask{1} << (i - 1), 1.0);
      const Multivector gj(n, BasisMask{1} << (j - 1), 1.0);
      const Multivector lhs = clifford_product(gi, gj) + clifford_product(gj, gi);
      const Multivector rhs(n, 0u, i == j ? 2.0 : 0.0);
      rep.record(lhs == rhs, 1,
                 "generators " + std::to_string(i) + "," + std::to_string(j));
    }

  // Associativity of the Clifford and exterior products on all basis triples.
  for (BasisMask a = 0; a <= full; ++a)
    for (BasisMask b = 0; b <= full; ++b)
      for (BasisMask c = 0; c <= full; ++c) {
        const Multivector u = mono(a), v = mono(b), w = mono(c);
        rep.record(clifford_product(clifford_product(u, v), w) ==
                       clifford_product(u, clifford_product(v, w)),
                   1, "clifford assoc");
        rep.record(exterior_product(exterior_product(u, v), w) ==
                       exterior_product(u, exterior_product(v, w)),
                   1, "exterior assoc");
      }

  // eta and zeta are involutions, commute, and act by the advertised signs.
  for (BasisMask a = 0; a <= full; ++a) {
    const Multivector u = mono(a);
    const int r = grade_of(a);
    rep.record(eta(eta(u)) == u && reversion(reversion(u)) == u, 1, "involution");
    rep.record(eta(reversion(u)) == reversion(eta(u)), 1, "eta/zeta commute");
    rep.record(eta(u) == u * ((r % 2) ? -1.0 : 1.0), 1, "eta sign");
    rep.record(reversion(u) == u * (((r * (r - 1) / 2) % 2) ? -1.0 : 1.0), 1,
               "zeta sign");
  }

  // Complements: dx^A ^ (s dx^Abar) = z, against the searched oracle sign.
  const Multivector z = unit_n_form(n);
  for (BasisMask a = 0; a <= full; ++a) {
    const Complement c = complement_of(a, n);
    const Complement co = oracle::complement_of(a, n);
    const Multivector wedge =
        exterior_product(mono(a), Multivector(n, c.mask, double(c.sign)));
    rep.record(c.mask == co.mask && c.sign == co.sign && wedge == z, 1,
               "complement " + basis_label(a));
  }

  // z v z = (-1)^(n(n-1)/2).
  const double zz_expect = ((n * (n - 1) / 2) % 2) ? -1.0 : 1.0;
  rep.record(clifford_product(z, z) == Multivector(n, 0u, zz_expect), 1, "z v z");

  return rep;
}

}  // namespace kcalc
