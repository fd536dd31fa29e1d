#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "kcalc/algebra_check.hpp"
#include "kcalc/basis.hpp"
#include "kcalc/multivector.hpp"
#include "kcalc/sign_oracle.hpp"

using namespace kcalc;

namespace {

Multivector mono(int n, std::initializer_list<int> axes, double c = 1.0) {
  return Multivector(n, mask_from_axes(std::vector<int>(axes), n), c);
}

Multivector random_multivector(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coeff(-2.0, 2.0);
  std::uniform_int_distribution<BasisMask> mask(0u, full_mask(n));
  Multivector u(n);
  for (int t = 0; t < 6; ++t) u.add(mask(rng), coeff(rng));
  return u;
}

double max_abs_diff(const Multivector& a, const Multivector& b) {
  Multivector diff = a - b;
  double worst = 0.0;
  for (const auto& [mask, c] : diff.terms()) worst = std::max(worst, std::abs(c));
  return worst;
}

}  // namespace

TEST_CASE("generator products", "[algebra]") {
  const int n = 3;
  CHECK(clifford_product(mono(n, {1}), mono(n, {1})) == Multivector(n, 0u, 1.0));
  CHECK(clifford_product(mono(n, {1}), mono(n, {2})) == mono(n, {1, 2}));
  CHECK(clifford_product(mono(n, {2}), mono(n, {1})) == mono(n, {1, 2}, -1.0));
  // (dx1 ^ dx2) v dx2 = dx1
  CHECK(clifford_product(mono(n, {1, 2}), mono(n, {2})) == mono(n, {1}));
}

TEST_CASE("exterior product basics", "[algebra]") {
  const int n = 3;
  CHECK(exterior_product(mono(n, {1}), mono(n, {1})).is_zero());
  CHECK(exterior_product(mono(n, {2}), mono(n, {1})) == mono(n, {1, 2}, -1.0));
  CHECK(exterior_product(mono(n, {1}), mono(n, {2, 3})) == mono(n, {1, 2, 3}));
}

TEST_CASE("interior product of grade-1 with monomials", "[algebra]") {
  const int n = 3;
  CHECK(interior_product(mono(n, {1}), mono(n, {1, 3})) == mono(n, {3}));
  CHECK(interior_product(mono(n, {3}), mono(n, {1, 3})) == mono(n, {1}, -1.0));
  CHECK(interior_product(mono(n, {2}), mono(n, {1, 3})).is_zero());
  CHECK(interior_product(mono(n, {1}), mono(n, {})).is_zero());
  CHECK_THROWS_AS(interior_product(mono(n, {1, 2}), mono(n, {3})),
                  std::invalid_argument);
}

TEST_CASE("grade-1 split of the Clifford product", "[algebra]") {
  std::mt19937_64 rng(20240517);
  for (int rep = 0; rep < 200; ++rep) {
    const int n = 1 + int(rng() % 5);
    Multivector w(n);
    std::uniform_real_distribution<double> coeff(-2.0, 2.0);
    for (int i = 1; i <= n; ++i)
      w.add(mask_from_axes({i}, n), coeff(rng));
    const Multivector u = random_multivector(n, rng);
    const Multivector lhs = clifford_product(w, u);
    const Multivector rhs = exterior_product(w, u) + interior_product(w, u);
    // term-by-term the split is exact; sums may associate differently
    REQUIRE(max_abs_diff(lhs, rhs) < 1e-14);
  }
}

TEST_CASE("involutions", "[algebra]") {
  const int n = 3;
  Multivector u(n);
  u.add(0u, 1.0);
  u.add(mask_from_axes({1}, n), 1.0);
  u.add(mask_from_axes({1, 2}, n), 1.0);
  Multivector eta_expect(n);
  eta_expect.add(0u, 1.0);
  eta_expect.add(mask_from_axes({1}, n), -1.0);
  eta_expect.add(mask_from_axes({1, 2}, n), 1.0);
  CHECK(eta(u) == eta_expect);

  CHECK(reversion(mono(n, {1, 2})) == mono(n, {1, 2}, -1.0));
  CHECK(reversion(mono(n, {1, 2, 3})) == mono(n, {1, 2, 3}, -1.0));
  CHECK(reversion(mono(n, {1})) == mono(n, {1}));
}

TEST_CASE("unit n-form squares", "[algebra]") {
  // z v z = (-1)^(n(n-1)/2)
  CHECK(clifford_product(unit_n_form(1), unit_n_form(1)) == Multivector(1, 0u, 1.0));
  CHECK(clifford_product(unit_n_form(2), unit_n_form(2)) == Multivector(2, 0u, -1.0));
  CHECK(clifford_product(unit_n_form(3), unit_n_form(3)) == Multivector(3, 0u, -1.0));
  CHECK(clifford_product(unit_n_form(4), unit_n_form(4)) == Multivector(4, 0u, 1.0));
}

TEST_CASE("signed complements in three dimensions", "[algebra]") {
  const Complement c1 = complement_of(mask_from_axes({1}, 3), 3);
  CHECK(c1.mask == mask_from_axes({2, 3}, 3));
  CHECK(c1.sign == 1);

  const Complement c2 = complement_of(mask_from_axes({2}, 3), 3);
  CHECK(c2.mask == mask_from_axes({1, 3}, 3));
  CHECK(c2.sign == -1);

  const Complement c0 = complement_of(0u, 3);
  CHECK(c0.mask == mask_from_axes({1, 2, 3}, 3));
  CHECK(c0.sign == 1);

  const Complement cz = complement_of(full_mask(3), 3);
  CHECK(cz.mask == 0u);
  CHECK(cz.sign == 1);
}

TEST_CASE("complement wedge reproduces z for every monomial, n<=6", "[algebra]") {
  for (int n = 1; n <= 6; ++n) {
    const Multivector z = unit_n_form(n);
    for (BasisMask a = 0; a <= full_mask(n); ++a) {
      const Complement c = complement_of(a, n);
      const Multivector w = exterior_product(
          Multivector(n, a, 1.0), Multivector(n, c.mask, double(c.sign)));
      REQUIRE(w == z);
    }
  }
}

TEST_CASE("exhaustive oracle equivalence, n <= 5", "[algebra]") {
  for (int n = 1; n <= 5; ++n) {
    const AlgebraCheckReport rep = check_algebra(n);
    INFO("dimension " << n);
    for (const auto& f : rep.failures) INFO(f);
    REQUIRE(rep.mismatches == 0);
    REQUIRE(rep.checks > 0);
  }
}

TEST_CASE("clifford associativity on random mixed elements", "[algebra]") {
  std::mt19937_64 rng(911);
  for (int rep = 0; rep < 100; ++rep) {
    const int n = 2 + int(rng() % 3);
    const Multivector u = random_multivector(n, rng);
    const Multivector v = random_multivector(n, rng);
    const Multivector w = random_multivector(n, rng);
    const Multivector lhs = clifford_product(clifford_product(u, v), w);
    const Multivector rhs = clifford_product(u, clifford_product(v, w));
    // coefficients combine in different orders; compare with a tolerance
    REQUIRE(max_abs_diff(lhs, rhs) < 1e-12);
  }
}

TEST_CASE("dimension caps and validation", "[algebra]") {
  CHECK_THROWS_AS(Multivector(0), std::invalid_argument);
  CHECK_THROWS_AS(Multivector(17), std::invalid_argument);
  CHECK_NOTHROW(Multivector(16));
  CHECK_THROWS_AS(mask_from_axes({1, 1}, 3), std::invalid_argument);
  CHECK_THROWS_AS(mask_from_axes({3, 1}, 3), std::invalid_argument);
  CHECK_THROWS_AS(mask_from_axes({4}, 3), std::invalid_argument);
  CHECK(basis_label(mask_from_axes({1, 3}, 3)) == "13");
  CHECK(basis_label(0u) == "0");
}
