#pragma once

// Basis bookkeeping for the Clifford algebra of differentials on E_n with the
// identity metric: generators dx^1..dx^n obey dx^i v dx^j + dx^j v dx^i = 2 delta^ij.
// A basis monomial dx^A (A a strictly increasing set of axes) is stored as a bitmask
// with bit (i-1) set for axis i; the empty mask is the scalar unit.

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace kcalc {

using BasisMask = std::uint32_t;

inline constexpr int max_dimension = 16;

inline void check_dimension(int n) {
  if (n < 1 || n > max_dimension)
    throw std::invalid_argument("dimension must be in [1, " +
                                std::to_string(max_dimension) + "], got " +
                                std::to_string(n));
}

inline int grade_of(BasisMask a) { return std::popcount(a); }

inline BasisMask full_mask(int n) {
  check_dimension(n);
  return (BasisMask{1} << n) - 1u;
}

// Parity of the permutation that sorts the concatenation (A, B) into canonical
// order: counts pairs i in A, j in B with j < i (each costs one transposition).
// Coinciding axes end up adjacent and annihilate with factor +1 (identity metric),
// so this sign is the full Clifford product sign.
inline int reorder_sign(BasisMask a, BasisMask b) {
  int swaps = 0;
  for (BasisMask t = a >> 1; t != 0u; t >>= 1) swaps += std::popcount(t & b);
  return (swaps & 1) ? -1 : +1;
}

// dx^A v dx^B = clifford_sign(A,B) * dx^(A xor B).
inline int clifford_sign(BasisMask a, BasisMask b) { return reorder_sign(a, b); }
inline BasisMask clifford_mask(BasisMask a, BasisMask b) { return a ^ b; }

// dx^A ^ dx^B: zero when A and B share an axis, otherwise the Clifford term.
inline bool exterior_nonzero(BasisMask a, BasisMask b) { return (a & b) == 0u; }

// Grade involution: eta(u_r) = (-1)^r u_r.
inline int eta_sign(BasisMask a) { return (grade_of(a) & 1) ? -1 : +1; }

// Reversion: zeta(u_r) = (-1)^(r(r-1)/2) u_r.
inline int reversion_sign(BasisMask a) {
  const int r = grade_of(a);
  return ((r * (r - 1) / 2) & 1) ? -1 : +1;
}

struct Complement {
  BasisMask mask = 0;  // axes not in A, in increasing order
  int sign = 0;        // dx^A ^ (sign * dx^complement) = z
};

// Complement with the merge-parity sign s so that dx^A ^ (s * dx^Abar) equals
// the unit n-form z = dx^1 ^ ... ^ dx^n.
inline Complement complement_of(BasisMask a, int n) {
  check_dimension(n);
  const BasisMask full = full_mask(n);
  if ((a & ~full) != 0u)
    throw std::invalid_argument("basis mask uses axes beyond the dimension");
  Complement c;
  c.mask = full & ~a;
  c.sign = reorder_sign(a, c.mask);  // dx^A ^ dx^Abar = sign * z, and sign^2 = 1
  return c;
}

inline BasisMask mask_from_axes(const std::vector<int>& axes, int n) {
  check_dimension(n);
  BasisMask m = 0;
  int prev = 0;
  for (int axis : axes) {
    if (axis < 1 || axis > n)
      throw std::invalid_argument("axis " + std::to_string(axis) +
                                  " outside dimension " + std::to_string(n));
    if (axis <= prev)
      throw std::invalid_argument("axes must be strictly increasing");
    m |= BasisMask{1} << (axis - 1);
    prev = axis;
  }
  return m;
}

inline std::vector<int> axes_of(BasisMask a) {
  std::vector<int> axes;
  for (int i = 0; a != 0u; ++i, a >>= 1)
    if (a & 1u) axes.push_back(i + 1);
  return axes;
}

// Digit-string form used by field files and CSV headers: "0" is the scalar,
// "13" is dx^1 ^ dx^3. Only meaningful for n <= 9.
inline std::string basis_label(BasisMask a) {
  if (a == 0u) return "0";
  std::string s;
  for (int axis : axes_of(a)) s += static_cast<char>('0' + axis);
  return s;
}

}  // namespace kcalc
