#pragma once

// Pointwise elements of the 2^n-dimensional algebra of differentials, with the
// Clifford (v), exterior (^) and interior (.) products, grade involution eta,
// reversion zeta, the unit n-form z and signed complements.

#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>

#include "kcalc/basis.hpp"

namespace kcalc {

class Multivector {
 public:
  explicit Multivector(int n) : n_(n) { check_dimension(n); }

  Multivector(int n, BasisMask mask, double coeff) : Multivector(n) {
    add(mask, coeff);
  }

  int dimension() const { return n_; }
  const std::map<BasisMask, double>& terms() const { return coeffs_; }

  double coeff(BasisMask mask) const {
    auto it = coeffs_.find(mask);
    return it == coeffs_.end() ? 0.0 : it->second;
  }

  void add(BasisMask mask, double coeff) {
    if ((mask & ~full_mask(n_)) != 0u)
      throw std::invalid_argument("basis mask uses axes beyond the dimension");
    if (coeff == 0.0) return;
    auto [it, inserted] = coeffs_.try_emplace(mask, coeff);
    if (!inserted && (it->second += coeff) == 0.0) coeffs_.erase(it);
  }

  bool is_zero() const { return coeffs_.empty(); }

  // Grade of a homogeneous element; nullopt for 0 or mixed grades.
  std::optional<int> homogeneous_grade() const {
    std::optional<int> g;
    for (const auto& [mask, c] : coeffs_) {
      const int r = grade_of(mask);
      if (g && *g != r) return std::nullopt;
      g = r;
    }
    return g;
  }

  Multivector& operator+=(const Multivector& o) {
    require_same_dimension(o);
    for (const auto& [mask, c] : o.coeffs_) add(mask, c);
    return *this;
  }
  Multivector& operator-=(const Multivector& o) {
    require_same_dimension(o);
    for (const auto& [mask, c] : o.coeffs_) add(mask, -c);
    return *this;
  }
  Multivector& operator*=(double s) {
    if (s == 0.0) {
      coeffs_.clear();
      return *this;
    }
    for (auto& [mask, c] : coeffs_) c *= s;
    return *this;
  }

  friend Multivector operator+(Multivector a, const Multivector& b) { return a += b; }
  friend Multivector operator-(Multivector a, const Multivector& b) { return a -= b; }
  friend Multivector operator*(Multivector a, double s) { return a *= s; }
  friend Multivector operator*(double s, Multivector a) { return a *= s; }

  friend bool operator==(const Multivector& a, const Multivector& b) {
    return a.n_ == b.n_ && a.coeffs_ == b.coeffs_;
  }

  void require_same_dimension(const Multivector& o) const {
    if (n_ != o.n_)
      throw std::invalid_argument("multivectors live in different dimensions");
  }

 private:
  int n_;
  std::map<BasisMask, double> coeffs_;
};

inline Multivector clifford_product(const Multivector& u, const Multivector& v) {
  u.require_same_dimension(v);
  Multivector out(u.dimension());
  for (const auto& [a, ca] : u.terms())
    for (const auto& [b, cb] : v.terms())
      out.add(clifford_mask(a, b), clifford_sign(a, b) * ca * cb);
  return out;
}

inline Multivector exterior_product(const Multivector& u, const Multivector& v) {
  u.require_same_dimension(v);
  Multivector out(u.dimension());
  for (const auto& [a, ca] : u.terms())
    for (const auto& [b, cb] : v.terms())
      if (exterior_nonzero(a, b))
        out.add(clifford_mask(a, b), clifford_sign(a, b) * ca * cb);
  return out;
}

// Interior product w . u for grade-1 w: the grade-lowering half of w v u,
// i.e. w v u = w ^ u + w . u.
inline Multivector interior_product(const Multivector& w, const Multivector& u) {
  w.require_same_dimension(u);
  if (!w.is_zero() && w.homogeneous_grade() != 1)
    throw std::invalid_argument("interior product requires a grade-1 left factor");
  Multivector out(u.dimension());
  for (const auto& [a, ca] : w.terms())
    for (const auto& [b, cb] : u.terms())
      if (!exterior_nonzero(a, b))
        out.add(clifford_mask(a, b), clifford_sign(a, b) * ca * cb);
  return out;
}

// Interior product u . w for grade-1 w: the grade-lowering half of u v w.
inline Multivector interior_product_right(const Multivector& u, const Multivector& w) {
  u.require_same_dimension(w);
  if (!w.is_zero() && w.homogeneous_grade() != 1)
    throw std::invalid_argument("interior product requires a grade-1 right factor");
  Multivector out(u.dimension());
  for (const auto& [a, ca] : u.terms())
    for (const auto& [b, cb] : w.terms())
      if (!exterior_nonzero(a, b))
        out.add(clifford_mask(a, b), clifford_sign(a, b) * ca * cb);
  return out;
}

inline Multivector eta(const Multivector& u) {
  Multivector out(u.dimension());
  for (const auto& [mask, c] : u.terms()) out.add(mask, eta_sign(mask) * c);
  return out;
}

inline Multivector reversion(const Multivector& u) {
  Multivector out(u.dimension());
  for (const auto& [mask, c] : u.terms()) out.add(mask, reversion_sign(mask) * c);
  return out;
}

inline Multivector grade_project(const Multivector& u, int r) {
  Multivector out(u.dimension());
  for (const auto& [mask, c] : u.terms())
    if (grade_of(mask) == r) out.add(mask, c);
  return out;
}

inline double scalar_part(const Multivector& u) { return u.coeff(0u); }

inline Multivector unit_n_form(int n) { return Multivector(n, full_mask(n), 1.0); }

}  // namespace kcalc
