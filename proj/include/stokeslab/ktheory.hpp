#pragma once

// The equivariant K-theory ring of projective space, presented as
// Q[X^{±1}, Z^{±1}] modulo prod_a (X - Z_a), with its push-forward and the
// sesquilinear form A.

#include "stokeslab/symfun.hpp"

#include <span>
#include <string>
#include <vector>

namespace stokeslab {

/// A reduced class: coeffs[k] is the Laurent coefficient (in Z_1..Z_n) of X^k,
/// k = 0..n-1. Reduction is canonical, so equality is coefficientwise.
class KClass {
 public:
  explicit KClass(int n);
  KClass(int n, std::vector<LaurentPoly> coeffs);

  static KClass one(int n);
  /// Reduced form of X^k for any integer k.
  static KClass x_power(int n, int k);
  /// A scalar a(Z) times the unit class.
  static KClass scalar(const LaurentPoly& a);

  int n() const noexcept { return n_; }
  const std::vector<LaurentPoly>& coeffs() const noexcept { return coeffs_; }
  const LaurentPoly& coeff(int k) const { return coeffs_.at(k); }
  bool is_zero() const;

  KClass& operator+=(const KClass& o);
  KClass& operator-=(const KClass& o);
  friend KClass operator+(KClass a, const KClass& b) { return a += b; }
  friend KClass operator-(KClass a, const KClass& b) { return a -= b; }
  /// Multiplication by a scalar a(Z).
  friend KClass operator*(const LaurentPoly& a, const KClass& f);
  friend bool operator==(const KClass& a, const KClass& b) { return a.n_ == b.n_ && a.coeffs_ == b.coeffs_; }

  /// Representative polynomial in the ring with X in slot 0 and Z_1..Z_n after it.
  LaurentPoly to_xz() const;

  /// f(X = x, Z = point) numerically.
  Complex evaluate(const Complex& x, std::span<const Complex> point) const;

  /// The n coefficients in symfun text form, X-power ascending, joined by " ; ".
  std::string to_string() const;

 private:
  int n_;
  std::vector<LaurentPoly> coeffs_;
};

/// Reduce a polynomial in X, Z_1..Z_n (X in slot 0, so nvars = n + 1).
KClass reduce(const LaurentPoly& f_xz);

/// Parse text such as "X^2 - Z1*X" in the variables X, Z1..Zn and reduce it.
KClass parse_kclass(const std::string& text, int n);
/// Inverse of KClass::to_string.
KClass parse_kclass_coeffs(const std::string& text, int n);

KClass kmul(const KClass& f, const KClass& g);

/// The push-forward to a point, sum_a f(Z_a, Z) / prod_{j != a} (1 - Z_a / Z_j).
/// On reduced classes the localization sum sends X^k to delta_{k,0} for
/// 0 <= k <= n-1, so the result is the constant coefficient.
LaurentPoly pushforward(const KClass& f);

/// The localization sum itself, evaluated numerically (oracle for pushforward).
Complex pushforward_localization(const KClass& f, std::span<const Complex> point);

/// Gram matrix A(X^i, X^j) = m_{j-i} for i <= j and 0 otherwise, 0 <= i,j < n.
const std::vector<std::vector<LaurentPoly>>& canonical_gram(int n);

/// A(f, g), sesquilinear: A(a f, b g) = bar(a) b A(f, g).
LaurentPoly form_A(const KClass& f, const KClass& g);

/// Numeric residue formula
/// sum_a f(Z_a^{-1}, Z^{-1}) g(Z_a, Z) / prod_{j != a} (1 - Z_j / Z_a).
/// Throws DomainError on coincident or zero coordinates.
Complex form_A_residue_oracle(const KClass& f, const KClass& g, std::span<const Complex> point);

}  // namespace stokeslab
