#pragma once

// Exact multivariate Laurent polynomials with rational coefficients.

#include "stokeslab/precise.hpp"

#include <boost/multiprecision/gmp.hpp>

#include <map>
#include <span>
#include <string>
#include <vector>

namespace stokeslab {

using Rational = boost::multiprecision::mpq_rational;
using Exponents = std::vector<int>;

/// Element of Q[V_1^{±1}, ..., V_k^{±1}]. Terms are kept in lexicographic order
/// of exponent vectors and zero coefficients are never stored, so equality of
/// values is equality of term maps.
class LaurentPoly {
 public:
  using TermMap = std::map<Exponents, Rational>;

  explicit LaurentPoly(int nvars = 0);

  static LaurentPoly constant(int nvars, const Rational& c);
  static LaurentPoly monomial(int nvars, Exponents exps, const Rational& c = 1);
  /// The variable with 0-based index `index`, raised to `power`.
  static LaurentPoly variable(int nvars, int index, int power = 1);

  int nvars() const noexcept { return nvars_; }
  const TermMap& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  /// A single term with nonzero coefficient (such elements are the units of the ring).
  bool is_monomial() const noexcept { return terms_.size() == 1; }

  Rational coefficient(const Exponents& exps) const;
  /// Add c * monomial(exps) in place.
  void add_term(const Exponents& exps, const Rational& c);

  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly& operator*=(const LaurentPoly& o);
  LaurentPoly& operator*=(const Rational& c);
  LaurentPoly operator-() const;

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator*(LaurentPoly a, const Rational& c) { return a *= c; }
  friend LaurentPoly operator*(const Rational& c, LaurentPoly a) { return a *= c; }
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  /// Every variable inverted: V -> V^{-1}.
  LaurentPoly bar() const;

  /// Inverse of a monomial; throws UsageError for anything else.
  LaurentPoly monomial_inverse() const;

  LaurentPoly pow(int e) const;  // e >= 0, or any e for a monomial

  /// Embed into a ring with more variables: variable i goes to slot offset + i.
  LaurentPoly embed(int new_nvars, int offset) const;

  /// Numeric value at `point` (nvars entries) in the current precision.
  /// Throws DomainError when a zero coordinate carries a negative exponent.
  Complex evaluate(std::span<const Complex> point) const;

  /// Deterministic textual form: terms "c * V1^a1*...*Vk^ak" joined by " + ".
  /// Default variable names are Z1..Zk.
  std::string to_string(const std::vector<std::string>& names = {}) const;

 private:
  void check_same(const LaurentPoly& o) const;

  int nvars_;
  TermMap terms_;
};

/// Default names Z1..Zn.
std::vector<std::string> z_names(int n);
/// Names X, Z1..Zn for the ring with the extra K-theory variable in slot 0.
std::vector<std::string> xz_names(int n);

/// Parse the textual form emitted by to_string; also accepts lenient input such
/// as "X^2 - 3/2*Z1*X + 1". Unknown names raise UsageError.
LaurentPoly parse_laurent(const std::string& text, const std::vector<std::string>& names);

/// Elementary symmetric function s_k(Z_1..Z_n); s_0 = 1.
LaurentPoly elem_sym(int k, int n);
/// Complete homogeneous symmetric function m_k(Z_1..Z_n); m_0 = 1.
/// Built with the recurrence m_k = sum_i (-1)^{i+1} s_i m_{k-i}.
LaurentPoly complete_hom(int k, int n);
/// m_0..m_kmax in one sweep of the recurrence.
std::vector<LaurentPoly> complete_hom_table(int kmax, int n);

/// Real value of an exact rational at the current default precision.
Real to_real(const Rational& q);

}  // namespace stokeslab
