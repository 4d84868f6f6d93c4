#pragma once

// The free module M_n over the Laurent ring with the form A, exceptional
// bases, and the braid-group action on them.

#include "stokeslab/symfun.hpp"

#include <string>
#include <vector>

namespace stokeslab {

/// Coordinates over e_1..e_n; every component lives in the ring of Z_1..Z_n.
struct ModuleVector {
  std::vector<LaurentPoly> comps;

  static ModuleVector zero(int n);
  static ModuleVector unit(int n, int i);  // e_i, 1-based

  int n() const { return static_cast<int>(comps.size()); }
  bool is_zero() const;

  ModuleVector& operator+=(const ModuleVector& o);
  ModuleVector& operator-=(const ModuleVector& o);
  friend ModuleVector operator+(ModuleVector a, const ModuleVector& b) { return a += b; }
  friend ModuleVector operator-(ModuleVector a, const ModuleVector& b) { return a -= b; }
  friend ModuleVector operator*(const LaurentPoly& a, const ModuleVector& v);
  friend bool operator==(const ModuleVector& a, const ModuleVector& b) { return a.comps == b.comps; }

  std::string to_string() const;  // components joined by " ; "
};

LaurentPoly form_A_module(const ModuleVector& x, const ModuleVector& y);

using PolyMatrix = std::vector<std::vector<LaurentPoly>>;

class ExceptionalBasis {
 public:
  explicit ExceptionalBasis(std::vector<ModuleVector> vectors);

  int n() const noexcept { return static_cast<int>(vectors_.size()); }
  const std::vector<ModuleVector>& vectors() const noexcept { return vectors_; }
  const ModuleVector& operator[](int i) const { return vectors_.at(i); }  // 0-based
  ModuleVector& operator[](int i) { return vectors_.at(i); }

  friend bool operator==(const ExceptionalBasis& a, const ExceptionalBasis& b) { return a.vectors_ == b.vectors_; }

  std::string to_string() const;  // one vector per line

 private:
  std::vector<ModuleVector> vectors_;
};

ExceptionalBasis canonical_basis(int n);
PolyMatrix gram(const ExceptionalBasis& q);
/// A(v_i, v_i) = 1 and A(v_i, v_j) = 0 for i > j.
bool is_exceptional(const ExceptionalBasis& q);
/// Gram matrix equals canonical_gram(n).
bool has_canonical_gram(const ExceptionalBasis& q);
/// Determinant of the coordinate matrix by expansion over column subsets.
LaurentPoly coordinate_determinant(const ExceptionalBasis& q);
/// Linear independence over the Laurent ring: the determinant is a unit.
bool is_unimodular(const ExceptionalBasis& q);

/// Letters are signed generator indices: +i is tau_i, -i is tau_i^{-1}.
/// A word is read as a product, so the rightmost letter acts first.
struct BraidWord {
  std::vector<int> letters;

  static BraidWord parse(const std::string& text);  // "t2,t3,T1"; empty text is the empty word
  std::string to_string() const;
  BraidWord inverse() const;
  friend BraidWord operator*(const BraidWord& a, const BraidWord& b);  // concatenation
  friend bool operator==(const BraidWord& a, const BraidWord& b) = default;
};

/// Positions (i, i+1) become (v_{i+1} - A(v_i, v_{i+1}) v_i, v_i).
/// Validates exceptionality of q unless `checked` is false.
ExceptionalBasis apply_tau(int i, const ExceptionalBasis& q, bool checked = true);
/// Positions (i, i+1) = (w_i, w_{i+1}) become (w_{i+1}, w_i - bar(A(w_i, w_{i+1})) w_{i+1}).
ExceptionalBasis apply_tau_inverse(int i, const ExceptionalBasis& q, bool checked = true);
ExceptionalBasis apply_word(const BraidWord& w, const ExceptionalBasis& q);

/// The Gram matrix of apply_word(w, q) computed from g = gram(q) alone by
/// sesquilinearity, without touching module vectors. Cheap where the vectors
/// themselves grow large.
PolyMatrix transport_gram(const BraidWord& w, const PolyMatrix& g);
/// Unit diagonal and zeros below it.
bool is_exceptional_gram(const PolyMatrix& g);

BraidWord coxeter_word(int n);  // tau_1 tau_2 ... tau_{n-1}
ExceptionalBasis coxeter(const ExceptionalBasis& q);
/// coxeter(q) with its first vector multiplied by (-1)^{n+1} s_n(Z^{-1}).
ExceptionalBasis modified_coxeter(const ExceptionalBasis& q);

BraidWord gamma_word(int n);
BraidWord delta_odd_word(int n);
BraidWord delta_even_word(int n);

/// The combination v_m(l) = sum_{j=0}^{m-l} (-1)^j s_j(Z) v_{m-j}, labels l..m.
struct PartialSum {
  int m;
  int l;
  friend bool operator==(const PartialSum&, const PartialSum&) = default;
};

/// Layouts of Q' and Q'' as ordered partial sums over labels 1..n.
std::vector<PartialSum> q_prime_layout(int n);
std::vector<PartialSum> q_double_prime_layout(int n);

ModuleVector partial_sum(const ExceptionalBasis& q, const PartialSum& ps);
ExceptionalBasis build_Q_prime(const ExceptionalBasis& q);
ExceptionalBasis build_Q_double_prime(const ExceptionalBasis& q);

/// Q_k realized inside M_n: the i-th vector holds the reduced coordinates of
/// X^{k+i-1} over e_j = X^{j-1}, so Q_0 is the canonical basis.
ExceptionalBasis solution_labeled_basis(int n, int k);

/// Multiply the first vector by (-1)^{n+1} s_n(Z^{-1}).
ExceptionalBasis rescale_first(const ExceptionalBasis& q);

}  // namespace stokeslab
