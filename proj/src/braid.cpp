#include "stokeslab/braid.hpp"

#include "stokeslab/errors.hpp"
#include "stokeslab/ktheory.hpp"

#include <bit>
#include <cstdlib>
#include <sstream>

namespace stokeslab {

ModuleVector ModuleVector::zero(int n) { return ModuleVector{std::vector<LaurentPoly>(n, LaurentPoly(n))}; }

ModuleVector ModuleVector::unit(int n, int i) {
  if (i < 1 || i > n) throw UsageError("unit vector index out of range");
  ModuleVector v = zero(n);
  v.comps[i - 1] = LaurentPoly::constant(n, 1);
  return v;
}

bool ModuleVector::is_zero() const {
  for (const auto& c : comps)
    if (!c.is_zero()) return false;
  return true;
}

ModuleVector& ModuleVector::operator+=(const ModuleVector& o) {
  if (n() != o.n()) throw UsageError("module rank mismatch");
  for (int i = 0; i < n(); ++i) comps[i] += o.comps[i];
  return *this;
}

ModuleVector& ModuleVector::operator-=(const ModuleVector& o) {
  if (n() != o.n()) throw UsageError("module rank mismatch");
  for (int i = 0; i < n(); ++i) comps[i] -= o.comps[i];
  return *this;
}

ModuleVector operator*(const LaurentPoly& a, const ModuleVector& v) {
  ModuleVector out = v;
  for (auto& c : out.comps) c = a * c;
  return out;
}

std::string ModuleVector::to_string() const {
  const auto names = z_names(n());
  std::string out;
  for (int i = 0; i < n(); ++i) {
    if (i) out += " ; ";
    out += comps[i].to_string(names);
  }
  return out;
}

LaurentPoly form_A_module(const ModuleVector& x, const ModuleVector& y) {
  // Same Gram matrix as the K-theory form under e_i <-> X^{i-1}.
  if (x.n() != y.n()) throw UsageError("module rank mismatch");
  return form_A(KClass(x.n(), x.comps), KClass(y.n(), y.comps));
}

ExceptionalBasis::ExceptionalBasis(std::vector<ModuleVector> vectors) : vectors_(std::move(vectors)) {
  const int n = static_cast<int>(vectors_.size());
  if (n < 1) throw UsageError("empty basis");
  for (const auto& v : vectors_)
    if (v.n() != n) throw UsageError("basis vector has wrong rank");
}

std::string ExceptionalBasis::to_string() const {
  std::string out;
  for (const auto& v : vectors_) out += v.to_string() + "\n";
  return out;
}

ExceptionalBasis canonical_basis(int n) {
  if (n < 2) throw UsageError("rank must be at least 2");
  std::vector<ModuleVector> vs;
  for (int i = 1; i <= n; ++i) vs.push_back(ModuleVector::unit(n, i));
  return ExceptionalBasis(std::move(vs));
}

PolyMatrix gram(const ExceptionalBasis& q) {
  const int n = q.n();
  PolyMatrix g(n, std::vector<LaurentPoly>(n, LaurentPoly(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g[i][j] = form_A_module(q[i], q[j]);
  return g;
}

bool is_exceptional(const ExceptionalBasis& q) {
  const int n = q.n();
  const LaurentPoly one = LaurentPoly::constant(n, 1);
  for (int i = 0; i < n; ++i) {
    if (!(form_A_module(q[i], q[i]) == one)) return false;
    for (int j = 0; j < i; ++j)
      if (!form_A_module(q[i], q[j]).is_zero()) return false;
  }
  return true;
}

bool has_canonical_gram(const ExceptionalBasis& q) { return gram(q) == canonical_gram(q.n()); }

LaurentPoly coordinate_determinant(const ExceptionalBasis& q) {
  const int n = q.n();
  if (n > 20) throw UsageError("determinant: rank too large");
  // f[mask] = det of rows 0..|mask|-1 restricted to the columns in mask.
  std::vector<LaurentPoly> f(1u << n, LaurentPoly(n));
  f[0] = LaurentPoly::constant(n, 1);
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    const int r = std::popcount(mask) - 1;
    LaurentPoly acc(n);
    int above = 0;  // columns in mask greater than c
    for (int c = n - 1; c >= 0; --c) {
      if (!(mask & (1u << c))) continue;
      const LaurentPoly& entry = q[r].comps[c];
      if (!entry.is_zero() && !f[mask & ~(1u << c)].is_zero()) {
        LaurentPoly t = entry * f[mask & ~(1u << c)];
        if (above % 2 == 0) acc += t;
        else acc -= t;
      }
      ++above;
    }
    f[mask] = std::move(acc);
  }
  return f[(1u << n) - 1];
}

bool is_unimodular(const ExceptionalBasis& q) { return coordinate_determinant(q).is_monomial(); }

BraidWord BraidWord::parse(const std::string& text) {
  BraidWord w;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    auto b = tok.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    auto e = tok.find_last_not_of(" \t");
    tok = tok.substr(b, e - b + 1);
    if (tok.size() < 2 || (tok[0] != 't' && tok[0] != 'T')) throw UsageError("bad braid letter '" + tok + "'");
    int idx = 0;
    try {
      std::size_t used = 0;
      idx = std::stoi(tok.substr(1), &used);
      if (used != tok.size() - 1) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw UsageError("bad braid letter '" + tok + "'");
    }
    if (idx < 1) throw UsageError("braid generator index must be positive");
    w.letters.push_back(tok[0] == 't' ? idx : -idx);
  }
  return w;
}

std::string BraidWord::to_string() const {
  std::string out;
  for (std::size_t k = 0; k < letters.size(); ++k) {
    if (k) out += ',';
    out += (letters[k] > 0 ? 't' : 'T') + std::to_string(std::abs(letters[k]));
  }
  return out;
}

BraidWord BraidWord::inverse() const {
  BraidWord w;
  for (auto it = letters.rbegin(); it != letters.rend(); ++it) w.letters.push_back(-*it);
  return w;
}

BraidWord operator*(const BraidWord& a, const BraidWord& b) {
  BraidWord w = a;
  w.letters.insert(w.letters.end(), b.letters.begin(), b.letters.end());
  return w;
}

namespace {

void check_generator(int i, const ExceptionalBasis& q) {
  if (i < 1 || i > q.n() - 1) throw UsageError("braid generator index out of range");
}

}  // namespace

ExceptionalBasis apply_tau(int i, const ExceptionalBasis& q, bool checked) {
  check_generator(i, q);
  if (checked && !is_exceptional(q)) throw UsageError("braid action needs an exceptional basis");
  ExceptionalBasis out = q;
  const ModuleVector& vi = q[i - 1];
  const ModuleVector& vj = q[i];
  out[i - 1] = vj - form_A_module(vi, vj) * vi;
  out[i] = vi;
  return out;
}

ExceptionalBasis apply_tau_inverse(int i, const ExceptionalBasis& q, bool checked) {
  check_generator(i, q);
  if (checked && !is_exceptional(q)) throw UsageError("braid action needs an exceptional basis");
  ExceptionalBasis out = q;
  const ModuleVector& wi = q[i - 1];
  const ModuleVector& wj = q[i];
  out[i - 1] = wj;
  out[i] = wi - form_A_module(wi, wj).bar() * wj;
  return out;
}

ExceptionalBasis apply_word(const BraidWord& w, const ExceptionalBasis& q) {
  if (!is_exceptional(q)) throw UsageError("braid action needs an exceptional basis");
  // Exceptionality is preserved by every letter, so validate only once.
  ExceptionalBasis cur = q;
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
    cur = *it > 0 ? apply_tau(*it, cur, false) : apply_tau_inverse(-*it, cur, false);
  return cur;
}

namespace {

/// g' = bar(T) g T^t for the basis change v' = T v, where T differs from the
/// identity only in rows p, p+1.
PolyMatrix transform_gram(const PolyMatrix& g, int p, const std::vector<std::pair<int, LaurentPoly>>& row_p,
                          const std::vector<std::pair<int, LaurentPoly>>& row_q) {
  const int n = static_cast<int>(g.size());
  const int nv = g[0][0].nvars();
  auto row = [&](int r) {
    if (r == p) return row_p;
    if (r == p + 1) return row_q;
    return std::vector<std::pair<int, LaurentPoly>>{{r, LaurentPoly::constant(nv, 1)}};
  };
  PolyMatrix out(n, std::vector<LaurentPoly>(n, LaurentPoly(nv)));
  for (int r = 0; r < n; ++r) {
    const auto tr = row(r);
    for (int s = 0; s < n; ++s) {
      if (r != p && r != p + 1 && s != p && s != p + 1) {
        out[r][s] = g[r][s];
        continue;
      }
      const auto ts = row(s);
      LaurentPoly acc(nv);
      for (const auto& [k, a] : tr)
        for (const auto& [l, b] : ts)
          if (!g[k][l].is_zero()) acc += a.bar() * b * g[k][l];
      out[r][s] = std::move(acc);
    }
  }
  return out;
}

}  // namespace

PolyMatrix transport_gram(const BraidWord& w, const PolyMatrix& g) {
  const int n = static_cast<int>(g.size());
  if (n < 1) throw UsageError("empty Gram matrix");
  const int nv = g[0][0].nvars();
  const LaurentPoly one = LaurentPoly::constant(nv, 1);
  PolyMatrix cur = g;
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
    const int i = std::abs(*it);
    if (i < 1 || i >= n) throw UsageError("braid generator index out of range");
    const int p = i - 1;
    if (*it > 0) {
      // v'_p = v_{p+1} - a v_p, v'_{p+1} = v_p, a = A(v_p, v_{p+1}).
      cur = transform_gram(cur, p, {{p + 1, one}, {p, -cur[p][p + 1]}}, {{p, one}});
    } else {
      // w'_p = w_{p+1}, w'_{p+1} = w_p - bar(b) w_{p+1}, b = A(w_p, w_{p+1}).
      cur = transform_gram(cur, p, {{p + 1, one}}, {{p, one}, {p + 1, -cur[p][p + 1].bar()}});
    }
  }
  return cur;
}

bool is_exceptional_gram(const PolyMatrix& g) {
  const int n = static_cast<int>(g.size());
  const LaurentPoly one = LaurentPoly::constant(g[0][0].nvars(), 1);
  for (int i = 0; i < n; ++i) {
    if (!(g[i][i] == one)) return false;
    for (int j = 0; j < i; ++j)
      if (!g[i][j].is_zero()) return false;
  }
  return true;
}

BraidWord coxeter_word(int n) {
  BraidWord w;
  for (int i = 1; i < n; ++i) w.letters.push_back(i);
  return w;
}

ExceptionalBasis coxeter(const ExceptionalBasis& q) {
  if (!has_canonical_gram(q)) throw UsageError("Coxeter map needs a basis with canonical Gram matrix");
  return apply_word(coxeter_word(q.n()), q);
}

ExceptionalBasis rescale_first(const ExceptionalBasis& q) {
  const int n = q.n();
  LaurentPoly c = elem_sym(n, n).bar();
  if (n % 2 == 0) c = -c;  // (-1)^{n+1}
  ExceptionalBasis out = q;
  out[0] = c * out[0];
  return out;
}

ExceptionalBasis modified_coxeter(const ExceptionalBasis& q) { return rescale_first(coxeter(q)); }

BraidWord gamma_word(int n) {
  if (n < 2) throw UsageError("rank must be at least 2");
  BraidWord w;
  const int ell = (n % 2 == 1) ? n - 1 : n - 2;
  for (int k = ell; k >= 2; k -= 2)
    for (int i = k; i <= n - 1; ++i) w.letters.push_back(i);
  return w;
}

BraidWord delta_odd_word(int n) {
  if (n < 2) throw UsageError("rank must be at least 2");
  BraidWord w;
  for (int i = 1; i <= n - 1; i += 2) w.letters.push_back(i);
  return w;
}

BraidWord delta_even_word(int n) {
  if (n < 2) throw UsageError("rank must be at least 2");
  BraidWord w;
  for (int i = 2; i <= n - 1; i += 2) w.letters.push_back(i);
  return w;
}

std::vector<PartialSum> q_prime_layout(int n) {
  if (n < 2) throw UsageError("rank must be at least 2");
  std::vector<PartialSum> out(n);
  const int k = n / 2;
  if (n % 2 == 1) {
    for (int j = 1; j <= k + 1; ++j) out[2 * j - 2] = {j, j};
    for (int j = 1; j <= k; ++j) out[2 * j - 1] = {2 * k + 2 - j, j + 1};
  } else {
    for (int j = 1; j <= k; ++j) out[2 * j - 2] = {j, j};
    out[2 * k - 1] = {k + 1, k + 1};
    for (int j = 1; j <= k - 1; ++j) out[2 * j - 1] = {2 * k + 1 - j, j + 1};
  }
  return out;
}

std::vector<PartialSum> q_double_prime_layout(int n) {
  if (n < 2) throw UsageError("rank must be at least 2");
  std::vector<PartialSum> out(n);
  const int k = n / 2;
  if (n % 2 == 1) {
    for (int j = 1; j <= k; ++j) out[2 * j - 1] = {j, j};
    out[2 * k] = {k + 1, k + 1};
    for (int j = 1; j <= k; ++j) out[2 * j - 2] = {2 * k + 2 - j, j};
  } else {
    for (int j = 1; j <= k; ++j) out[2 * j - 1] = {j, j};
    for (int j = 1; j <= k; ++j) out[2 * j - 2] = {2 * k + 1 - j, j};
  }
  return out;
}

ModuleVector partial_sum(const ExceptionalBasis& q, const PartialSum& ps) {
  const int n = q.n();
  if (ps.l < 1 || ps.m > n || ps.l > ps.m) throw UsageError("partial sum labels out of range");
  ModuleVector out = ModuleVector::zero(n);
  for (int j = 0; j <= ps.m - ps.l; ++j) {
    ModuleVector t = elem_sym(j, n) * q[ps.m - j - 1];
    if (j % 2 == 0) out += t;
    else out -= t;
  }
  return out;
}

namespace {

ExceptionalBasis build_from_layout(const ExceptionalBasis& q, const std::vector<PartialSum>& layout) {
  std::vector<ModuleVector> vs;
  for (const auto& ps : layout) vs.push_back(partial_sum(q, ps));
  return ExceptionalBasis(std::move(vs));
}

}  // namespace

ExceptionalBasis build_Q_prime(const ExceptionalBasis& q) { return build_from_layout(q, q_prime_layout(q.n())); }

ExceptionalBasis build_Q_double_prime(const ExceptionalBasis& q) {
  return build_from_layout(q, q_double_prime_layout(q.n()));
}

ExceptionalBasis solution_labeled_basis(int n, int k) {
  if (n < 2) throw UsageError("rank must be at least 2");
  std::vector<ModuleVector> vs;
  for (int i = 1; i <= n; ++i) vs.push_back(ModuleVector{KClass::x_power(n, k + i - 1).coeffs()});
  return ExceptionalBasis(std::move(vs));
}

}  // namespace stokeslab
