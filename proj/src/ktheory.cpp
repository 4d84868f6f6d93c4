#include "stokeslab/ktheory.hpp"

#include "stokeslab/errors.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace stokeslab {

namespace {

void check_rank(int n) {
  if (n < 1) throw UsageError("K-theory rank must be positive");
}

void check_point(std::span<const Complex> point, int n) {
  if (static_cast<int>(point.size()) != n) throw UsageError("Z point has wrong length");
  for (int a = 0; a < n; ++a) {
    if (point[a].is_zero()) throw DomainError("Z point has a zero coordinate");
    for (int b = 0; b < a; ++b)
      if ((point[a] - point[b]).is_zero()) throw DomainError("Z point has coincident coordinates");
  }
}

// s_k(Z) for k = 0..n, cached per rank.
const std::vector<LaurentPoly>& elem_table(int n) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<std::vector<LaurentPoly>>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[n];
  if (!slot) {
    slot = std::make_unique<std::vector<LaurentPoly>>();
    for (int k = 0; k <= n; ++k) slot->push_back(elem_sym(k, n));
  }
  return *slot;
}

}  // namespace

KClass::KClass(int n) : n_(n) {
  check_rank(n);
  coeffs_.assign(n, LaurentPoly(n));
}

KClass::KClass(int n, std::vector<LaurentPoly> coeffs) : n_(n), coeffs_(std::move(coeffs)) {
  check_rank(n);
  if (static_cast<int>(coeffs_.size()) != n) throw UsageError("KClass needs exactly n coefficients");
  for (const auto& c : coeffs_)
    if (c.nvars() != n) throw UsageError("KClass coefficient lives in the wrong ring");
}

KClass KClass::one(int n) {
  KClass f(n);
  f.coeffs_[0] = LaurentPoly::constant(n, 1);
  return f;
}

KClass KClass::x_power(int n, int k) { return reduce(LaurentPoly::variable(n + 1, 0, k)); }

KClass KClass::scalar(const LaurentPoly& a) {
  KClass f(a.nvars());
  f.coeffs_[0] = a;
  return f;
}

bool KClass::is_zero() const {
  for (const auto& c : coeffs_)
    if (!c.is_zero()) return false;
  return true;
}

KClass& KClass::operator+=(const KClass& o) {
  if (n_ != o.n_) throw UsageError("K-theory rank mismatch");
  for (int k = 0; k < n_; ++k) coeffs_[k] += o.coeffs_[k];
  return *this;
}

KClass& KClass::operator-=(const KClass& o) {
  if (n_ != o.n_) throw UsageError("K-theory rank mismatch");
  for (int k = 0; k < n_; ++k) coeffs_[k] -= o.coeffs_[k];
  return *this;
}

KClass operator*(const LaurentPoly& a, const KClass& f) {
  if (a.nvars() != f.n_) throw UsageError("scalar lives in the wrong ring");
  KClass out(f.n_);
  for (int k = 0; k < f.n_; ++k) out.coeffs_[k] = a * f.coeffs_[k];
  return out;
}

LaurentPoly KClass::to_xz() const {
  LaurentPoly out(n_ + 1);
  for (int k = 0; k < n_; ++k) out += coeffs_[k].embed(n_ + 1, 1) * LaurentPoly::variable(n_ + 1, 0, k);
  return out;
}

Complex KClass::evaluate(const Complex& x, std::span<const Complex> point) const {
  if (static_cast<int>(point.size()) != n_) throw UsageError("Z point has wrong length");
  Complex sum, xk(1);
  for (int k = 0; k < n_; ++k) {
    if (!coeffs_[k].is_zero()) sum += coeffs_[k].evaluate(point) * xk;
    xk *= x;
  }
  return sum;
}

std::string KClass::to_string() const {
  const auto names = z_names(n_);
  std::string out;
  for (int k = 0; k < n_; ++k) {
    if (k) out += " ; ";
    out += coeffs_[k].to_string(names);
  }
  return out;
}

KClass reduce(const LaurentPoly& f_xz) {
  const int n = f_xz.nvars() - 1;
  check_rank(n);
  const auto& s = elem_table(n);
  const LaurentPoly sn_inv = s[n].monomial_inverse();

  // Split by X-degree.
  std::map<int, LaurentPoly> by_degree;
  for (const auto& [e, c] : f_xz.terms()) {
    Exponents ez(e.begin() + 1, e.end());
    auto [it, _] = by_degree.try_emplace(e[0], LaurentPoly(n));
    it->second.add_term(ez, c);
  }

  // X^d with d >= n: X^d = sum_{k=1}^n (-1)^{k-1} s_k X^{d-k}. Highest degree first.
  while (!by_degree.empty() && by_degree.rbegin()->first >= n) {
    auto node = by_degree.extract(std::prev(by_degree.end()));
    const int d = node.key();
    const LaurentPoly& c = node.mapped();
    for (int k = 1; k <= n; ++k) {
      LaurentPoly t = c * s[k];
      auto [it, _] = by_degree.try_emplace(d - k, LaurentPoly(n));
      if (k % 2 == 1) it->second += t;
      else it->second -= t;
    }
  }
  // X^d with d < 0: X^d = (-1)^{n-1} s_n^{-1} sum_{k=0}^{n-1} (-1)^k s_k X^{d+n-k}. Lowest first.
  while (!by_degree.empty() && by_degree.begin()->first < 0) {
    auto node = by_degree.extract(by_degree.begin());
    const int d = node.key();
    LaurentPoly c = node.mapped() * sn_inv;
    if ((n - 1) % 2 == 1) c = -c;
    for (int k = 0; k < n; ++k) {
      LaurentPoly t = c * s[k];
      auto [it, _] = by_degree.try_emplace(d + n - k, LaurentPoly(n));
      if (k % 2 == 0) it->second += t;
      else it->second -= t;
    }
  }

  std::vector<LaurentPoly> coeffs(n, LaurentPoly(n));
  for (auto& [d, c] : by_degree) coeffs[d] = std::move(c);
  return KClass(n, std::move(coeffs));
}

KClass parse_kclass(const std::string& text, int n) {
  check_rank(n);
  return reduce(parse_laurent(text, xz_names(n)));
}

KClass parse_kclass_coeffs(const std::string& text, int n) {
  check_rank(n);
  std::vector<LaurentPoly> coeffs;
  std::size_t start = 0;
  const auto names = z_names(n);
  while (true) {
    auto pos = text.find(';', start);
    coeffs.push_back(parse_laurent(text.substr(start, pos == std::string::npos ? pos : pos - start), names));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return KClass(n, std::move(coeffs));
}

KClass kmul(const KClass& f, const KClass& g) {
  if (f.n() != g.n()) throw UsageError("K-theory rank mismatch");
  return reduce(f.to_xz() * g.to_xz());
}

LaurentPoly pushforward(const KClass& f) { return f.coeff(0); }

Complex pushforward_localization(const KClass& f, std::span<const Complex> point) {
  const int n = f.n();
  check_point(point, n);
  Complex sum;
  for (int a = 0; a < n; ++a) {
    Complex denom(1);
    for (int j = 0; j < n; ++j)
      if (j != a) denom *= Complex(1) - point[a] / point[j];
    sum += f.evaluate(point[a], point) / denom;
  }
  return sum;
}

const std::vector<std::vector<LaurentPoly>>& canonical_gram(int n) {
  check_rank(n);
  static std::mutex mu;
  static std::map<int, std::unique_ptr<std::vector<std::vector<LaurentPoly>>>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[n];
  if (!slot) {
    auto m = complete_hom_table(n - 1, n);
    slot = std::make_unique<std::vector<std::vector<LaurentPoly>>>(n, std::vector<LaurentPoly>(n, LaurentPoly(n)));
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) (*slot)[i][j] = m[j - i];
  }
  return *slot;
}

LaurentPoly form_A(const KClass& f, const KClass& g) {
  if (f.n() != g.n()) throw UsageError("K-theory rank mismatch");
  const int n = f.n();
  const auto& gram = canonical_gram(n);
  LaurentPoly out(n);
  for (int i = 0; i < n; ++i) {
    if (f.coeff(i).is_zero()) continue;
    LaurentPoly row(n);
    for (int j = i; j < n; ++j)
      if (!g.coeff(j).is_zero()) row += gram[i][j] * g.coeff(j);
    if (!row.is_zero()) out += f.coeff(i).bar() * row;
  }
  return out;
}

Complex form_A_residue_oracle(const KClass& f, const KClass& g, std::span<const Complex> point) {
  if (f.n() != g.n()) throw UsageError("K-theory rank mismatch");
  const int n = f.n();
  check_point(point, n);
  ComplexVector inv(n);
  for (int a = 0; a < n; ++a) inv[a] = Complex(1) / point[a];
  Complex sum;
  for (int a = 0; a < n; ++a) {
    Complex denom(1);
    for (int j = 0; j < n; ++j)
      if (j != a) denom *= Complex(1) - point[j] / point[a];
    sum += f.evaluate(inv[a], inv) * g.evaluate(point[a], point) / denom;
  }
  return sum;
}

}  // namespace stokeslab
