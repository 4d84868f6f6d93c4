#include "stokeslab/symfun.hpp"

#include "stokeslab/errors.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <climits>
#include <cmath>
#include <cstdint>
#include <unordered_map>
#include <sstream>

namespace stokeslab {

LaurentPoly::LaurentPoly(int nvars) : nvars_(nvars) {
  if (nvars < 0) throw UsageError("negative number of variables");
}

LaurentPoly LaurentPoly::constant(int nvars, const Rational& c) {
  LaurentPoly p(nvars);
  p.add_term(Exponents(nvars, 0), c);
  return p;
}

LaurentPoly LaurentPoly::monomial(int nvars, Exponents exps, const Rational& c) {
  if (static_cast<int>(exps.size()) != nvars) throw UsageError("exponent vector has wrong length");
  LaurentPoly p(nvars);
  p.add_term(exps, c);
  return p;
}

LaurentPoly LaurentPoly::variable(int nvars, int index, int power) {
  if (index < 0 || index >= nvars) throw UsageError("variable index out of range");
  Exponents e(nvars, 0);
  e[index] = power;
  return monomial(nvars, std::move(e));
}

Rational LaurentPoly::coefficient(const Exponents& exps) const {
  auto it = terms_.find(exps);
  return it == terms_.end() ? Rational(0) : it->second;
}

void LaurentPoly::add_term(const Exponents& exps, const Rational& c) {
  if (static_cast<int>(exps.size()) != nvars_) throw UsageError("exponent vector has wrong length");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(exps, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void LaurentPoly::check_same(const LaurentPoly& o) const {
  if (nvars_ != o.nvars_) throw UsageError("Laurent polynomials live in rings with different numbers of variables");
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  check_same(o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  check_same(o);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

namespace {

constexpr int kPackedMaxVars = 8;
constexpr int kPackedMaxExp = 63;  // |e| <= 63 per factor keeps each byte of a sum in [2, 254]

bool packable(const LaurentPoly::TermMap& t, int nvars) {
  if (nvars > kPackedMaxVars) return false;
  for (const auto& [e, c] : t) {
    for (int x : e)
      if (x > kPackedMaxExp || x < -kPackedMaxExp) return false;
    if (boost::multiprecision::denominator(c) != 1) return false;
    const auto& num = boost::multiprecision::numerator(c);
    if (num > INT32_MAX || num < -INT32_MAX) return false;
  }
  return true;
}

/// Biased exponents, variable 0 in the top byte, so key order is lexicographic.
std::uint64_t pack(const Exponents& e) {
  std::uint64_t k = 0;
  for (std::size_t v = 0; v < e.size(); ++v) k |= static_cast<std::uint64_t>(e[v] + 64) << (8 * (kPackedMaxVars - 1 - v));
  return k;
}

Exponents unpack_sum(std::uint64_t k, int nvars) {
  Exponents e(nvars);
  for (int v = 0; v < nvars; ++v) e[v] = static_cast<int>((k >> (8 * (kPackedMaxVars - 1 - v))) & 0xff) - 128;
  return e;
}

/// Dense accumulation over the exponent box of the product, used when the
/// box is small relative to the number of term pairs. Requires that no
/// partial sum can overflow (checked by the caller through a bound).
void multiply_dense(const LaurentPoly::TermMap& a, const LaurentPoly::TermMap& b, int nvars,
                    const std::vector<int>& lo_a, const std::vector<int>& lo_b, const std::vector<int>& range,
                    std::size_t box, LaurentPoly::TermMap& out) {
  std::vector<std::size_t> stride(nvars);
  std::size_t st = 1;
  for (int v = nvars - 1; v >= 0; --v) {
    stride[v] = st;
    st *= range[v];
  }
  auto index = [&](const Exponents& e, const std::vector<int>& lo) {
    std::size_t k = 0;
    for (int v = 0; v < nvars; ++v) k += static_cast<std::size_t>(e[v] - lo[v]) * stride[v];
    return k;
  };
  std::vector<std::pair<std::size_t, std::int64_t>> pa, pb;
  pa.reserve(a.size());
  pb.reserve(b.size());
  for (const auto& [e, c] : a) pa.emplace_back(index(e, lo_a), boost::multiprecision::numerator(c).convert_to<std::int64_t>());
  for (const auto& [e, c] : b) pb.emplace_back(index(e, lo_b), boost::multiprecision::numerator(c).convert_to<std::int64_t>());
  std::vector<std::int64_t> acc(box, 0);
  for (const auto& [ia, ca] : pa)
    for (const auto& [ib, cb] : pb) acc[ia + ib] += ca * cb;
  // Row-major order over the box is lexicographic order on exponents.
  Exponents e(nvars);
  for (std::size_t k = 0; k < box; ++k) {
    if (acc[k] == 0) continue;
    std::size_t rem = k;
    for (int v = 0; v < nvars; ++v) {
      e[v] = static_cast<int>(rem / stride[v]) + lo_a[v] + lo_b[v];
      rem %= stride[v];
    }
    out.emplace_hint(out.end(), e, Rational(acc[k]));
  }
}

/// Integer coefficients and small exponents: accumulate in machine words.
/// Returns false on int64 overflow, leaving `out` untouched.
bool multiply_packed(const LaurentPoly::TermMap& a, const LaurentPoly::TermMap& b, int nvars,
                     LaurentPoly::TermMap& out) {
  std::vector<int> lo_a(nvars, INT32_MAX), hi_a(nvars, INT32_MIN), lo_b(nvars, INT32_MAX), hi_b(nvars, INT32_MIN);
  double max_a = 0, max_b = 0;
  for (const auto& [e, c] : a) {
    for (int v = 0; v < nvars; ++v) lo_a[v] = std::min(lo_a[v], e[v]), hi_a[v] = std::max(hi_a[v], e[v]);
    max_a = std::max(max_a, std::abs(boost::multiprecision::numerator(c).convert_to<double>()));
  }
  for (const auto& [e, c] : b) {
    for (int v = 0; v < nvars; ++v) lo_b[v] = std::min(lo_b[v], e[v]), hi_b[v] = std::max(hi_b[v], e[v]);
    max_b = std::max(max_b, std::abs(boost::multiprecision::numerator(c).convert_to<double>()));
  }
  std::vector<int> range(nvars);
  double box = 1;
  for (int v = 0; v < nvars; ++v) {
    range[v] = hi_a[v] + hi_b[v] - lo_a[v] - lo_b[v] + 1;
    box *= range[v];
  }
  const double pairs = static_cast<double>(a.size()) * static_cast<double>(b.size());
  const bool no_overflow = max_a * max_b * static_cast<double>(std::min(a.size(), b.size())) < 0x1p62;
  if (no_overflow && box <= static_cast<double>(1 << 24) && pairs >= box / 4) {
    multiply_dense(a, b, nvars, lo_a, lo_b, range, static_cast<std::size_t>(box), out);
    return true;
  }
  std::vector<std::pair<std::uint64_t, std::int64_t>> pa, pb;
  for (const auto& [e, c] : a) pa.emplace_back(pack(e), boost::multiprecision::numerator(c).convert_to<std::int64_t>());
  for (const auto& [e, c] : b) pb.emplace_back(pack(e), boost::multiprecision::numerator(c).convert_to<std::int64_t>());
  std::unordered_map<std::uint64_t, std::int64_t> acc;
  acc.reserve(std::min<std::size_t>(pa.size() * pb.size(), 1u << 22));
  for (const auto& [ka, ca] : pa)
    for (const auto& [kb, cb] : pb) {
      std::int64_t prod;
      if (__builtin_mul_overflow(ca, cb, &prod)) return false;
      auto& slot = acc[ka + kb];
      if (__builtin_add_overflow(slot, prod, &slot)) return false;
    }
  std::vector<std::pair<std::uint64_t, std::int64_t>> sorted;
  sorted.reserve(acc.size());
  for (const auto& kv : acc)
    if (kv.second != 0) sorted.push_back(kv);
  std::sort(sorted.begin(), sorted.end());
  for (const auto& [k, c] : sorted) out.emplace_hint(out.end(), unpack_sum(k, nvars), Rational(c));
  return true;
}

}  // namespace

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  a.check_same(b);
  LaurentPoly out(a.nvars_);
  if (a.is_zero() || b.is_zero()) return out;
  if (packable(a.terms_, a.nvars_) && packable(b.terms_, b.nvars_) &&
      multiply_packed(a.terms_, b.terms_, a.nvars_, out.terms_))
    return out;
  // General coefficients: accumulate into the ordered map directly, so memory
  // stays proportional to the result.
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      Exponents e(a.nvars_);
      for (int i = 0; i < a.nvars_; ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) {
  *this = *this * o;
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly out = *this;
  for (auto& [e, v] : out.terms_) v = -v;
  return out;
}

LaurentPoly LaurentPoly::bar() const {
  LaurentPoly out(nvars_);
  for (const auto& [e, c] : terms_) {
    Exponents neg(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) neg[i] = -e[i];
    out.terms_.emplace(std::move(neg), c);
  }
  return out;
}

LaurentPoly LaurentPoly::monomial_inverse() const {
  if (!is_monomial()) throw UsageError("only monomials are invertible in the Laurent ring");
  const auto& [e, c] = *terms_.begin();
  Exponents neg(e.size());
  for (std::size_t i = 0; i < e.size(); ++i) neg[i] = -e[i];
  return monomial(nvars_, std::move(neg), Rational(1) / c);
}

LaurentPoly LaurentPoly::pow(int e) const {
  if (e < 0) return monomial_inverse().pow(-e);
  LaurentPoly result = constant(nvars_, 1);
  LaurentPoly base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e > 0) base *= base;
  }
  return result;
}

LaurentPoly LaurentPoly::embed(int new_nvars, int offset) const {
  if (offset < 0 || offset + nvars_ > new_nvars) throw UsageError("embedding does not fit");
  LaurentPoly out(new_nvars);
  for (const auto& [e, c] : terms_) {
    Exponents big(new_nvars, 0);
    for (int i = 0; i < nvars_; ++i) big[offset + i] = e[i];
    out.terms_.emplace(std::move(big), c);
  }
  return out;
}

Real to_real(const Rational& q) {
  Real r;
  mpfr_set_q(r.backend().data(), q.backend().data(), MPFR_RNDN);
  return r;
}

Complex LaurentPoly::evaluate(std::span<const Complex> point) const {
  if (static_cast<int>(point.size()) != nvars_) throw UsageError("evaluation point has wrong length");
  // Power tables per variable, covering the exponent range that occurs.
  std::vector<int> lo(nvars_, 0), hi(nvars_, 0);
  for (const auto& [e, c] : terms_) {
    for (int i = 0; i < nvars_; ++i) {
      lo[i] = std::min(lo[i], e[i]);
      hi[i] = std::max(hi[i], e[i]);
    }
  }
  std::vector<std::vector<Complex>> pos(nvars_), neg(nvars_);
  for (int i = 0; i < nvars_; ++i) {
    pos[i].push_back(Complex(1));
    for (int k = 1; k <= hi[i]; ++k) pos[i].push_back(pos[i].back() * point[i]);
    if (lo[i] < 0) {
      if (point[i].is_zero()) throw DomainError("negative power of a zero coordinate");
      Complex inv = Complex(1) / point[i];
      neg[i].push_back(Complex(1));
      for (int k = 1; k <= -lo[i]; ++k) neg[i].push_back(neg[i].back() * inv);
    }
  }
  Complex sum;
  for (const auto& [e, c] : terms_) {
    Complex term(to_real(c), Real(0));
    for (int i = 0; i < nvars_; ++i) {
      if (e[i] > 0) term *= pos[i][e[i]];
      else if (e[i] < 0) term *= neg[i][-e[i]];
    }
    sum += term;
  }
  return sum;
}

std::vector<std::string> z_names(int n) {
  std::vector<std::string> names;
  for (int i = 1; i <= n; ++i) names.push_back("Z" + std::to_string(i));
  return names;
}

std::vector<std::string> xz_names(int n) {
  std::vector<std::string> names{"X"};
  for (int i = 1; i <= n; ++i) names.push_back("Z" + std::to_string(i));
  return names;
}

std::string LaurentPoly::to_string(const std::vector<std::string>& names_in) const {
  const auto names = names_in.empty() ? z_names(nvars_) : names_in;
  if (static_cast<int>(names.size()) != nvars_) throw UsageError("wrong number of variable names");
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << c.str();
    if (nvars_ > 0) {
      os << " * ";
      for (int i = 0; i < nvars_; ++i) {
        if (i) os << '*';
        os << names[i] << '^' << e[i];
      }
    }
  }
  return os.str();
}

namespace {

// Drops leading zeros of each digit run; GMP would read "07" as octal.
std::string strip_leading_zeros(const std::string& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const bool run_start = std::isdigit(static_cast<unsigned char>(s[i])) &&
                           (i == 0 || !std::isdigit(static_cast<unsigned char>(s[i - 1])));
    if (run_start)
      while (s[i] == '0' && i + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[i + 1]))) ++i;
    out += s[i];
  }
  return out;
}

class Parser {
 public:
  Parser(const std::string& text, const std::vector<std::string>& names) : s_(text), names_(names) {}

  LaurentPoly parse() {
    skip();
    if (pos_ == s_.size()) throw UsageError("empty polynomial text");
    LaurentPoly out = expr();
    if (pos_ != s_.size()) fail("unbalanced ')'");
    return out;
  }

 private:
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw UsageError("polynomial parse error at offset " + std::to_string(pos_) + ": " + msg + " in '" + s_ + "'");
  }

  // Sum of terms; stops at the end of input or before ')'.
  LaurentPoly expr() {
    LaurentPoly out(static_cast<int>(names_.size()));
    skip();
    bool negative = false;
    if (peek() == '+' || peek() == '-') {
      negative = (peek() == '-');
      ++pos_;
    }
    while (true) {
      LaurentPoly t = term();
      out += negative ? -t : t;
      skip();
      if (pos_ == s_.size() || peek() == ')') break;
      char c = peek();
      if (c != '+' && c != '-') fail("expected '+' or '-'");
      ++pos_;
      negative = (c == '-');
      skip();
      // Allow "+ -3 * ..." as produced by to_string.
      if (peek() == '-') {
        negative = !negative;
        ++pos_;
      }
    }
    return out;
  }

  long long integer() {
    skip();
    std::size_t start = pos_;
    if (peek() == '-' || peek() == '+') ++pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (pos_ == start || (pos_ == start + 1 && !std::isdigit(static_cast<unsigned char>(s_[start]))))
      fail("expected integer");
    return std::stoll(s_.substr(start, pos_ - start));
  }

  LaurentPoly term() {
    const int nv = static_cast<int>(names_.size());
    LaurentPoly t = LaurentPoly::constant(nv, 1);
    while (true) {
      skip();
      char c = peek();
      if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t start = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '/') ++pos_;
        Rational q;
        try {
          q = Rational(strip_leading_zeros(s_.substr(start, pos_ - start)));
        } catch (const std::exception&) {
          fail("bad rational");
        }
        t *= q;
      } else if (std::isalpha(static_cast<unsigned char>(c))) {
        std::size_t start = pos_;
        while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') ++pos_;
        std::string name = s_.substr(start, pos_ - start);
        int idx = -1;
        for (int i = 0; i < nv; ++i)
          if (names_[i] == name) idx = i;
        if (idx < 0) fail("unknown variable '" + name + "'");
        int power = 1;
        skip();
        if (peek() == '^') {
          ++pos_;
          skip();
          bool paren = peek() == '(';
          if (paren) ++pos_;
          power = static_cast<int>(integer());
          skip();
          if (paren) {
            if (peek() != ')') fail("expected ')'");
            ++pos_;
          }
        }
        t *= LaurentPoly::variable(nv, idx, power);
      } else if (c == '(') {
        ++pos_;
        LaurentPoly inner = expr();
        if (peek() != ')') fail("expected ')'");
        ++pos_;
        skip();
        int power = 1;
        if (peek() == '^') {
          ++pos_;
          power = static_cast<int>(integer());
          if (power < 0) fail("negative power of a parenthesized sum");
        }
        for (int i = 0; i < power; ++i) t *= inner;
      } else {
        fail("expected number or variable");
      }
      skip();
      if (peek() != '*') break;
      ++pos_;
    }
    return t;
  }

  const std::string& s_;
  const std::vector<std::string>& names_;
  std::size_t pos_ = 0;
};

}  // namespace

LaurentPoly parse_laurent(const std::string& text, const std::vector<std::string>& names) {
  return Parser(text, names).parse();
}

LaurentPoly elem_sym(int k, int n) {
  if (n < 1) throw UsageError("elem_sym needs at least one variable");
  if (k < 0 || k > n) throw UsageError("elem_sym degree out of range [0, n]");
  LaurentPoly out(n);
  // Enumerate k-subsets by bitmask; n stays small (<= 9) everywhere in this library.
  if (n > 24) throw UsageError("elem_sym: too many variables");
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (std::popcount(mask) != k) continue;
    Exponents e(n, 0);
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) e[i] = 1;
    out.add_term(e, 1);
  }
  return out;
}

std::vector<LaurentPoly> complete_hom_table(int kmax, int n) {
  if (kmax < 0) throw UsageError("complete_hom degree must be nonnegative");
  std::vector<LaurentPoly> s;
  for (int i = 0; i <= n; ++i) s.push_back(elem_sym(i, n));
  std::vector<LaurentPoly> m{LaurentPoly::constant(n, 1)};
  for (int k = 1; k <= kmax; ++k) {
    LaurentPoly mk(n);
    for (int i = 1; i <= std::min(k, n); ++i) {
      LaurentPoly t = s[i] * m[k - i];
      if (i % 2 == 1) mk += t;
      else mk -= t;
    }
    m.push_back(std::move(mk));
  }
  return m;
}

LaurentPoly complete_hom(int k, int n) {
  if (k < 0) throw UsageError("complete_hom degree must be nonnegative");
  return complete_hom_table(k, n).back();
}

}  // namespace stokeslab
