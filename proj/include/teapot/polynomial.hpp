#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "teapot/errors.hpp"
#include "teapot/symbolic.hpp"
#include "teapot/word.hpp"

namespace teapot {

namespace detail {
inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw InternalError("integer overflow in polynomial arithmetic");
  return r;
}
inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw InternalError("integer overflow in polynomial arithmetic");
  return r;
}
}  // namespace detail

/// Dense integer polynomial, coefficients in ascending degree. The zero
/// polynomial has no coefficients.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<std::int64_t> coeffs) : c_(std::move(coeffs)) { trim(); }

  /// Coefficients listed from the leading one down, as polynomials are written.
  static IntPolynomial from_descending(std::vector<std::int64_t> desc) {
    return IntPolynomial(std::vector<std::int64_t>(desc.rbegin(), desc.rend()));
  }

  const std::vector<std::int64_t>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  std::int64_t operator[](std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
  std::int64_t leading() const { return c_.empty() ? 0 : c_.back(); }

  IntPolynomial operator-() const {
    auto c = c_;
    for (auto& x : c) x = -x;
    return IntPolynomial(std::move(c));
  }

  friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<std::int64_t> c(std::max(a.c_.size(), b.c_.size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = detail::checked_add(a[i], b[i]);
    return IntPolynomial(std::move(c));
  }
  friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) { return a + (-b); }

  friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<std::int64_t> c(a.c_.size() + b.c_.size() - 1, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j)
        c[i + j] = detail::checked_add(c[i + j], detail::checked_mul(a.c_[i], b.c_[j]));
    return IntPolynomial(std::move(c));
  }

  friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;

  /// t^deg · p(1/t).
  IntPolynomial reversed() const { return IntPolynomial(std::vector<std::int64_t>(c_.rbegin(), c_.rend())); }

  /// q(x^k) for q = *this.
  IntPolynomial compose_power(std::size_t k) const {
    if (is_zero()) return {};
    std::vector<std::int64_t> c((c_.size() - 1) * k + 1, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) c[i * k] = c_[i];
    return IntPolynomial(std::move(c));
  }

  std::int64_t coefficient_sum() const {
    std::int64_t s = 0;
    for (auto x : c_) s = detail::checked_add(s, x);
    return s;
  }

  long double abs_coefficient_sum() const {
    long double s = 0;
    for (auto x : c_) s += static_cast<long double>(x < 0 ? -x : x);
    return s;
  }

  /// Exact value at an integer point, or nothing on 128-bit overflow.
  std::optional<__int128> eval_exact(std::int64_t x) const {
    __int128 acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
      if (__builtin_mul_overflow(acc, static_cast<__int128>(x), &acc)) return std::nullopt;
      if (__builtin_add_overflow(acc, static_cast<__int128>(*it), &acc)) return std::nullopt;
    }
    return acc;
  }

  template <class T>
  std::complex<T> eval(std::complex<T> z) const {
    std::complex<T> acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + static_cast<T>(*it);
    return acc;
  }

  template <class T>
  T eval(T x) const {
    T acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + static_cast<T>(*it);
    return acc;
  }

  /// Exact division by (z - r); the remainder must vanish.
  IntPolynomial divide_linear(std::int64_t r) const {
    if (c_.size() < 2) throw InternalError("cannot divide a constant by a linear factor");
    std::vector<std::int64_t> q(c_.size() - 1);
    std::int64_t carry = 0;
    for (std::size_t i = c_.size(); i-- > 1;) {
      carry = detail::checked_add(c_[i], detail::checked_mul(carry, r));
      q[i - 1] = carry;
    }
    std::int64_t rem = detail::checked_add(c_[0], detail::checked_mul(carry, r));
    if (rem != 0) throw InternalError("nonzero remainder dividing by (z - " + std::to_string(r) + ")");
    return IntPolynomial(std::move(q));
  }

  std::string to_string(char var = 'z') const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
      std::int64_t a = c_[i];
      if (a == 0) continue;
      std::int64_t m = a < 0 ? -a : a;
      if (first)
        os << (a < 0 ? "-" : "");
      else
        os << (a < 0 ? " - " : " + ");
      if (m != 1 || i == 0) os << m;
      if (i > 0) os << var;
      if (i > 1) os << '^' << i;
      first = false;
    }
    return os.str();
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<std::int64_t> c_;
};

namespace poly {

/// z^p - Σ s_j d_j z^{p-j} - σ, where σ is the sign of the whole period.
inline IntPolynomial parry_polynomial(const Word& w) {
  if (!w.is_periodic() || !symbolic::is_admissible(w)) throw DomainError("parry_polynomial needs an admissible periodic word: " + w.to_string());
  std::size_t p = w.size();
  auto s = symbolic::cumulative_signs(w);
  std::vector<std::int64_t> c(p + 1, 0);
  c[p] = 1;
  for (std::size_t j = 1; j <= p; ++j) c[p - j] -= s[j - 1] * 2 * w[j - 1];
  c[0] -= s[p];
  return IntPolynomial(std::move(c));
}

/// Σ_{i<p} s_{i+1} t^i for a word with an even number of ones.
inline IntPolynomial kneading_polynomial(const Word& w) {
  if (!w.is_periodic() || !symbolic::is_admissible(w)) throw DomainError("kneading_polynomial needs an admissible periodic word");
  if (symbolic::word_sign(w) != 1)
    throw DomainError("kneading_polynomial needs positive cumulative sign; use parry_polynomial for " + w.to_string());
  auto s = symbolic::cumulative_signs(w);
  std::vector<std::int64_t> c(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) c[i] = s[i];
  return IntPolynomial(std::move(c));
}

/// Same polynomial assembled from block sums of the Tiozzo auxiliary string:
/// 1 + Σ_k (-1)^k Σ_{B_{k-1} < j ≤ B_k} t^j - t^p.
inline IntPolynomial kneading_polynomial_from_aux(const Word& w) {
  if (!w.is_periodic() || !symbolic::is_admissible(w)) throw DomainError("kneading_polynomial needs an admissible periodic word");
  if (symbolic::word_sign(w) != 1) throw DomainError("kneading_polynomial needs positive cumulative sign");
  auto b = symbolic::auxiliary_string(w, AuxFlavor::tiozzo).counts;
  std::size_t p = w.size();
  std::vector<std::int64_t> c(p + 1, 0);
  c[0] = 1;
  std::size_t B = 0;
  for (std::size_t k = 1; k <= b.size(); ++k) {
    std::int64_t sign = (k % 2 == 0) ? 1 : -1;
    for (std::size_t j = B + 1; j <= B + b[k - 1]; ++j) c[j] += sign;
    B += b[k - 1];
  }
  if (B != p) throw InternalError("auxiliary string does not cover the word");
  c[p] -= 1;
  return IntPolynomial(std::move(c));
}

/// Minimal preperiod and primitive period describing the same infinite string.
inline Word canonical_preperiodic(const Word& w) {
  std::string pre = w.preperiod().letters();
  std::string per = w.period().letters();
  for (std::size_t d = 1; d <= per.size(); ++d) {
    if (per.size() % d) continue;
    bool rep = true;
    for (std::size_t i = d; i < per.size() && rep; ++i) rep = per[i] == per[i - d];
    if (rep) {
      per.resize(d);
      break;
    }
  }
  while (!pre.empty() && pre.back() == per.back()) {
    per = per.back() + per.substr(0, per.size() - 1);
    pre.pop_back();
  }
  return pre.empty() ? Word::periodic(per) : Word::preperiodic(pre, per);
}

/// Clears denominators in 1 = Σ s_j d_j β^{-j} with a geometric tail:
/// β^k(β^q - σ) - (β^q - σ) Σ_{j≤k} s_j d_j β^{k-j} - Σ_{i≤q} s_{k+i} d_{k+i} β^{q-i},
/// computed on the canonical representation, with powers of β divided out.
inline IntPolynomial preperiodic_polynomial(const Word& input) {
  if (!symbolic::is_admissible(input)) throw DomainError("preperiodic_polynomial needs an admissible string: " + input.to_string());
  Word w = canonical_preperiodic(input);
  if (w.is_periodic()) throw DomainError("string is purely periodic: " + w.to_string());
  std::size_t k = w.preperiod_length(), q = w.period_length();
  auto s = symbolic::cumulative_signs(w);
  std::int64_t sigma = s[k + q] * s[k];  // sign of the period alone

  std::vector<std::int64_t> head(k + 1, 0);  // β^k - Σ_{j≤k} s_j d_j β^{k-j}
  head[k] = 1;
  for (std::size_t j = 1; j <= k; ++j) head[k - j] -= s[j - 1] * 2 * w[j - 1];
  std::vector<std::int64_t> geo(q + 1, 0);  // β^q - σ
  geo[q] = 1;
  geo[0] -= sigma;
  std::vector<std::int64_t> tail(q, 0);  // Σ_{i≤q} s_{k+i} d_{k+i} β^{q-i}
  for (std::size_t i = 1; i <= q; ++i) tail[q - i] += s[k + i - 1] * 2 * w[k + i - 1];

  IntPolynomial p = IntPolynomial(head) * IntPolynomial(geo) - IntPolynomial(tail);
  std::size_t shift = 0;
  while (shift < p.coeffs().size() && p.coeffs()[shift] == 0) ++shift;
  p = IntPolynomial(std::vector<std::int64_t>(p.coeffs().begin() + static_cast<std::ptrdiff_t>(shift), p.coeffs().end()));
  if (p.leading() < 0) p = -p;
  return p;
}

struct FactorRemoval {
  IntPolynomial quotient;
  int mult_minus_one = 0;  // multiplicity of (z - 1)
  int mult_plus_one = 0;   // multiplicity of (z + 1)
};

inline FactorRemoval remove_trivial_factors_detailed(const IntPolynomial& p, bool also_plus_one = true) {
  FactorRemoval r{p, 0, 0};
  while (r.quotient.degree() >= 1 && r.quotient.eval_exact(1) == __int128{0}) {
    r.quotient = r.quotient.divide_linear(1);
    ++r.mult_minus_one;
  }
  while (also_plus_one && r.quotient.degree() >= 1 && r.quotient.eval_exact(-1) == __int128{0}) {
    r.quotient = r.quotient.divide_linear(-1);
    ++r.mult_plus_one;
  }
  return r;
}

/// Divides out (z-1) to full multiplicity and, if requested, (z+1).
inline IntPolynomial remove_trivial_factors(const IntPolynomial& p, bool also_plus_one = false) {
  return remove_trivial_factors_detailed(p, also_plus_one).quotient;
}

enum class Certificate { certified, unknown };

namespace detail {
inline bool plus_minus_one_coeffs(const IntPolynomial& p) {
  for (auto x : p.coeffs())
    if (x != 1 && x != -1) return false;
  return !p.is_zero();
}
}  // namespace detail

/// Sufficient conditions for irreducibility: ±1 coefficients, 2^k of them,
/// summing to 2 mod 4; or p = f(x^{2^m}) with such an f normalized to
/// constant term 1 and having a negative coefficient. Never claims the
/// opposite.
inline Certificate irreducibility_certificate(const IntPolynomial& p) {
  if (p.degree() < 1) return Certificate::unknown;
  std::size_t n = p.coeffs().size();  // degree + 1
  if (detail::plus_minus_one_coeffs(p)) {
    if ((n & (n - 1)) != 0) return Certificate::unknown;
    std::int64_t s = p.coefficient_sum();
    return ((s % 4) + 4) % 4 == 2 ? Certificate::certified : Certificate::unknown;
  }
  // largest power of two dividing every exponent with a nonzero coefficient
  std::size_t step = std::size_t{1} << 62;
  for (std::size_t i = 1; i < n; ++i)
    if (p[i] != 0) step = std::min(step, i & (~i + 1));
  if (step < 2 || step >= n) return Certificate::unknown;
  std::vector<std::int64_t> q;
  for (std::size_t i = 0; i < n; i += step) q.push_back(p[i]);
  IntPolynomial f(q);
  if (f[0] == -1) f = -f;
  if (!detail::plus_minus_one_coeffs(f) || f[0] != 1) return Certificate::unknown;
  bool has_negative = false;
  for (auto x : f.coeffs()) has_negative |= x < 0;
  if (!has_negative) return Certificate::unknown;
  return irreducibility_certificate(f);
}

struct IrreducibleConcatenation {
  Word word;        // w1' · w2^m'
  Word extension;   // w1'
  std::size_t m_prime = 0;
  std::size_t kappa = 0;
  unsigned log2_length = 0;
  Certificate certificate = Certificate::unknown;
};

/// Extends a dominant w1 so that w1'·w2^m' is admissible, has length 2^n and
/// P(z)/(z-1) is certified irreducible.
inline IrreducibleConcatenation irreducible_concatenation(const Word& w1, const Word& w2, std::size_t m,
                                                          unsigned max_log2 = 12) {
  using symbolic::is_dominant_word;
  std::vector<std::string> failed;
  if (!is_dominant_word(w1)) failed.emplace_back("w1 is dominant");
  if (!w2.is_periodic() || !symbolic::is_admissible(w2)) failed.emplace_back("w2 is admissible");
  if (!symbolic::is_primitive(w2)) failed.emplace_back("w2 is irreducible");
  if (symbolic::twisted_lex_compare(w1, w2) != std::strong_ordering::greater) failed.emplace_back("w1^inf >E w2^inf");
  if (!(2 * m * w2.size() > w1.size() && w1.size() > m * w2.size())) failed.emplace_back("2m|w2| > |w1| > m|w2|");
  if (!failed.empty()) {
    std::string msg = "irreducible_concatenation hypotheses failed:";
    for (auto& f : failed) msg += " [" + f + "]";
    throw PreconditionError(msg);
  }
  const std::size_t a = w1.size(), b = w2.size();
  for (unsigned n = 1; n <= max_log2; ++n) {
    const std::size_t total = std::size_t{1} << n;
    for (std::size_t mp = m + (m % 2); mp * b < total; mp += 2) {
      std::size_t ext_len = total - mp * b;
      if (!(2 * mp * b > ext_len && ext_len > mp * b)) continue;
      // odd-kappa form has length 3a+kappa+6, even-kappa form 3a+kappa+4
      if (ext_len < 3 * a + 7) continue;
      std::size_t kappa = ((ext_len - 3 * a) % 2 == 1) ? ext_len - 3 * a - 6 : ext_len - 3 * a - 4;
      if (kappa <= a) continue;
      std::pair<Word, Word> ext_pair;
      try {
        ext_pair = symbolic::dominant_extensions(w1, kappa);
      } catch (const DomainError&) {
        continue;
      }
      auto& [e01, e10] = ext_pair;
      for (const Word* ext : {&e01, &e10}) {
        Word full = symbolic::concat_admissible(*ext, w2, mp);
        auto k = kneading_polynomial(full);
        std::int64_t s = k.coefficient_sum();
        if (((s % 4) + 4) % 4 != 2) continue;
        IrreducibleConcatenation r;
        r.word = full;
        r.extension = *ext;
        r.m_prime = mp;
        r.kappa = kappa;
        r.log2_length = n;
        r.certificate = irreducibility_certificate(parry_polynomial(full).divide_linear(1));
        return r;
      }
      throw InternalError("neither dominant extension has kneading sum 2 mod 4");
    }
  }
  throw DomainError("no admissible length 2^n found up to the search bound");
}

}  // namespace poly
}  // namespace teapot
