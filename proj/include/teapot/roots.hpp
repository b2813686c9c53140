#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "teapot/errors.hpp"
#include "teapot/polynomial.hpp"
#include "teapot/symbolic.hpp"

namespace teapot {

/// Root solver gave up; carries the best iterate it had.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, std::vector<std::complex<double>> best, double residual)
      : std::runtime_error(what), best_iterate(std::move(best)), residual(residual) {}
  std::vector<std::complex<double>> best_iterate;
  double residual;
};

namespace roots {

struct Root {
  std::complex<double> value;
  int multiplicity = 1;
};

struct RootSet {
  std::vector<Root> roots;  // sorted by modulus descending, then argument ascending
  double residual = 0;      // max |P(z)| / Σ|c_k||z|^k over the roots

  std::size_t count_with_multiplicity() const {
    std::size_t n = 0;
    for (auto& r : roots) n += static_cast<std::size_t>(r.multiplicity);
    return n;
  }
};

struct SolverOptions {
  int max_iterations = 1000;
  double cluster_tol = 1e-6;
  double residual_tol = 1e-10;
};

namespace detail {

using cld = std::complex<long double>;

inline long double scaled_residual(const IntPolynomial& p, cld z) {
  long double az = std::abs(z), scale = 0, pw = 1;
  for (auto c : p.coeffs()) {
    scale += std::fabs(static_cast<long double>(c)) * pw;
    pw *= az;
  }
  return scale > 0 ? std::abs(p.eval(z)) / scale : 0;
}

inline void eval_with_derivative(const IntPolynomial& p, cld z, cld& v, cld& d) {
  v = 0;
  d = 0;
  const auto& c = p.coeffs();
  for (std::size_t i = c.size(); i-- > 0;) {
    d = d * z + v;
    v = v * z + static_cast<long double>(c[i]);
  }
}

inline bool sort_key_less(std::complex<double> a, std::complex<double> b) {
  double ma = std::abs(a), mb = std::abs(b);
  if (ma != mb) return ma > mb;
  return std::arg(a) < std::arg(b);
}

}  // namespace detail

/// All complex roots by Aberth-Ehrlich iteration in extended precision,
/// followed by Newton polishing and multiplicity clustering.
inline RootSet all_roots(const IntPolynomial& p, const SolverOptions& opt = {}) {
  using detail::cld;
  if (p.degree() < 1) throw PreconditionError("all_roots needs degree >= 1");

  // roots at the origin are exact
  std::size_t zeros = 0;
  while (p.coeffs()[zeros] == 0) ++zeros;
  IntPolynomial q(std::vector<std::int64_t>(p.coeffs().begin() + static_cast<std::ptrdiff_t>(zeros), p.coeffs().end()));
  const int n = q.degree();

  std::vector<cld> z(static_cast<std::size_t>(n));
  long double lead = std::fabs(static_cast<long double>(q.leading())), cmax = 0;
  for (int i = 0; i < n; ++i) cmax = std::max(cmax, std::fabs(static_cast<long double>(q[static_cast<std::size_t>(i)])));
  const long double radius = 1 + cmax / lead;
  const long double golden = 2 * std::numbers::pi_v<long double> * (1 - 1 / std::numbers::phi_v<long double>);
  for (int k = 0; k < n; ++k) z[static_cast<std::size_t>(k)] = std::polar(radius, 0.4L + golden * k);

  std::vector<char> done(static_cast<std::size_t>(n), 0);
  const long double eps = 4 * std::numeric_limits<long double>::epsilon() * (n + 1);
  int it = 0;
  for (; it < opt.max_iterations && n > 0; ++it) {
    bool all_done = true;
    for (int i = 0; i < n; ++i) {
      auto ui = static_cast<std::size_t>(i);
      if (done[ui]) continue;
      cld v, d;
      detail::eval_with_derivative(q, z[ui], v, d);
      if (detail::scaled_residual(q, z[ui]) <= eps) {
        done[ui] = 1;
        continue;
      }
      all_done = false;
      cld ratio = v / d;
      cld sum = 0;
      for (int j = 0; j < n; ++j)
        if (j != i) sum += 1.0L / (z[ui] - z[static_cast<std::size_t>(j)]);
      cld step = ratio / (1.0L - ratio * sum);
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) step = ratio;
      z[ui] -= step;
      if (std::abs(step) <= eps * (1 + std::abs(z[ui]))) done[ui] = 1;
    }
    if (all_done) break;
  }

  // Newton polish, kept only when it improves the residual
  for (auto& zi : z) {
    for (int k = 0; k < 3; ++k) {
      cld v, d;
      detail::eval_with_derivative(q, zi, v, d);
      if (std::abs(d) == 0) break;
      cld cand = zi - v / d;
      if (detail::scaled_residual(q, cand) < detail::scaled_residual(q, zi)) zi = cand;
      else break;
    }
  }

  long double worst = 0;
  for (auto& zi : z) worst = std::max(worst, detail::scaled_residual(q, zi));

  // multiple roots converge only to about eps^(1/m); accept them when they
  // form a tight cluster
  std::vector<std::vector<std::size_t>> clusters;
  std::vector<int> owner(z.size(), -1);
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (owner[i] >= 0) continue;
    owner[i] = static_cast<int>(clusters.size());
    clusters.push_back({i});
    for (std::size_t k = 0; k < clusters.back().size(); ++k) {
      std::size_t a = clusters.back()[k];
      for (std::size_t j = 0; j < z.size(); ++j)
        if (owner[j] < 0 && std::abs(z[a] - z[j]) < opt.cluster_tol) {
          owner[j] = owner[i];
          clusters.back().push_back(j);
        }
    }
  }

  RootSet out;
  long double residual = 0;
  for (auto& cl : clusters) {
    cld c = 0;
    for (auto i : cl) c += z[i];
    c /= static_cast<long double>(cl.size());
    if (std::fabs(c.imag()) <= 1e-14L * std::max(1.0L, std::abs(c))) c.imag(0);
    long double r = detail::scaled_residual(q, c);
    residual = std::max(residual, r);
    out.roots.push_back({std::complex<double>(static_cast<double>(c.real()), static_cast<double>(c.imag())),
                         static_cast<int>(cl.size())});
  }
  if (zeros) out.roots.push_back({0.0, static_cast<int>(zeros)});
  out.residual = static_cast<double>(residual);
  std::sort(out.roots.begin(), out.roots.end(),
            [](const Root& a, const Root& b) { return detail::sort_key_less(a.value, b.value); });

  if (!(residual < opt.residual_tol)) {
    std::vector<std::complex<double>> best;
    for (auto& zi : z) best.emplace_back(static_cast<double>(zi.real()), static_cast<double>(zi.imag()));
    throw ConvergenceError("root iteration did not converge (residual " + std::to_string(static_cast<double>(worst)) + ")",
                           std::move(best), static_cast<double>(residual));
  }
  return out;
}

/// Largest real root in [1, 2], located by bracketing on a grid after
/// dividing out (z-1), then bisection and Newton polish.
inline double leading_root(const IntPolynomial& p) {
  if (p.degree() < 1) throw DomainError("leading_root needs a nonconstant polynomial");
  auto fr = poly::remove_trivial_factors_detailed(p, false);
  const IntPolynomial& q = fr.quotient;
  if (q.degree() < 1) {
    if (fr.mult_minus_one > 0) return 1.0;
    throw DomainError("no real root in [1, 2]");
  }
  if (q.degree() <= 100) {
    if (auto v = q.eval_exact(2); v && *v == 0) return 2.0;
  }
  using ld = long double;
  auto f = [&](ld x) { return q.eval(x); };
  auto scale = [&](ld x) {
    ld s = 0, pw = 1;
    for (auto c : q.coeffs()) {
      s += std::fabs(static_cast<ld>(c)) * pw;
      pw *= x;
    }
    return s;
  };
  auto refine = [&](ld lo, ld hi) {
    ld flo = f(lo);
    for (int k = 0; k < 200 && hi - lo > 1e-18L; ++k) {
      ld mid = (lo + hi) / 2, fm = f(mid);
      if (fm == 0) return mid;
      if ((fm < 0) == (flo < 0)) {
        lo = mid;
        flo = fm;
      } else {
        hi = mid;
      }
    }
    return (lo + hi) / 2;
  };

  const ld top = 2 + 1e-9L, bottom = 1 - 1e-9L;
  const int steps = 4096;
  const ld h = (top - bottom) / steps;
  ld x_prev = top, f_prev = f(top);
  ld f_prevprev = f_prev;
  for (int k = 1; k <= steps; ++k) {
    ld x = top - h * k, fx = f(x);
    if (fx == 0) return static_cast<double>(x);
    if ((fx < 0) != (f_prev < 0)) return static_cast<double>(refine(x, x_prev));
    // tangential contact: |f| has a local minimum near zero
    if (k >= 2 && std::fabs(f_prev) < std::fabs(fx) && std::fabs(f_prev) < std::fabs(f_prevprev)) {
      ld a = x, b = x_prev + h;
      for (int g = 0; g < 200; ++g) {
        ld m1 = a + (b - a) / 3, m2 = b - (b - a) / 3;
        if (std::fabs(f(m1)) < std::fabs(f(m2))) b = m2;
        else a = m1;
      }
      ld xm = (a + b) / 2;
      if (std::fabs(f(xm)) <= 1e-12L * scale(xm)) return static_cast<double>(xm);
    }
    f_prevprev = f_prev;
    f_prev = fx;
    x_prev = x;
  }
  if (fr.mult_minus_one > 0) return 1.0;
  throw DomainError("no real root in [1, 2]");
}

}  // namespace roots
}  // namespace teapot

namespace teapot::roots {

struct DriftRow {
  std::size_t n = 0;
  bool interior_admissible = false;  // w1·w2^n admissible
  double interior_distance = 0;      // min |root of P(w1·w2^n) - z0|
  bool leading_admissible = false;   // w1^n·w2 admissible
  double leading_distance = 0;       // |leading root of P(w1^n·w2) - leading root of P(w1)|
};

struct DriftReport {
  std::complex<double> z0;  // root of P(w2) inside the unit disk
  double leading_w1 = 0;
  std::vector<DriftRow> rows;
};

/// Root drift along w1·w2^n (towards an in-disk root z0 of P(w2)) and along
/// w1^n·w2 (towards the leading root of P(w1)) for n = 0..n_max. Rows whose
/// concatenation is not admissible are flagged and left unmeasured.
inline DriftReport root_drift_harness(const Word& w1, const Word& w2, std::size_t n_max) {
  DriftReport rep;
  auto q2 = poly::remove_trivial_factors(poly::parry_polynomial(w2), true);
  if (q2.degree() < 1) throw DomainError("Parry polynomial of w2 has only trivial roots");
  auto r2 = all_roots(q2);
  bool found = false;
  for (auto& r : r2.roots)
    if (std::abs(r.value) < 1 && (!found || std::abs(r.value) > std::abs(rep.z0))) {
      rep.z0 = r.value;
      found = true;
    }
  if (!found) throw DomainError("Parry polynomial of w2 has no root inside the unit disk");
  rep.leading_w1 = leading_root(poly::parry_polynomial(w1));

  for (std::size_t n = 0; n <= n_max; ++n) {
    DriftRow row;
    row.n = n;
    Word a = w1 + w2.repeat(n);
    if (symbolic::is_admissible(a)) {
      row.interior_admissible = true;
      row.interior_distance = std::numeric_limits<double>::infinity();
      for (auto& r : all_roots(poly::parry_polynomial(a)).roots)
        row.interior_distance = std::min(row.interior_distance, std::abs(r.value - rep.z0));
    }
    Word b = w1.repeat(n) + w2;
    if (symbolic::is_admissible(b)) {
      row.leading_admissible = true;
      row.leading_distance = std::abs(leading_root(poly::parry_polynomial(b)) - rep.leading_w1);
    }
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace teapot::roots
