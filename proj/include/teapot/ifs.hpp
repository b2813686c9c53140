#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "teapot/cloud.hpp"
#include "teapot/errors.hpp"
#include "teapot/parallel.hpp"

namespace teapot::ifs {

enum class Verdict { excluded, plausible, undetermined };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::excluded:
      return "excluded";
    case Verdict::plausible:
      return "plausible";
    default:
      return "undetermined";
  }
}

struct IfsQuery {
  std::complex<double> z;
  std::size_t depth = 0;
  Verdict verdict = Verdict::undetermined;
  double exclusion_min = 0;  // min |v(0)| over inverse words v of length depth
  double ball_radius = 0;    // 1 / (1 - |z|)
  std::uint64_t nodes = 0;   // search nodes expanded
};

struct ExclusionOptions {
  unsigned threads = 1;
  std::uint64_t node_budget = std::uint64_t{1} << 34;
  bool prune = true;
};

namespace detail {

struct Search {
  std::complex<double> z;
  double inv_abs_z;
  double radius;
  bool prune;
  std::uint64_t budget;
  std::uint64_t nodes = 0;
  bool exhausted = false;
  double best = std::numeric_limits<double>::infinity();

  /// Lower bound on |v(0)| over all completions of x by `left` more inverse
  /// maps: outside the ball each step gives |x±1|/|z| >= (|x|-1)/|z| > |x|.
  double bound(double ax, std::size_t left) const {
    if (ax <= radius) return 0;
    for (std::size_t k = 0; k < left; ++k) ax = (ax - 1) * inv_abs_z;
    return ax;
  }

  void run(std::complex<double> x, std::size_t left) {
    if (exhausted) return;
    if (++nodes > budget) {
      exhausted = true;
      return;
    }
    if (left == 0) {
      best = std::min(best, std::abs(x));
      return;
    }
    if (prune && bound(std::abs(x), left) >= best) return;
    std::complex<double> a = (x - 1.0) / z, b = (x + 1.0) / z;
    if (std::abs(b) < std::abs(a)) std::swap(a, b);
    run(a, left - 1);
    run(b, left - 1);
  }
};

}  // namespace detail

/// Inverse maps of x -> zx ± 1 applied `depth` times to 0; z is excluded from
/// the limit-set criterion once every such point leaves the ball of radius
/// 1/(1-|z|).
inline IfsQuery exclusion_test(std::complex<double> z, std::size_t depth, const ExclusionOptions& opt = {}) {
  double az = std::abs(z);
  if (!(az > 0 && az < 1)) throw DomainError("exclusion_test needs 0 < |z| < 1");
  IfsQuery q;
  q.z = z;
  q.depth = depth;
  q.ball_radius = 1 / (1 - az);

  // split into subtrees below a fixed prefix depth; the min reduction makes
  // the result independent of scheduling
  std::size_t split = std::min<std::size_t>(depth, 6);
  std::size_t tasks = std::size_t{1} << split;
  std::vector<detail::Search> searches(tasks, detail::Search{z, 1 / az, q.ball_radius, opt.prune,
                                                             opt.node_budget / tasks + 1});
  parallel_for(tasks, opt.threads, [&](std::size_t t) {
    std::complex<double> x = 0;
    for (std::size_t k = 0; k < split; ++k) x = (x + ((t >> (split - 1 - k)) & 1u ? 1.0 : -1.0)) / z;
    searches[t].run(x, depth - split);
  });

  q.exclusion_min = std::numeric_limits<double>::infinity();
  bool exhausted = false;
  for (auto& s : searches) {
    q.exclusion_min = std::min(q.exclusion_min, s.best);
    q.nodes += s.nodes;
    exhausted = exhausted || s.exhausted;
  }
  if (depth == 0 || exhausted)
    q.verdict = Verdict::undetermined;
  else
    q.verdict = q.exclusion_min > q.ball_radius ? Verdict::excluded : Verdict::plausible;
  return q;
}

// ---- gap radius -----------------------------------------------------------

enum class RingForm { sqrt, half };  // Z[√-D] or Z[(1+√-D)/2]

struct GapSpec {
  RingForm form = RingForm::sqrt;
  int D = 1;
  std::complex<double> x;
  std::size_t n = 1;
  double c = 0;
  double r = 0;
};

inline std::complex<double> ring_generator(RingForm form, int D) {
  double s = std::sqrt(static_cast<double>(D));
  return form == RingForm::sqrt ? std::complex<double>(0, s) : std::complex<double>(0.5, s / 2);
}

/// Integer coordinates (a, b) with x = a + b·alpha, if x lies in the ring.
inline bool ring_coordinates(RingForm form, int D, std::complex<double> x, long long& a, long long& b) {
  auto alpha = ring_generator(form, D);
  double bb = x.imag() / alpha.imag();
  double aa = x.real() - bb * alpha.real();
  a = std::llround(aa);
  b = std::llround(bb);
  return std::abs(aa - static_cast<double>(a)) < 1e-9 && std::abs(bb - static_cast<double>(b)) < 1e-9;
}

/// Minimum nonzero modulus in the ring, by search over small coordinates.
inline double ring_min_modulus(RingForm form, int D) {
  auto alpha = ring_generator(form, D);
  double best = std::numeric_limits<double>::infinity();
  for (int a = -3; a <= 3; ++a)
    for (int b = -3; b <= 3; ++b)
      if (a || b) best = std::min(best, std::abs(static_cast<double>(a) + static_cast<double>(b) * alpha));
  return best;
}

/// Radius around x free of conjugates of growth rates with postcritical length
/// at most n (other than x itself).
inline GapSpec gap_radius(RingForm form, int D, std::complex<double> x, std::size_t n) {
  if (D != 1 && D != 2 && D != 3 && D != 5) throw DomainError("D must be one of 1, 2, 3, 5");
  if (form == RingForm::half && D != 3)
    throw DomainError("Z[(1+sqrt(-D))/2] is a discrete ring only for D = 3");
  if (n < 1) throw DomainError("n must be at least 1");
  long long a, b;
  if (!ring_coordinates(form, D, x, a, b)) throw DomainError("x is not an element of the ring");
  GapSpec g;
  g.form = form;
  g.D = D;
  g.x = x;
  g.n = n;
  g.c = ring_min_modulus(form, D);
  double nn = static_cast<double>(n), ax = std::abs(x);
  double poly = 2 * nn * nn + 3 * nn + 1;
  double growth = ax >= 1 ? std::pow(ax, nn) : ax;
  double first = growth > 0 ? g.c / (poly * growth * std::numbers::e) : std::numeric_limits<double>::infinity();
  g.r = std::min(first, 1 / (nn + 1));
  return g;
}

struct GapOffender {
  dataset::TeapotPoint point;
  double distance;
};

struct GapVerdict {
  bool ok = true;
  std::vector<GapOffender> offenders;
  std::size_t considered = 0;
};

/// Checks that no cloud point from words of length <= n lies strictly inside
/// the gap disk, a point within 1e-9 of x counting as x itself.
inline GapVerdict verify_gap(const GapSpec& g, const std::vector<dataset::TeapotPoint>& cloud, std::size_t cloud_max_len,
                             double radius_override = 0) {
  if (cloud_max_len < g.n)
    throw PreconditionError("cloud was built with max_len " + std::to_string(cloud_max_len) + " < n = " + std::to_string(g.n));
  double r = radius_override > 0 ? radius_override : g.r;
  GapVerdict v;
  for (auto& p : cloud) {
    if (dataset::id_length(p.word_id) > g.n) continue;
    ++v.considered;
    double d = std::abs(p.z() - g.x);
    if (d > 1e-9 && d < r) v.offenders.push_back({p, d});
  }
  std::sort(v.offenders.begin(), v.offenders.end(), [](auto& a, auto& b) { return a.distance < b.distance; });
  v.ok = v.offenders.empty();
  return v;
}

}  // namespace teapot::ifs
