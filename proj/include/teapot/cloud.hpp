#pragma once

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "teapot/enumerate.hpp"
#include "teapot/errors.hpp"
#include "teapot/parallel.hpp"
#include "teapot/polynomial.hpp"
#include "teapot/roots.hpp"

namespace teapot::dataset {

enum class Flavor : std::uint8_t { periodic = 0, preperiodic = 1 };

struct TeapotPoint {
  double z_re = 0;
  double z_im = 0;
  double lambda = 0;
  std::uint64_t word_id = 0;
  Flavor flavor = Flavor::periodic;

  std::complex<double> z() const { return {z_re, z_im}; }
  friend bool operator==(const TeapotPoint&, const TeapotPoint&) = default;
};

inline constexpr std::uint16_t kFormatVersion = 1;
inline constexpr std::size_t kChunkPoints = std::size_t{1} << 20;

enum class SourceKind { periodic, preperiodic, teapot };

struct CloudSource {
  SourceKind kind = SourceKind::periodic;
  std::size_t bound = 0;  // max_len, or max_total for preperiodic
};

struct CloudFailure {
  std::uint64_t word_id;
  std::string message;
};

struct CloudStats {
  std::uint64_t words = 0;
  std::uint64_t degenerate = 0;  // leading root 1, skipped
  std::uint64_t polynomials = 0;
  std::uint64_t roots = 0;
  std::uint64_t points = 0;
  double wall_seconds = 0;
};

struct PointCloud {
  std::vector<TeapotPoint> points;
  std::vector<CloudFailure> failures;
  CloudStats stats;
  EnumStats enum_stats;
};

/// Word length recorded in a point's id (preperiod plus period).
inline std::size_t id_length(std::uint64_t id) {
  std::uint64_t body = id & ((std::uint64_t{1} << 56) - 1);
  return static_cast<std::size_t>(63 - __builtin_clzll(body));
}

/// Roots of one word's polynomial with (z-1) and (z+1) removed, each distinct
/// root once, tagged with the growth rate.
inline std::vector<TeapotPoint> word_points(const Word& w, Flavor flavor, std::uint64_t id, double* lambda_out = nullptr) {
  IntPolynomial p = w.is_periodic() ? poly::parry_polynomial(w) : poly::preperiodic_polynomial(w);
  double lambda = roots::leading_root(p);
  if (lambda_out) *lambda_out = lambda;
  std::vector<TeapotPoint> pts;
  if (lambda <= 1 + 1e-9) return pts;
  IntPolynomial q = poly::remove_trivial_factors(p, true);
  if (q.degree() < 1) return pts;
  auto rs = roots::all_roots(q);
  for (auto& r : rs.roots) pts.push_back({r.value.real(), r.value.imag(), lambda, id, flavor});
  return pts;
}

inline PointCloud build_point_cloud(const CloudSource& src, unsigned threads = 1) {
  auto t0 = std::chrono::steady_clock::now();
  PointCloud cloud;
  EnumOptions eo;
  eo.threads = threads;
  eo.count_dominant = false;
  EnumResult words = src.kind == SourceKind::preperiodic ? enumerate_preperiodic(src.bound, eo)
                                                         : enumerate_admissible(src.bound, eo);
  cloud.enum_stats = words.stats;
  Flavor flavor = src.kind == SourceKind::preperiodic ? Flavor::preperiodic : Flavor::periodic;

  struct Slot {
    std::vector<TeapotPoint> pts;
    std::string error;
    bool degenerate = false;
  };
  std::vector<Slot> slots(words.ids.size());
  parallel_for(words.ids.size(), threads, [&](std::size_t i) {
    std::uint64_t id = words.ids[i];
    try {
      double lambda = 0;
      slots[i].pts = word_points(Word::from_id(id), flavor, id, &lambda);
      slots[i].degenerate = lambda <= 1 + 1e-9;
    } catch (const ConvergenceError& e) {
      slots[i].error = e.what();
    } catch (const DomainError& e) {
      slots[i].error = e.what();
    }
  });

  cloud.stats.words = words.ids.size();
  for (std::size_t i = 0; i < slots.size(); ++i) {
    auto& s = slots[i];
    if (!s.error.empty()) {
      cloud.failures.push_back({words.ids[i], s.error});
      continue;
    }
    if (s.degenerate) {
      ++cloud.stats.degenerate;
      continue;
    }
    ++cloud.stats.polynomials;
    cloud.stats.roots += s.pts.size();
    cloud.points.insert(cloud.points.end(), s.pts.begin(), s.pts.end());
  }
  cloud.stats.points = cloud.points.size();
  cloud.enum_stats.total_polynomials = cloud.stats.polynomials;
  cloud.enum_stats.total_roots = cloud.stats.roots;
  cloud.stats.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return cloud;
}

// ---- file formats ---------------------------------------------------------

inline const char* flavor_name(Flavor f) { return f == Flavor::periodic ? "periodic" : "preperiodic"; }

inline void write_csv(std::ostream& os, const std::vector<TeapotPoint>& pts) {
  os << "z_re,z_im,lambda,word_id,flavor\n";
  char buf[160];
  for (auto& p : pts) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%llu,%s\n", p.z_re, p.z_im, p.lambda,
                  static_cast<unsigned long long>(p.word_id), flavor_name(p.flavor));
    os << buf;
  }
}

inline std::vector<TeapotPoint> read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != "z_re,z_im,lambda,word_id,flavor") throw DomainError("bad CSV header");
  std::vector<TeapotPoint> pts;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    TeapotPoint p;
    char flavor[32] = {0};
    unsigned long long id = 0;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%llu,%31s", &p.z_re, &p.z_im, &p.lambda, &id, flavor) != 5)
      throw DomainError("malformed CSV line " + std::to_string(lineno));
    p.word_id = id;
    if (std::strcmp(flavor, "periodic") == 0)
      p.flavor = Flavor::periodic;
    else if (std::strcmp(flavor, "preperiodic") == 0)
      p.flavor = Flavor::preperiodic;
    else
      throw DomainError("unknown flavor on CSV line " + std::to_string(lineno));
    pts.push_back(p);
  }
  return pts;
}

namespace detail {
template <class T>
void put_le(std::string& buf, T v) {
  std::uint64_t bits = 0;
  std::memcpy(&bits, &v, sizeof(T));
  for (std::size_t i = 0; i < sizeof(T); ++i) buf.push_back(static_cast<char>((bits >> (8 * i)) & 0xffu));
}
template <class T>
T get_le(const unsigned char* p) {
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) bits |= static_cast<std::uint64_t>(p[i]) << (8 * i);
  T v;
  std::memcpy(&v, &bits, sizeof(T));
  return v;
}
}  // namespace detail

inline constexpr std::size_t kRecordBytes = 33;

/// "TPOT", u16 version, then 33-byte little-endian records. Records are
/// flushed in chunks of 2^20.
inline void write_tpot(std::ostream& os, const std::vector<TeapotPoint>& pts) {
  std::string buf = "TPOT";
  detail::put_le<std::uint16_t>(buf, kFormatVersion);
  os.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  for (std::size_t start = 0; start < pts.size(); start += kChunkPoints) {
    buf.clear();
    std::size_t end = std::min(pts.size(), start + kChunkPoints);
    buf.reserve((end - start) * kRecordBytes);
    for (std::size_t i = start; i < end; ++i) {
      const auto& p = pts[i];
      detail::put_le(buf, p.z_re);
      detail::put_le(buf, p.z_im);
      detail::put_le(buf, p.lambda);
      detail::put_le(buf, p.word_id);
      buf.push_back(static_cast<char>(p.flavor));
    }
    os.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  }
}

inline std::vector<TeapotPoint> read_tpot(std::istream& is) {
  std::string data((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
  if (data.size() < 6 || data.compare(0, 4, "TPOT") != 0) throw DomainError("missing TPOT magic");
  auto* u = reinterpret_cast<const unsigned char*>(data.data());
  auto version = detail::get_le<std::uint16_t>(u + 4);
  if (version != kFormatVersion) throw DomainError("unsupported TPOT version " + std::to_string(version));
  if ((data.size() - 6) % kRecordBytes) throw DomainError("truncated TPOT record at byte " + std::to_string(data.size()));
  std::vector<TeapotPoint> pts((data.size() - 6) / kRecordBytes);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const unsigned char* r = u + 6 + i * kRecordBytes;
    pts[i].z_re = detail::get_le<double>(r);
    pts[i].z_im = detail::get_le<double>(r + 8);
    pts[i].lambda = detail::get_le<double>(r + 16);
    pts[i].word_id = detail::get_le<std::uint64_t>(r + 24);
    if (r[32] > 1) throw DomainError("bad flavor byte at offset " + std::to_string(6 + i * kRecordBytes + 32));
    pts[i].flavor = static_cast<Flavor>(r[32]);
  }
  return pts;
}

// ---- diagnostics ----------------------------------------------------------

/// Uniform grid over the plane for fixed-radius neighbour queries.
class PointGrid {
 public:
  PointGrid(const std::vector<std::complex<double>>& pts, double cell) : pts_(pts), cell_(cell) {
    for (std::size_t i = 0; i < pts_.size(); ++i) cells_[key(pts_[i])].push_back(i);
  }

  /// Distance to the nearest point within `radius`, or infinity.
  double nearest_within(std::complex<double> z, double radius) const {
    double best = std::numeric_limits<double>::infinity();
    auto [cx, cy] = coords(z);
    long long span = static_cast<long long>(std::ceil(radius / cell_));
    for (long long dx = -span; dx <= span; ++dx)
      for (long long dy = -span; dy <= span; ++dy) {
        auto it = cells_.find(pack(cx + dx, cy + dy));
        if (it == cells_.end()) continue;
        for (auto i : it->second) best = std::min(best, std::abs(pts_[i] - z));
      }
    return best <= radius ? best : std::numeric_limits<double>::infinity();
  }

 private:
  std::pair<long long, long long> coords(std::complex<double> z) const {
    return {static_cast<long long>(std::floor(z.real() / cell_)), static_cast<long long>(std::floor(z.imag() / cell_))};
  }
  static std::uint64_t pack(long long x, long long y) {
    return (static_cast<std::uint64_t>(x) << 32) ^ (static_cast<std::uint64_t>(y) & 0xffffffffu);
  }
  std::uint64_t key(std::complex<double> z) const {
    auto [x, y] = coords(z);
    return pack(x, y);
  }
  std::vector<std::complex<double>> pts_;
  double cell_;
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> cells_;
};

struct PersistenceOptions {
  double band = 0.02;       // half-width of each level slice in lambda
  std::size_t levels = 16;  // sampled levels in (lambda_lo, lambda_hi]
};

struct PersistenceReport {
  double score = 1;  // fraction of (base point, level) pairs with a neighbour within eps
  std::size_t base_points = 0;
  std::size_t pairs = 0;
  std::size_t hits = 0;
  std::size_t empty_levels = 0;
  bool empty_slice = false;
};

/// How well in-disk points at level lambda_lo persist to higher levels.
inline PersistenceReport persistence_diagnostic(const std::vector<TeapotPoint>& cloud, double lambda_lo,
                                                double lambda_hi, double eps, const PersistenceOptions& opt = {}) {
  if (lambda_lo > lambda_hi) throw PreconditionError("lambda_lo must not exceed lambda_hi");
  PersistenceReport rep;
  if (lambda_lo == lambda_hi) return rep;
  auto slice = [&](double level) {
    std::vector<std::complex<double>> s;
    for (auto& p : cloud)
      if (std::abs(p.lambda - level) <= opt.band && std::abs(p.z()) < 1) s.push_back(p.z());
    return s;
  };
  auto base = slice(lambda_lo);
  rep.base_points = base.size();
  if (base.empty()) {
    rep.empty_slice = true;
    return rep;
  }
  for (std::size_t k = 1; k <= opt.levels; ++k) {
    double level = lambda_lo + (lambda_hi - lambda_lo) * static_cast<double>(k) / static_cast<double>(opt.levels);
    auto s = slice(level);
    if (s.empty()) {
      ++rep.empty_levels;
      rep.empty_slice = true;
      continue;
    }
    PointGrid grid(s, eps);
    for (auto z : base) {
      ++rep.pairs;
      if (std::isfinite(grid.nearest_within(z, eps))) ++rep.hits;
    }
  }
  rep.score = rep.pairs ? static_cast<double>(rep.hits) / static_cast<double>(rep.pairs) : 1.0;
  return rep;
}

struct SlabReport {
  std::vector<double> levels;
  std::vector<std::size_t> counts;  // points with r_lo <= |z| <= 1 in each level band
  bool all_populated = true;
};

inline SlabReport unit_cylinder_slab(const std::vector<TeapotPoint>& cloud, double lambda_lo, double lambda_hi,
                                     std::size_t levels, double band = 0.02, double r_lo = 0.95) {
  SlabReport rep;
  for (std::size_t k = 0; k < levels; ++k) {
    double level = levels == 1 ? lambda_lo
                               : lambda_lo + (lambda_hi - lambda_lo) * static_cast<double>(k) / static_cast<double>(levels - 1);
    std::size_t n = 0;
    for (auto& p : cloud) {
      double r = std::abs(p.z());
      if (std::abs(p.lambda - level) <= band && r >= r_lo && r <= 1) ++n;
    }
    rep.levels.push_back(level);
    rep.counts.push_back(n);
    rep.all_populated = rep.all_populated && n > 0;
  }
  return rep;
}

struct DensityReport {
  std::size_t count_a = 0, count_b = 0;
  double density_a = 0, density_b = 0;  // points per unit area
  double difference = 0;                // density_b - density_a
  double nearest_a = std::numeric_limits<double>::infinity();
  double nearest_b = std::numeric_limits<double>::infinity();
};

/// Point densities of two clouds in the disk of the given radius around center.
inline DensityReport preperiodic_difference_probe(const std::vector<TeapotPoint>& a, const std::vector<TeapotPoint>& b,
                                                  std::complex<double> center, double radius) {
  DensityReport rep;
  double area = std::numbers::pi * radius * radius;
  for (auto& p : a) {
    double d = std::abs(p.z() - center);
    rep.nearest_a = std::min(rep.nearest_a, d);
    if (d < radius) ++rep.count_a;
  }
  for (auto& p : b) {
    double d = std::abs(p.z() - center);
    rep.nearest_b = std::min(rep.nearest_b, d);
    if (d < radius) ++rep.count_b;
  }
  rep.density_a = static_cast<double>(rep.count_a) / area;
  rep.density_b = static_cast<double>(rep.count_b) / area;
  rep.difference = rep.density_b - rep.density_a;
  return rep;
}

}  // namespace teapot::dataset
