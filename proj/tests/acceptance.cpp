// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "teapot/teapot.hpp"

using namespace teapot;
using cd = std::complex<double>;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void run(const std::string& label, double budget_seconds, const std::function<Outcome()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool in_time = secs < budget_seconds;
  bool pass = o.pass && in_time;
  if (!pass) ++failures;
  std::printf("%-12s %s  (%.2fs, budget %.0fs%s)  %s\n", label.c_str(), pass ? "PASS" : "FAIL", secs, budget_seconds,
              in_time ? "" : ", over budget", o.detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

const cd kWitness(0.5393738531461442, 0.4050155839374199);

std::vector<Word> admissible_words(std::size_t max_len) {
  std::vector<Word> out;
  for (auto id : dataset::enumerate_admissible(max_len).ids) out.push_back(Word::from_id(id));
  return out;
}

}  // namespace

int main() {
  std::printf("teapot acceptance run, %u worker thread(s)\n", default_threads());

  run("criterion 1", 1, [] {
    Word w = Word::parse("1000011100(101000)");
    auto p = poly::preperiodic_polynomial(w);
    auto expect = IntPolynomial::from_descending({1, -2, 0, 0, 0, 0, 1, 0, 2, 0, 0, -2, -2, 4, -2});
    bool coeffs = p == expect || p == -expect;
    auto fr = poly::remove_trivial_factors_detailed(p, true);
    bool factors = fr.mult_minus_one == 1 && fr.mult_plus_one == 1 && fr.quotient.degree() == 12;
    double best = 1e300;
    cd near;
    for (auto& r : roots::all_roots(fr.quotient).roots)
      if (std::abs(r.value - kWitness) < best) {
        best = std::abs(r.value - kWitness);
        near = r.value;
      }
    bool modulus = std::abs(std::abs(near) - 0.674509) <= 1e-5;
    return Outcome{coeffs && factors && best < 1e-9 && modulus,
                   "P = " + p.to_string('b') + fmt("; |root - p| = %.2e, |p| = %.7f", best, std::abs(near))};
  });

  run("criterion 2", 1, [] {
    auto q = ifs::exclusion_test(kWitness, 5);
    bool ok = std::abs(q.exclusion_min - 4.3792) <= 1e-3 && std::abs(q.ball_radius - 3.07228) <= 1e-4 &&
              q.verdict == ifs::Verdict::excluded;
    auto q6 = ifs::exclusion_test(kWitness, 6);
    return Outcome{ok, fmt("depth 5: min %.6f, ball %.6f", q.exclusion_min, q.ball_radius) + ", verdict " +
                           ifs::verdict_name(q.verdict) + fmt("; expected min 4.3792 (depth 6 gives %.6f)", q6.exclusion_min)};
  });

  run("criterion 3", 60, [] {
    std::size_t checked = 0, bad = 0;
    for (const Word& w : admissible_words(12)) {
      if (w.count_ones() % 2) continue;
      auto k = poly::kneading_polynomial(w);
      auto lhs = IntPolynomial::from_descending({1, -1}) * k.reversed();
      if (lhs != IntPolynomial(oracle::parry_coeffs(w.letters()))) ++bad;
      ++checked;
    }
    return Outcome{bad == 0 && checked > 0, fmt("%.0f words, %.0f mismatches", double(checked), double(bad))};
  });

  run("criterion 4", 120, [] {
    std::size_t words = 0, gated = 0, bad = 0;
    for (std::size_t n = 1; n <= 14; ++n)
      for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
        Word w = Word::periodic(oracle::bits(v, n));
        ++words;
        bool shift = symbolic::is_admissible(w);
        bool decomp = symbolic::is_admissible_by_decomposition(w);
        if (symbolic::starts_with_10(w)) {
          ++gated;
          bool extremal = symbolic::is_extremal(symbolic::auxiliary_string(w));
          if (shift != decomp || shift != extremal) ++bad;
        } else if (shift || decomp) {
          ++bad;
        }
      }
    return Outcome{bad == 0, fmt("%.0f words (%.0f starting with 10), %.0f disagreements", double(words), double(gated), double(bad))};
  });

  run("criterion 5", 120, [] {
    std::size_t checked = 0, bad = 0;
    double worst = 0;
    for (const Word& w : admissible_words(12)) {
      Word d = symbolic::period_double(w);
      bool adm = oracle::admissible(d.letters());
      double l = roots::leading_root(poly::parry_polynomial(w));
      double ld = roots::leading_root(poly::parry_polynomial(d));
      double err = std::abs(ld * ld - l);
      worst = std::max(worst, err);
      if (!adm || !(err <= 1e-9)) ++bad;
      ++checked;
    }
    return Outcome{bad == 0 && checked > 0, fmt("%.0f words, %.0f failures, worst |l^2 - L| = %.2e", double(checked), double(bad), worst)};
  });

  run("criterion 6", 120, [] {
    auto words = admissible_words(12);
    std::stable_sort(words.begin(), words.end(),
                     [](const Word& a, const Word& b) { return symbolic::twisted_lex_compare(a, b) < 0; });
    std::vector<double> rates;
    for (auto& w : words) rates.push_back(roots::leading_root(poly::parry_polynomial(w)));
    std::size_t bad = 0;
    double worst = 0;
    for (std::size_t i = 1; i < rates.size(); ++i) {
      double drop = rates[i - 1] - rates[i];
      worst = std::max(worst, drop);
      if (drop > 1e-9) ++bad;
    }
    return Outcome{bad == 0, fmt("%.0f words, %.0f inversions, largest drop %.2e", double(rates.size()), double(bad), worst)};
  });

  run("criterion 7", 600, [] {
    const std::size_t n = 14;
    auto cloud = dataset::build_point_cloud({dataset::SourceKind::periodic, n}, default_threads());
    if (!cloud.failures.empty()) return Outcome{false, "cloud build had root-finding failures"};
    auto gi = ifs::gap_radius(ifs::RingForm::sqrt, 1, cd(0, 1), n);
    bool hand = std::abs(gi.r - 1.0 / (435.0 * 2.718281828459045)) < 1e-15;
    std::string detail = fmt("r(i, 14) = %.6e (1/(435e) = %.6e);", gi.r, 1.0 / (435.0 * 2.718281828459045));
    bool ok = hand;
    struct Case {
      ifs::RingForm form;
      int D;
      cd x;
      const char* name;
    };
    const double h = std::sqrt(3.0) / 2;
    std::vector<Case> cases{{ifs::RingForm::sqrt, 1, {0, 1}, "i"},
                            {ifs::RingForm::half, 3, {1, 0}, "1"},
                            {ifs::RingForm::half, 3, {0.5, h}, "e^(i pi/3)"},
                            {ifs::RingForm::half, 3, {-0.5, h}, "e^(2i pi/3)"},
                            {ifs::RingForm::half, 3, {-1, 0}, "-1"},
                            {ifs::RingForm::half, 3, {-0.5, -h}, "e^(4i pi/3)"},
                            {ifs::RingForm::half, 3, {0.5, -h}, "e^(5i pi/3)"}};
    for (auto& c : cases) {
      auto g = ifs::gap_radius(c.form, c.D, c.x, n);
      auto v = ifs::verify_gap(g, cloud.points, n);
      ok = ok && v.ok;
      detail += std::string(" ") + c.name + (v.ok ? " ok" : fmt(" %.0f offenders (nearest %.2e)", double(v.offenders.size()), v.offenders[0].distance));
    }
    detail += fmt("; %.0f cloud points", double(cloud.points.size()));
    return Outcome{ok, detail};
  });

  run("criterion 8", 600, [] {
    auto st = dataset::count_admissible(16);
    std::vector<std::uint64_t> brute(17, 0);
    for (std::size_t n = 2; n <= 16; ++n)
      for (std::uint64_t v = std::uint64_t{1} << (n - 1); v < (std::uint64_t{1} << n); ++v) {
        auto s = oracle::bits(v, n);
        if (oracle::primitive(s) && oracle::admissible(s)) ++brute[n];
      }
    bool ok = st.admissible_by_length == brute;
    return Outcome{ok, fmt("desk-scale count n <= 16: %.0f enumerated, %.0f brute force", double(st.total_admissible()),
                           double(std::accumulate(brute.begin(), brute.end(), std::uint64_t{0})))};
  });

  run("criterion 8+", 1800, [] {
    dataset::EnumOptions opt;
    opt.threads = default_threads();
    auto st = dataset::count_admissible(29, opt);
    double total = static_cast<double>(st.total_admissible());
    bool ok = total >= 1e7 / 3 && total <= 3e7;
    return Outcome{ok, fmt("optional scale check: %.0f admissible words of length <= 29, ratio to 1e7 = %.2f (bound 3)", total,
                           total / 1e7)};
  });

  run("criterion 9", 600, [] {
    auto cloud = dataset::build_point_cloud({dataset::SourceKind::periodic, 16}, default_threads());
    if (!cloud.failures.empty()) return Outcome{false, "cloud build had root-finding failures"};
    std::size_t outside = 0;
    double lo = 1e300, hi = 0;
    for (auto& p : cloud.points) {
      double m = std::abs(p.z());
      lo = std::min(lo, m);
      hi = std::max(hi, m);
      if (m < 0.5 - 1e-6 || m > 2 + 1e-6) ++outside;
    }
    return Outcome{outside == 0 && !cloud.points.empty(),
                   fmt("%.0f points, %.0f outside, |z| range [%.6f, ", double(cloud.points.size()), double(outside), lo) +
                       fmt("%.6f]", hi)};
  });

  std::printf("%d criterion line(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
