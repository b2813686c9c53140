#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "teapot/errors.hpp"
#include "teapot/polynomial.hpp"
#include "teapot/roots.hpp"
#include "teapot/word.hpp"

namespace teapot::symbolic {

enum class ItineraryStatus { periodic, preperiodic, truncated };

struct Itinerary {
  std::string letters;  // first max_len letters of the itinerary of 1
  ItineraryStatus status = ItineraryStatus::truncated;
  std::size_t preperiod = 0;
  std::size_t period = 0;

  /// The detected period (or preperiod and period) as a word.
  Word word() const {
    switch (status) {
      case ItineraryStatus::periodic:
        return Word::periodic(letters.substr(0, period));
      case ItineraryStatus::preperiodic:
        return Word::preperiodic(letters.substr(0, preperiod), letters.substr(preperiod, period));
      default:
        return Word::periodic(letters);
    }
  }
};

/// Itinerary of 1 under the tent map of slope beta. I0 = [0, 1/beta] is closed
/// on the right. Orbit repeats within 1e-12 are accepted only when the
/// corresponding polynomial has leading root beta to within 1e-9.
inline Itinerary itinerary(double beta, std::size_t max_len) {
  if (!(beta > 1.0 && beta <= 2.0)) throw DomainError("beta must lie in (1, 2]");
  if (max_len < 1) throw DomainError("max_len must be at least 1");
  using ld = long double;
  const ld b = beta, crit = 1 / b, tol = 1e-12L;

  Itinerary out;
  std::vector<ld> orbit{1};
  std::string letters;
  for (std::size_t j = 0; j < max_len; ++j) {
    ld x = orbit.back();
    if (std::fabs(x - crit) < tol) x = crit;
    int letter = x <= crit ? 0 : 1;
    letters.push_back(static_cast<char>('0' + letter));
    ld next = letter == 0 ? b * x : 2 - b * x;
    if (next < 0) next = 0;
    if (next > 1) next = 1;

    // does f^{j+1}(1) revisit an earlier orbit point?
    for (std::size_t i = 0; i <= j; ++i) {
      if (std::fabs(next - orbit[i]) >= tol) continue;
      std::size_t pre = i, per = j + 1 - i;
      try {
        Word cand = pre == 0 ? Word::periodic(letters)
                             : Word::preperiodic(letters.substr(0, pre), letters.substr(pre, per));
        IntPolynomial p = pre == 0 ? poly::parry_polynomial(cand) : poly::preperiodic_polynomial(cand);
        if (std::fabs(roots::leading_root(p) - beta) > 1e-9) continue;
        if (pre > 0) {
          Word canon = poly::canonical_preperiodic(cand);
          pre = canon.preperiod_length();
          per = canon.period_length();
        }
      } catch (const DomainError&) {
        continue;
      }
      out.status = pre == 0 ? ItineraryStatus::periodic : ItineraryStatus::preperiodic;
      out.preperiod = pre;
      out.period = per;
      Word w = pre == 0 ? Word::periodic(letters.substr(0, per))
                        : Word::preperiodic(letters.substr(0, pre), letters.substr(pre, per));
      out.letters.clear();
      for (std::size_t k = 0; k < max_len; ++k) out.letters.push_back(static_cast<char>('0' + w.stream(k)));
      return out;
    }
    orbit.push_back(next);
  }
  out.letters = letters;
  return out;
}

}  // namespace teapot::symbolic
