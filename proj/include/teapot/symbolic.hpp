#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "teapot/errors.hpp"
#include "teapot/word.hpp"

namespace teapot::symbolic {

/// Slope sign picked up when passing through a letter: E(0)=+1, E(1)=-1.
constexpr int letter_sign(int letter) { return letter ? -1 : 1; }

/// Running product of slope signs; entry 0 is +1, entry |w| is the sign of the
/// whole word.
inline SignSeq cumulative_signs(const Word& w) {
  SignSeq s(w.size() + 1);
  s[0] = 1;
  for (std::size_t j = 0; j < w.size(); ++j) s[j + 1] = s[j] * letter_sign(w[j]);
  return s;
}

inline int word_sign(const Word& w) { return (w.count_ones() % 2 == 0) ? 1 : -1; }

namespace detail {

/// Twisted comparison of two letter streams, looking at positions [0, cutoff).
template <class A, class B>
std::strong_ordering compare_streams(A&& a, B&& b, std::size_t cutoff) {
  int sign = 1;
  for (std::size_t i = 0; i < cutoff; ++i) {
    int x = a(i), y = b(i);
    if (x != y) {
      bool less = (x < y) == (sign > 0);
      return less ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    sign *= letter_sign(x);
  }
  return std::strong_ordering::equal;
}

}  // namespace detail

/// Twisted lexicographic comparison of the infinite strings w^∞ (periodic
/// kind) or pre·per^∞ (preperiodic kind). Two eventually periodic streams that
/// agree on max(pre) + |per_w| + |per_v| letters are equal.
inline std::strong_ordering twisted_lex_compare(const Word& w, const Word& v) {
  std::size_t cutoff = std::max(w.preperiod_length(), v.preperiod_length()) + w.period_length() +
                       v.period_length();
  return detail::compare_streams([&](std::size_t i) { return w.stream(i); },
                                 [&](std::size_t i) { return v.stream(i); }, cutoff);
}

/// Twisted comparison of two finite words of equal length, as finite strings.
inline std::strong_ordering twisted_lex_compare_finite(const Word& a, const Word& b) {
  if (a.size() != b.size()) throw PreconditionError("finite comparison needs equal lengths");
  return detail::compare_streams([&](std::size_t i) { return a[i]; },
                                 [&](std::size_t i) { return b[i]; }, a.size());
}

inline bool is_primitive(const Word& w) {
  std::size_t n = w.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d) continue;
    bool rep = true;
    for (std::size_t i = d; i < n && rep; ++i) rep = w[i] == w[i - d];
    if (rep) return false;
  }
  return true;
}

inline bool starts_with_10(const Word& w) {
  return w.size() >= 1 && w.stream(0) == 1 && w.stream(1) == 0;
}

/// Every shift of the infinite string is twisted-below the string itself.
inline bool satisfies_shift_criterion(const Word& w) {
  std::size_t n = w.size();
  std::size_t cutoff = w.preperiod_length() + 2 * w.period_length();
  for (std::size_t j = 1; j < n; ++j) {
    auto c = detail::compare_streams([&](std::size_t i) { return w.stream(i + j); },
                                     [&](std::size_t i) { return w.stream(i); }, cutoff);
    if (c == std::strong_ordering::greater) return false;
  }
  return true;
}

/// Realizable as the itinerary of 1 for some tent map: the string starts with
/// 10 and dominates all of its shifts.
inline bool is_admissible(const Word& w) {
  return starts_with_10(w) && satisfies_shift_criterion(w);
}

/// Same verdict through rotations w=xy restricted to y starting with 10.
inline bool is_admissible_by_decomposition(const Word& w) {
  if (!w.is_periodic()) throw PreconditionError("decomposition criterion needs a periodic word");
  if (!starts_with_10(w)) return false;
  std::size_t n = w.size();
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (w[i] != 1 || w[i + 1] != 0) continue;
    Word yx = w.substr(i, n - i) + w.prefix(i);
    if (twisted_lex_compare_finite(yx, w) == std::strong_ordering::greater) return false;
  }
  return true;
}

inline AuxString auxiliary_string(const Word& w, AuxFlavor flavor = AuxFlavor::paper) {
  if (w.empty() || w[0] != 1) throw DomainError("auxiliary string needs a word starting with 1");
  AuxString a;
  a.flavor = flavor;
  unsigned base = flavor == AuxFlavor::tiozzo ? 1u : 0u;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i])
      a.counts.push_back(base);
    else
      ++a.counts.back();
  }
  return a;
}

inline Word word_from_aux(const AuxString& a) {
  Word w;
  unsigned base = a.flavor == AuxFlavor::tiozzo ? 1u : 0u;
  for (unsigned c : a.counts) {
    if (c < base) throw DomainError("tiozzo-flavor entries are positive");
    w.push_back(1);
    for (unsigned k = base; k < c; ++k) w.push_back(0);
  }
  if (w.empty()) throw DomainError("empty auxiliary string");
  return w;
}

/// Alternating order, 1-indexed: at the first difference k, an odd k favours
/// the larger entry being smaller. Unequal lengths compare on the common prefix
/// only, so `less` means A ≪ B.
inline std::strong_ordering alt_lex_compare(const AuxString& A, const AuxString& B) {
  std::size_t n = std::min(A.counts.size(), B.counts.size());
  for (std::size_t i = 0; i < n; ++i) {
    unsigned a = A.counts[i], b = B.counts[i];
    if (a == b) continue;
    bool odd = (i + 1) % 2 == 1;
    bool less = odd ? a > b : a < b;
    return less ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

namespace detail {
inline AuxString aux_slice(const AuxString& a, std::size_t from, std::size_t n) {
  AuxString out;
  out.flavor = a.flavor;
  out.counts.assign(a.counts.begin() + static_cast<std::ptrdiff_t>(from),
                    a.counts.begin() + static_cast<std::ptrdiff_t>(from + n));
  return out;
}
}  // namespace detail

/// XY ≤alt YX for every nontrivial decomposition.
inline bool is_extremal(const AuxString& a) {
  std::size_t n = a.counts.size();
  for (std::size_t i = 1; i < n; ++i) {
    AuxString yx = detail::aux_slice(a, i, n - i);
    yx.counts.insert(yx.counts.end(), a.counts.begin(), a.counts.begin() + static_cast<std::ptrdiff_t>(i));
    if (alt_lex_compare(a, yx) == std::strong_ordering::greater) return false;
  }
  return true;
}

/// Each proper prefix is strictly alt-below the suffix of the same length.
inline bool is_dominant_aux(const AuxString& a) {
  std::size_t n = a.counts.size();
  for (std::size_t len = 1; len < n; ++len) {
    auto c = alt_lex_compare(detail::aux_slice(a, 0, len), detail::aux_slice(a, n - len, len));
    if (c != std::strong_ordering::less) return false;
  }
  return true;
}

inline bool is_dominant_word(const Word& w) {
  if (!w.is_periodic() || w.empty() || w[0] != 1) return false;
  if (word_sign(w) != 1) return false;
  return is_dominant_aux(auxiliary_string(w));
}

/// Itinerary of the square-root growth rate: odd positions 1, position 2k
/// holds the complement of w_k.
inline Word period_double(const Word& w) {
  if (!w.is_periodic() || !is_admissible(w)) throw DomainError("period doubling needs an admissible periodic word");
  Word out;
  for (std::size_t k = 0; k < w.size(); ++k) {
    out.push_back(1);
    out.push_back(1 - w[k]);
  }
  return out;
}

inline Word ones(std::size_t n) {
  Word w;
  for (std::size_t i = 0; i < n; ++i) w.push_back(1);
  return w;
}

/// The two dominant extensions of w: w·[10·]1^κ·10·1^|w|·{01,10}·1^|w|, with
/// the bracketed 10 present exactly when κ is odd. First element uses 01.
/// Both results are checked; the even-κ form is not dominant when w = 10·1^j
/// with j odd, and that case is reported as a domain error.
inline std::pair<Word, Word> dominant_extensions(const Word& w, std::size_t kappa) {
  if (!is_dominant_word(w)) throw DomainError("dominant_extensions needs a dominant word");
  if (kappa <= w.size()) throw DomainError("kappa must exceed |w|");
  Word head = w;
  if (kappa % 2 == 1) head = head + Word::periodic("10");
  head = head + ones(kappa) + Word::periodic("10") + ones(w.size());
  Word tail = ones(w.size());
  std::pair<Word, Word> out{head + Word::periodic("01") + tail, head + Word::periodic("10") + tail};
  if (!is_dominant_word(out.first) || !is_dominant_word(out.second))
    throw DomainError("extension of " + w.to_string() + " with kappa = " + std::to_string(kappa) + " is not dominant");
  return out;
}

/// w1·w2^n, admissible whenever the listed hypotheses hold.
inline Word concat_admissible(const Word& w1, const Word& w2, std::size_t n) {
  std::vector<std::string> failed;
  if (!is_dominant_word(w1)) failed.emplace_back("w1 is dominant");
  if (!w2.is_periodic() || !is_admissible(w2)) failed.emplace_back("w2 is admissible");
  if (!is_primitive(w2)) failed.emplace_back("w2 is irreducible");
  if (!(2 * n * w2.size() > w1.size())) failed.emplace_back("2n|w2| > |w1|");
  if (!(w1.size() > n * w2.size())) failed.emplace_back("|w1| > n|w2|");
  if (twisted_lex_compare(w1, w2) != std::strong_ordering::greater) failed.emplace_back("w1^inf >E w2^inf");
  if (n == 0 || (w2.count_ones() * n) % 2 != 0) failed.emplace_back("w2^n has positive cumulative sign");
  if (!failed.empty()) {
    std::string msg = "concat_admissible hypotheses failed:";
    for (auto& f : failed) msg += " [" + f + "]";
    throw PreconditionError(msg);
  }
  Word out = w1 + w2.repeat(n);
  if (!is_admissible(out)) throw InternalError("concatenation " + out.to_string() + " is not admissible");
  return out;
}

struct PowerTail {
  Word word;  // v^n · 1^∞
  bool admissible;
};

inline PowerTail power_tail_word(const Word& v, std::size_t n) {
  if (!is_dominant_word(v)) throw DomainError("power_tail_word needs a dominant word");
  if (n == 0) throw DomainError("power must be positive");
  Word w = Word::preperiodic(v.repeat(n).letters(), "1");
  return {w, is_admissible(w)};
}

}  // namespace teapot::symbolic
