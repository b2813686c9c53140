#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "teapot/errors.hpp"

namespace teapot {

/// Finite binary word, either one period (periodic kind) or a preperiod
/// followed by a period (preperiodic kind). Letters are packed 64 per block.
class Word {
 public:
  Word() = default;

  static Word periodic(std::string_view letters) {
    if (letters.empty()) throw DomainError("word must be nonempty");
    Word w;
    for (char c : letters) w.push_back(parse_letter(c));
    return w;
  }

  static Word preperiodic(std::string_view pre, std::string_view per) {
    if (per.empty()) throw DomainError("period part must be nonempty");
    Word w;
    for (char c : pre) w.push_back(parse_letter(c));
    for (char c : per) w.push_back(parse_letter(c));
    w.pre_ = pre.size();
    return w;
  }

  /// Parses "100" or "1000011100(101000)".
  static Word parse(std::string_view text) {
    auto open = text.find('(');
    if (open == std::string_view::npos) return periodic(text);
    auto close = text.find(')', open);
    if (close == std::string_view::npos || close + 1 != text.size())
      throw DomainError("malformed eventually periodic word: " + std::string(text));
    return preperiodic(text.substr(0, open), text.substr(open + 1, close - open - 1));
  }

  /// Inverse of id() for periodic words.
  static Word from_id(std::uint64_t id) {
    if (id < 2) throw DomainError("invalid word id");
    std::uint64_t pre = id >> 56;
    std::uint64_t body = id & ((std::uint64_t{1} << 56) - 1);
    int len = 63 - __builtin_clzll(body);
    Word w;
    for (int i = 0; i < len; ++i) w.push_back(static_cast<int>((body >> (len - 1 - i)) & 1u));
    if (pre >= static_cast<std::uint64_t>(len)) throw DomainError("invalid word id");
    w.pre_ = pre;
    return w;
  }

  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }
  bool is_periodic() const { return pre_ == 0; }
  std::size_t preperiod_length() const { return pre_; }
  std::size_t period_length() const { return size_ - pre_; }

  int operator[](std::size_t i) const { return static_cast<int>((blocks_[i >> 6] >> (i & 63)) & 1u); }

  /// Letter i (0-based) of the unrolled infinite sequence pre·per^∞.
  int stream(std::size_t i) const {
    if (i < size_) return (*this)[i];
    return (*this)[pre_ + (i - pre_) % (size_ - pre_)];
  }

  void push_back(int letter) {
    if ((size_ & 63) == 0) blocks_.push_back(0);
    if (letter) blocks_.back() |= std::uint64_t{1} << (size_ & 63);
    ++size_;
  }

  /// Concatenation of periodic words.
  Word operator+(const Word& other) const {
    Word out = *this;
    for (std::size_t i = 0; i < other.size_; ++i) out.push_back(other[i]);
    out.pre_ = 0;
    return out;
  }

  Word repeat(std::size_t n) const {
    Word out;
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < size_; ++i) out.push_back((*this)[i]);
    return out;
  }

  Word prefix(std::size_t n) const {
    Word out;
    for (std::size_t i = 0; i < n && i < size_; ++i) out.push_back((*this)[i]);
    return out;
  }

  Word substr(std::size_t from, std::size_t n) const {
    Word out;
    for (std::size_t i = from; i < from + n && i < size_; ++i) out.push_back((*this)[i]);
    return out;
  }

  /// Period part as a periodic word.
  Word period() const { return substr(pre_, size_ - pre_); }
  Word preperiod() const { return substr(0, pre_); }

  std::string letters() const {
    std::string s;
    s.reserve(size_);
    for (std::size_t i = 0; i < size_; ++i) s.push_back((*this)[i] ? '1' : '0');
    return s;
  }

  std::string to_string() const {
    if (pre_ == 0) return letters();
    auto s = letters();
    return s.substr(0, pre_) + "(" + s.substr(pre_) + ")";
  }

  /// Stable identifier: marker bit above the letters (first letter most
  /// significant), preperiod length in the top byte. Requires size < 56.
  std::uint64_t id() const {
    if (size_ >= 56) throw DomainError("word too long for a 64-bit id");
    std::uint64_t v = 1;
    for (std::size_t i = 0; i < size_; ++i) v = (v << 1) | static_cast<std::uint64_t>((*this)[i]);
    return (static_cast<std::uint64_t>(pre_) << 56) | v;
  }

  std::size_t count_ones() const {
    std::size_t n = 0;
    for (auto b : blocks_) n += static_cast<std::size_t>(__builtin_popcountll(b));
    return n;
  }

  friend bool operator==(const Word& a, const Word& b) {
    return a.size_ == b.size_ && a.pre_ == b.pre_ && a.blocks_ == b.blocks_;
  }

 private:
  static int parse_letter(char c) {
    if (c == '0') return 0;
    if (c == '1') return 1;
    throw DomainError(std::string("invalid letter '") + c + "'");
  }

  std::vector<std::uint64_t> blocks_;
  std::size_t size_ = 0;
  std::size_t pre_ = 0;
};

using SignSeq = std::vector<int>;

enum class AuxFlavor { paper, tiozzo };

struct AuxString {
  std::vector<unsigned> counts;
  AuxFlavor flavor = AuxFlavor::paper;

  friend bool operator==(const AuxString&, const AuxString&) = default;
};

}  // namespace teapot
