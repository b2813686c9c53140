#pragma once

#include <algorithm>
#include <array>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "teapot/errors.hpp"
#include "teapot/parallel.hpp"
#include "teapot/symbolic.hpp"
#include "teapot/word.hpp"

namespace teapot::dataset {

struct EnumStats {
  std::vector<std::uint64_t> admissible_by_length;  // index = length
  std::vector<std::uint64_t> dominant_by_length;
  std::uint64_t total_polynomials = 0;
  std::uint64_t total_roots = 0;
  double wall_seconds = 0;

  std::uint64_t total_admissible() const {
    std::uint64_t s = 0;
    for (auto c : admissible_by_length) s += c;
    return s;
  }
};

struct EnumOptions {
  unsigned threads = 1;
  bool count_dominant = true;
  std::size_t split_depth = 12;  // subtrees below this prefix length run as tasks
};

struct EnumResult {
  std::vector<std::uint64_t> ids;  // Word::id() values in increasing order
  EnumStats stats;
};

namespace detail {

constexpr std::size_t kMaxLen = 55;

/// Prefix u[0..L) packed LSB-first, the signs of its prefixes, and the set of
/// shifts j whose suffix u[j..L) still equals the prefix u[0..L-j).
struct Node {
  std::uint64_t bits = 0;
  std::size_t len = 0;
  std::array<signed char, kMaxLen + 1> sign{};
  std::uint64_t tied = 0;

  int at(std::size_t i) const { return static_cast<int>((bits >> i) & 1u); }

  /// Appends letter c unless some suffix becomes twisted-greater than the
  /// prefix of equal length, which no completion can repair.
  bool extend(int c, Node& out) const {
    if (len == 0 && c != 1) return false;
    if (len == 1 && c != 0) return false;
    std::uint64_t cand = tied | (len >= 1 ? (std::uint64_t{1} << len) : 0);
    std::uint64_t keep = 0;
    for (std::uint64_t m = cand; m; m &= m - 1) {
      std::size_t j = static_cast<std::size_t>(__builtin_ctzll(m));
      int a = at(len - j);
      if (a == c) {
        keep |= std::uint64_t{1} << j;
        continue;
      }
      if ((sign[len - j] > 0) == (c > a)) return false;
    }
    out = *this;
    out.bits |= static_cast<std::uint64_t>(c) << len;
    out.sign[len + 1] = static_cast<signed char>(sign[len] * (c ? -1 : 1));
    out.len = len + 1;
    out.tied = keep;
    return true;
  }

  /// The node's word as a period: every rotation strictly below it.
  bool admissible_primitive() const {
    if (len < 2) return false;
    for (std::uint64_t m = tied; m; m &= m - 1) {
      std::size_t j = static_cast<std::size_t>(__builtin_ctzll(m));
      int s = sign[len - j];
      bool decided = false;
      for (std::size_t t = len - j; t < len; ++t) {
        int r = at(t + j - len), o = at(t);
        if (r != o) {
          if ((s > 0) == (r > o)) return false;
          decided = true;
          break;
        }
        s *= r ? -1 : 1;
      }
      if (!decided) return false;  // rotation equals the word: not primitive
    }
    return true;
  }

  std::uint64_t id() const {
    std::uint64_t v = 1;
    for (std::size_t i = 0; i < len; ++i) v = (v << 1) | static_cast<std::uint64_t>(at(i));
    return v;
  }
};

inline Node root_node() {
  Node n;
  n.sign[0] = 1;
  return n;
}

template <class Visit>
void dfs(const Node& node, std::size_t max_len, Visit& visit) {
  visit(node);
  if (node.len >= max_len) return;
  Node child;
  for (int c = 0; c <= 1; ++c)
    if (node.extend(c, child)) dfs(child, max_len, visit);
}

/// Visits every surviving prefix of length <= max_len. Prefixes shorter than
/// the split depth are visited serially, deeper subtrees as parallel tasks;
/// each task owns one output slot.
template <class Slot, class Visit>
std::vector<Slot> parallel_dfs(std::size_t max_len, std::size_t split_depth, unsigned threads, Visit visit) {
  std::size_t depth = std::min(split_depth, max_len);
  std::vector<Node> frontier;
  Slot head{};
  auto shallow = [&](const Node& n) {
    if (n.len < depth) visit(n, head);
  };
  auto walk = [&](auto& self, const Node& n) -> void {
    shallow(n);
    if (n.len == depth) {
      frontier.push_back(n);
      return;
    }
    Node child;
    for (int c = 0; c <= 1; ++c)
      if (n.extend(c, child)) self(self, child);
  };
  walk(walk, root_node());

  std::vector<Slot> slots(frontier.size() + 1);
  slots[0] = std::move(head);
  parallel_for(frontier.size(), threads, [&](std::size_t i) {
    Slot& slot = slots[i + 1];
    auto v = [&](const Node& n) { visit(n, slot); };
    dfs(frontier[i], max_len, v);
  });
  return slots;
}

}  // namespace detail

/// Every primitive admissible periodic word of length <= max_len exactly once,
/// found by prefix-pruned depth-first search.
inline EnumResult enumerate_admissible(std::size_t max_len, const EnumOptions& opt = {}) {
  if (max_len > detail::kMaxLen) throw DomainError("max_len too large for packed enumeration");
  auto t0 = std::chrono::steady_clock::now();
  EnumResult res;
  res.stats.admissible_by_length.assign(max_len + 1, 0);
  res.stats.dominant_by_length.assign(max_len + 1, 0);
  if (max_len < 2) return res;

  auto slots = detail::parallel_dfs<std::vector<std::uint64_t>>(
      max_len, opt.split_depth, opt.threads, [](const detail::Node& n, std::vector<std::uint64_t>& out) {
        if (n.admissible_primitive()) out.push_back(n.id());
      });
  for (auto& s : slots) res.ids.insert(res.ids.end(), s.begin(), s.end());
  std::sort(res.ids.begin(), res.ids.end());

  for (auto id : res.ids) {
    std::size_t len = static_cast<std::size_t>(63 - __builtin_clzll(id));
    ++res.stats.admissible_by_length[len];
  }
  if (opt.count_dominant) {
    std::vector<unsigned char> dom(res.ids.size(), 0);
    parallel_for(res.ids.size(), opt.threads,
                 [&](std::size_t i) { dom[i] = symbolic::is_dominant_word(Word::from_id(res.ids[i])); });
    for (std::size_t i = 0; i < dom.size(); ++i)
      if (dom[i]) ++res.stats.dominant_by_length[static_cast<std::size_t>(63 - __builtin_clzll(res.ids[i]))];
  }
  res.stats.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

/// Per-length counts of primitive admissible words without storing them.
inline EnumStats count_admissible(std::size_t max_len, const EnumOptions& opt = {}) {
  if (max_len > detail::kMaxLen) throw DomainError("max_len too large for packed enumeration");
  auto t0 = std::chrono::steady_clock::now();
  EnumStats st;
  st.admissible_by_length.assign(max_len + 1, 0);
  st.dominant_by_length.assign(max_len + 1, 0);
  if (max_len >= 2) {
    auto slots = detail::parallel_dfs<std::vector<std::uint64_t>>(
        max_len, opt.split_depth, opt.threads, [max_len](const detail::Node& n, std::vector<std::uint64_t>& c) {
          if (c.empty()) c.assign(max_len + 1, 0);
          if (n.admissible_primitive()) ++c[n.len];
        });
    for (auto& c : slots)
      for (std::size_t k = 0; k < c.size(); ++k) st.admissible_by_length[k] += c[k];
  }
  st.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return st;
}

/// Strictly preperiodic admissible strings pre·per^∞ with |pre|+|per| <=
/// max_total, each in canonical form: primitive period and the last letters of
/// pre and per differ (so the preperiod is minimal). Ids carry |pre| in the
/// top byte.
inline EnumResult enumerate_preperiodic(std::size_t max_total, const EnumOptions& opt = {}) {
  if (max_total > detail::kMaxLen) throw DomainError("max_total too large for packed enumeration");
  auto t0 = std::chrono::steady_clock::now();
  EnumResult res;
  res.stats.admissible_by_length.assign(max_total + 1, 0);
  res.stats.dominant_by_length.assign(max_total + 1, 0);
  if (max_total < 2) return res;

  auto slots = detail::parallel_dfs<std::vector<std::uint64_t>>(
      max_total, opt.split_depth, opt.threads, [](const detail::Node& n, std::vector<std::uint64_t>& out) {
        if (n.len < 2) return;
        std::string s;
        for (std::size_t i = 0; i < n.len; ++i) s.push_back(static_cast<char>('0' + n.at(i)));
        for (std::size_t k = 1; k < n.len; ++k) {
          if (s[k - 1] == s[n.len - 1]) continue;
          Word per = Word::periodic(s.substr(k));
          if (!symbolic::is_primitive(per)) continue;
          Word w = Word::preperiodic(s.substr(0, k), s.substr(k));
          if (symbolic::is_admissible(w)) out.push_back(w.id());
        }
      });
  for (auto& s : slots) res.ids.insert(res.ids.end(), s.begin(), s.end());
  std::sort(res.ids.begin(), res.ids.end());
  for (auto id : res.ids) {
    std::uint64_t body = id & ((std::uint64_t{1} << 56) - 1);
    ++res.stats.admissible_by_length[static_cast<std::size_t>(63 - __builtin_clzll(body))];
  }
  res.stats.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

}  // namespace teapot::dataset
