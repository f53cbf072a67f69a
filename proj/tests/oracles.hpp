#pragma once

// Exhaustive reference implementations used as test oracles.

#include <algorithm>
#include <functional>
#include <optional>
#include <vector>

#include "ddr/smallcancel.hpp"
#include "ddr/whitehead.hpp"

namespace ddr::oracle {

/// Minimum weight over dart-simple closed walks that never reverse.
inline std::optional<Rational> min_cycle(const WhiteheadGraph& g, const std::vector<Rational>& w) {
  const int darts = static_cast<int>(g.dart_count());
  std::optional<Rational> best;
  std::vector<bool> used(darts, false);
  std::vector<int> path;
  std::function<void(Rational)> extend = [&](Rational sum) {
    const int last = path.back();
    const int first = path.front();
    if (g.dart_head(last) == g.dart_tail(first) && first != WhiteheadGraph::reverse_dart(last)) {
      if (!best || sum < *best) best = sum;
    }
    for (int d = 0; d < darts; ++d) {
      if (used[d] || g.dart_tail(d) != g.dart_head(last) || d == WhiteheadGraph::reverse_dart(last)) continue;
      used[d] = true;
      path.push_back(d);
      extend(sum + w[WhiteheadGraph::dart_edge(d)]);
      path.pop_back();
      used[d] = false;
    }
  };
  for (int d = 0; d < darts; ++d) {
    used[d] = true;
    path = {d};
    extend(w[WhiteheadGraph::dart_edge(d)]);
    used[d] = false;
  }
  return best;
}

/// Reduced closed walk of exactly `length` darts, repeats allowed.
inline bool closed_walk_of_length(const WhiteheadGraph& g, std::size_t length) {
  const int darts = static_cast<int>(g.dart_count());
  std::vector<int> path;
  std::function<bool()> extend = [&]() {
    if (path.size() == length) {
      return g.dart_head(path.back()) == g.dart_tail(path.front()) &&
             path.front() != WhiteheadGraph::reverse_dart(path.back());
    }
    for (int d = 0; d < darts; ++d) {
      if (g.dart_tail(d) != g.dart_head(path.back()) || d == WhiteheadGraph::reverse_dart(path.back())) continue;
      path.push_back(d);
      if (extend()) return true;
      path.pop_back();
    }
    return false;
  };
  for (int d = 0; d < darts; ++d) {
    path = {d};
    if (extend()) return true;
  }
  return false;
}

/// u is a piece iff two distinct occurrences in the closure start with it.
inline bool is_piece(const std::vector<SymmetrizedRelator>& closure, const Word& u) {
  int hits = 0;
  for (const auto& e : closure) {
    if (e.word.size() >= u.size() && std::equal(u.begin(), u.end(), e.word.begin())) ++hits;
  }
  return hits >= 2;
}

/// Fewest pieces tiling the word, over all 2^(n-1) compositions.
inline std::optional<std::size_t> min_pieces(const std::vector<SymmetrizedRelator>& closure, const Word& w) {
  const std::size_t n = w.size();
  std::optional<std::size_t> best;
  for (std::size_t mask = 0; mask < (std::size_t{1} << (n - 1)); ++mask) {
    std::size_t start = 0, parts = 0;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      if (i == n - 1 || (mask >> i) & 1) {
        ok = is_piece(closure, Word(w.begin() + static_cast<long>(start), w.begin() + static_cast<long>(i) + 1));
        ++parts;
        start = i + 1;
      }
    }
    if (ok && (!best || parts < *best)) best = parts;
  }
  return best;
}

}  // namespace ddr::oracle
