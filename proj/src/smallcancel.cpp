#include "ddr/smallcancel.hpp"

#include <algorithm>
#include <limits>

#include "ddr/whitehead.hpp"

namespace ddr {

std::vector<SymmetrizedRelator> symmetrized_closure(const Presentation& p) {
  require_cyclically_reduced(p);
  std::vector<SymmetrizedRelator> out;
  for (std::size_t r = 0; r < p.relator_count(); ++r) {
    const auto& w = p.relators()[r];
    const Word inv = inverse(w);
    for (bool inverted : {false, true}) {
      for (std::size_t k = 0; k < w.size(); ++k) {
        out.push_back({r, k, inverted, rotate(inverted ? inv : w, k)});
      }
    }
  }
  return out;
}

PieceTable::PieceTable(const std::vector<SymmetrizedRelator>& closure)
    : max_piece_(closure.size(), 0),
      block_start_(closure.size(), 0),
      block_length_(closure.size(), 0) {
  for (std::size_t i = 0; i < closure.size(); ++i) {
    block_start_[i] = i - closure[i].rotation;
    block_length_[i] = closure[i].word.size();
    const auto& u = closure[i].word;
    std::size_t best = 0;
    for (std::size_t j = 0; j < closure.size(); ++j) {
      if (j == i) continue;
      const auto& v = closure[j].word;
      std::size_t k = 0;
      while (k < u.size() && k < v.size() && u[k] == v[k]) ++k;
      best = std::max(best, k);
    }
    max_piece_[i] = best;
  }
}

std::size_t PieceTable::shifted(std::size_t element, std::size_t shift) const {
  const std::size_t start = block_start_.at(element);
  const std::size_t n = block_length_[element];
  return start + (element - start + shift) % n;
}

std::optional<PieceDecomposition> min_piece_decomposition(
    const std::vector<SymmetrizedRelator>& closure, const PieceTable& table,
    std::size_t element) {
  const std::size_t n = closure.at(element).word.size();
  constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> dp(n + 1, kInf);
  std::vector<std::size_t> step(n + 1, 0);
  dp[0] = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (dp[j] == kInf) continue;
    const std::size_t reach = std::min(table.max_piece(table.shifted(element, j)), n - j);
    for (std::size_t len = 1; len <= reach; ++len) {
      if (dp[j] + 1 < dp[j + len]) {
        dp[j + len] = dp[j] + 1;
        step[j + len] = len;
      }
    }
  }
  if (dp[n] == kInf) return std::nullopt;
  PieceDecomposition d;
  d.element = element;
  for (std::size_t j = n; j > 0; j -= step[j]) d.piece_lengths.push_back(step[j]);
  std::reverse(d.piece_lengths.begin(), d.piece_lengths.end());
  return d;
}

SmallCancellationResult check_small_cancellation(const Presentation& p, std::size_t cp,
                                                 std::size_t tq) {
  if (cp < 2 || tq < 3) throw Error(ErrorCode::InvalidArgument, "need p >= 2 and q >= 3");
  const auto closure = symmetrized_closure(p);
  const PieceTable table(closure);
  SmallCancellationResult result;
  result.p = cp;
  result.q = tq;
  for (std::size_t e = 0; e < closure.size(); ++e) {
    auto d = min_piece_decomposition(closure, table, e);
    if (d && d->piece_lengths.size() < cp &&
        (!result.cp_witness || d->piece_lengths.size() < result.cp_witness->piece_lengths.size())) {
      result.cp = false;
      result.cp_witness = std::move(d);
    }
  }
  const auto g = build_whitehead(p);
  for (std::size_t len = 3; len < tq; ++len) {
    if (auto walk = reduced_cycle_of_length(g, len)) {
      result.tq = false;
      result.tq_witness = std::move(walk);
      break;
    }
  }
  return result;
}

const char* to_string(SmallCancellationCase c) {
  return c == SmallCancellationCase::C4T4 ? "C(4)T(4)" : "C(6)T(3)";
}

WeightAssignment small_cancellation_weights(const Presentation& p, SmallCancellationCase c) {
  const auto g = build_whitehead(p);
  const auto on_two_cycle = edges_on_two_cycles(g);
  const Rational base = c == SmallCancellationCase::C4T4 ? Rational(1, 2) : Rational(2, 3);
  WeightAssignment w;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    w.weights.push_back(on_two_cycle[e] ? Rational(1) : base);
  }
  return w;
}

S44Result certify_s44(const Presentation& p, const GeneratorSet& s) {
  require_cyclically_reduced(p);
  require_proper(s, p);
  S44Result result;
  result.c4t4 = check_small_cancellation(p, 4, 4);
  result.c6t3 = check_small_cancellation(p, 6, 3);
  const bool c44 = result.c4t4.cp && result.c4t4.tq;
  const bool c63 = result.c6t3.cp && result.c6t3.tq;
  if (!c44 && !c63) {
    result.failed_hypothesis = kHypothesisSmallCancellation;
    result.detail = std::string("C(4)=") + (result.c4t4.cp ? "yes" : "no") +
                    " T(4)=" + (result.c4t4.tq ? "yes" : "no") +
                    " C(6)=" + (result.c6t3.cp ? "yes" : "no");
    return result;
  }
  for (std::size_t r = 0; r < p.relator_count() && !result.adjacent_s_letters; ++r) {
    const auto& w = p.relators()[r];
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (s.contains(w[i].gen) && s.contains(w[(i + 1) % w.size()].gen)) {
        result.adjacent_s_letters = {r, i};
        break;
      }
    }
  }
  if (result.adjacent_s_letters) {
    result.failed_hypothesis = kHypothesisConsecutive;
    result.detail = "relator " + std::to_string(result.adjacent_s_letters->first) +
                    " position " + std::to_string(result.adjacent_s_letters->second);
    return result;
  }
  result.fired = c44 ? SmallCancellationCase::C4T4 : SmallCancellationCase::C6T3;
  auto cert = verify_weight_test(p, s, small_cancellation_weights(p, *result.fired));
  result.weights = cert;
  if (!cert.valid()) {
    result.failed_hypothesis = kHypothesisWeightCrossCheck;
    result.detail = "constructed weights failed the weight test";
    result.fired.reset();
    return result;
  }
  result.certified = true;
  result.detail = std::string(to_string(*result.fired)) + " with T(q) read on the star graph";
  return result;
}

}  // namespace ddr
