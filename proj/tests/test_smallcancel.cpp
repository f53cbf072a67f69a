#include <catch_amalgamated.hpp>

#include <random>

#include "ddr/smallcancel.hpp"
#include "ddr/whitehead.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace ddr;

namespace {

std::size_t common_prefix(const Word& u, const Word& v) {
  std::size_t k = 0;
  while (k < u.size() && k < v.size() && u[k] == v[k]) ++k;
  return k;
}

std::size_t common_suffix(const Word& u, const Word& v) {
  std::size_t k = 0;
  while (k < u.size() && k < v.size() && u[u.size() - 1 - k] == v[v.size() - 1 - k]) ++k;
  return k;
}

bool same_occurrence(const SymmetrizedRelator& x, const SymmetrizedRelator& y) {
  return x.source == y.source && x.inverted == y.inverted && x.rotation == y.rotation;
}

Presentation fxl1() { return lot_presentation(testing::lot_fixture("fxl1.lot")); }

GeneratorSet names(const Presentation& p, std::initializer_list<const char*> xs) {
  GeneratorSet s;
  for (auto x : xs) s.insert(p.index_of(x));
  return s;
}

bool adjacent_in(const Presentation& p, const GeneratorSet& s) {
  for (const auto& r : p.relators()) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (s.contains(r[i].gen) && s.contains(r[(i + 1) % r.size()].gen)) return true;
    }
  }
  return false;
}

}  // namespace

TEST_CASE("symmetrized closure sizes and provenance", "[smallcancel]") {
  CHECK(symmetrized_closure(parse_presentation("gens: a\nrel: a a")).size() == 4);
  CHECK(symmetrized_closure(testing::fixture("fx4.pres")).size() == 8);
  CHECK(symmetrized_closure(testing::fixture("fx3.pres")).size() == 32);

  const auto p = testing::fixture("fx1.pres");
  for (const auto& e : symmetrized_closure(p)) {
    const Word base = e.inverted ? inverse(p.relators()[e.source]) : p.relators()[e.source];
    CHECK(e.word == rotate(base, e.rotation));
    CHECK(is_cyclically_reduced(e.word));
  }
  CHECK_THROWS_AS(symmetrized_closure(parse_presentation("gens: a b\nrel: a b a^-1")), Error);
}

TEST_CASE("small cancellation examples", "[smallcancel]") {
  const auto l = check_small_cancellation(fxl1(), 4, 4);
  CHECK(l.cp);
  CHECK(l.tq);

  const auto fx3 = check_small_cancellation(testing::fixture("fx3.pres"), 4, 4);
  CHECK(fx3.cp);
  CHECK(fx3.tq);

  const auto fx4 = check_small_cancellation(testing::fixture("fx4.pres"), 6, 3);
  CHECK_FALSE(fx4.cp);
  REQUIRE(fx4.cp_witness);
  CHECK(fx4.cp_witness->piece_lengths.size() == 4);

  CHECK_THROWS_AS(check_small_cancellation(fxl1(), 1, 4), Error);
  CHECK_THROWS_AS(check_small_cancellation(fxl1(), 4, 2), Error);
}

TEST_CASE("certify_s44 examples", "[smallcancel]") {
  const auto p = fxl1();
  const auto ok = certify_s44(p, names(p, {"x1", "x2", "x5"}));
  CHECK(ok.certified);
  REQUIRE(ok.fired);
  REQUIRE(ok.weights);
  CHECK(ok.weights->valid());

  const auto s13 = names(p, {"x1", "x3"});
  const auto r = certify_s44(p, s13);
  CHECK(r.certified == !adjacent_in(p, s13));
  if (!r.certified) {
    CHECK(r.failed_hypothesis == kHypothesisConsecutive);
    CHECK(r.adjacent_s_letters.has_value());
  }

  const auto fx3 = testing::fixture("fx3.pres");
  CHECK(certify_s44(fx3, {0, 1}).certified);
  const auto fx1 = certify_s44(testing::fixture("fx1.pres"), {0, 1});
  CHECK_FALSE(fx1.certified);
  CHECK(fx1.failed_hypothesis == kHypothesisSmallCancellation);
}

TEST_CASE("piece table and decompositions match brute force", "[smallcancel][oracle]") {
  std::mt19937 rng(41);
  for (int trial = 0; trial < 300; ++trial) {
    const auto p = testing::random_presentation(rng, 3, 2, 8);
    const auto closure = symmetrized_closure(p);
    const PieceTable table(closure);
    for (std::size_t e = 0; e < closure.size(); ++e) {
      std::size_t lcp = 0;
      for (std::size_t f = 0; f < closure.size(); ++f) {
        if (f != e) lcp = std::max(lcp, common_prefix(closure[e].word, closure[f].word));
      }
      REQUIRE(table.max_piece(e) == std::min(lcp, closure[e].word.size()));

      const auto dp = min_piece_decomposition(closure, table, e);
      const auto brute = oracle::min_pieces(closure, closure[e].word);
      REQUIRE(dp.has_value() == brute.has_value());
      if (dp) {
        CHECK(dp->piece_lengths.size() == *brute);
        std::size_t total = 0;
        for (auto len : dp->piece_lengths) total += len;
        CHECK(total == closure[e].word.size());
      }

      // Inverting and reversing turns common prefixes into common suffixes.
      const Word inv = inverse(closure[e].word);
      auto f = std::find_if(closure.begin(), closure.end(), [&](const SymmetrizedRelator& x) {
        return x.source == closure[e].source && x.inverted != closure[e].inverted && x.word == inv;
      });
      REQUIRE(f != closure.end());
      std::size_t lcs = 0;
      for (const auto& g : closure) {
        if (!same_occurrence(g, *f)) lcs = std::max(lcs, common_suffix(f->word, g.word));
      }
      CHECK(table.max_piece(e) == std::min(lcs, inv.size()));
    }
  }
}

TEST_CASE("T(q) matches brute-force short cycle search", "[smallcancel][oracle]") {
  std::mt19937 rng(42);
  for (int trial = 0; trial < 500; ++trial) {
    const auto p = testing::random_presentation(rng, 3, 2, 3);
    const auto g = build_whitehead(p);
    if (g.dart_count() > 12) continue;
    for (std::size_t q = 3; q <= 6; ++q) {
      bool short_cycle = false;
      for (std::size_t len = 3; len < q; ++len) short_cycle = short_cycle || oracle::closed_walk_of_length(g, len);
      CHECK(check_small_cancellation(p, 2, q).tq == !short_cycle);
    }
  }
}

TEST_CASE("certified small cancellation weights pass the weight test", "[smallcancel][property]") {
  std::mt19937 rng(43);
  int certified = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const auto p = testing::random_presentation(rng, 5, 2, 8);
    GeneratorSet s;
    for (int g = 0; g + 1 < static_cast<int>(p.generator_count()); ++g) {
      if (testing::uniform(rng, 0, 2) == 0) s.insert(g);
    }
    const auto r = certify_s44(p, s);
    if (!r.certified) continue;
    ++certified;
    REQUIRE(r.weights);
    const auto c = r.fired == SmallCancellationCase::C4T4 ? SmallCancellationCase::C4T4 : SmallCancellationCase::C6T3;
    CHECK(verify_weight_test(p, s, small_cancellation_weights(p, c)).valid());
    CHECK_FALSE(adjacent_in(p, s));
  }
  CHECK(certified > 0);
}
