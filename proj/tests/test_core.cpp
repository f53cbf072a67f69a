#include <catch_amalgamated.hpp>

#include <random>

#include "ddr/core.hpp"
#include "support.hpp"

using namespace ddr;

namespace {

Word w(std::string_view text, const Presentation& p) { return parse_word(text, p); }

// Oracle: repeated single-pair cancellation until stable.
Word reduce_slowly(Word x, bool cyclic) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
      if (x[i] == x[i + 1].inverse()) {
        x.erase(x.begin() + static_cast<long>(i), x.begin() + static_cast<long>(i) + 2);
        changed = true;
        break;
      }
    }
    if (!changed && cyclic && x.size() >= 2 && x.front() == x.back().inverse()) {
      x.erase(x.begin());
      x.pop_back();
      changed = true;
    }
  }
  return x;
}

}  // namespace

TEST_CASE("parse transcribes the commutator and FX1", "[core]") {
  const auto fx4 = parse_presentation("gens: a b\nrel: a b a^-1 b^-1");
  REQUIRE(fx4.generators() == std::vector<std::string>{"a", "b"});
  REQUIRE(fx4.relators().size() == 1);
  CHECK(fx4.relators()[0] == Word{{0, 1}, {1, 1}, {0, -1}, {1, -1}});

  const auto fx1 = parse_presentation("gens: a b c\nrel: a b a^-1 b^-2\nrel: b a b^-1 a^-2\nrel: c a b");
  CHECK(fx1 == testing::fixture("fx1.pres"));
  CHECK(fx1.relators()[0] == Word{{0, 1}, {1, 1}, {0, -1}, {1, -1}, {1, -1}});
  CHECK(fx1.relators()[2] == Word{{2, 1}, {0, 1}, {1, 1}});
}

TEST_CASE("exponent shorthand expands", "[core]") {
  const auto p = parse_presentation("gens: a\nrel: a^3");
  CHECK(p.relators()[0] == Word{{0, 1}, {0, 1}, {0, 1}});
}

TEST_CASE("parse errors carry position and code", "[core]") {
  SECTION("undeclared generator") {
    try {
      parse_presentation("gens: a b\nrel: a q");
      FAIL("expected an error");
    } catch (const ParseError& e) {
      CHECK(e.code() == ErrorCode::UndeclaredGenerator);
      CHECK(e.line() == 2);
      CHECK(e.column() == 8);
    }
  }
  SECTION("empty relator") {
    try {
      parse_presentation("gens: a\nrel:");
      FAIL("expected an error");
    } catch (const ParseError& e) {
      CHECK(e.code() == ErrorCode::EmptyRelator);
      CHECK(e.line() == 2);
    }
  }
  SECTION("zero exponent") { CHECK_THROWS_AS(parse_presentation("gens: a\nrel: a^0"), ParseError); }
  SECTION("duplicate generator") {
    try {
      parse_presentation("gens: a a\nrel: a");
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::DuplicateGenerator);
    }
  }
  SECTION("bad name") { CHECK_THROWS_AS(parse_presentation("gens: 1a\nrel: a"), Error); }
  SECTION("missing gens") { CHECK_THROWS_AS(parse_presentation("rel: a"), ParseError); }
}

TEST_CASE("normalize_word examples", "[core]") {
  const auto p = parse_presentation("gens: a b\nrel: a");
  CHECK(normalize_word(w("a a^-1 b", p), ReductionMode::Free) == w("b", p));
  CHECK(normalize_word(w("b a b^-1", p), ReductionMode::Cyclic) == w("a", p));
  CHECK(normalize_word(w("a b a^-1 b^-1", p), ReductionMode::Cyclic) == w("a b a^-1 b^-1", p));
  CHECK(normalize_word({}, ReductionMode::Cyclic).empty());
}

TEST_CASE("word_stats examples", "[core]") {
  const auto fx1 = testing::fixture("fx1.pres");
  const auto comm = word_stats(testing::fixture("fx4.pres").relators()[0]);
  CHECK(comm.total_exponent_sum == 0);
  CHECK_FALSE(comm.proper_power_period.has_value());

  const auto abab = word_stats(w("a b a b", fx1));
  REQUIRE(abab.proper_power_period.has_value());
  CHECK(*abab.proper_power_period == 2);

  const auto cab = word_stats(fx1.relators()[2]);
  CHECK(cab.total_exponent_sum == 3);
  CHECK(cab.support == GeneratorSet{0, 1, 2});

  CHECK(*word_stats(w("a a a", fx1)).proper_power_period == 1);
  CHECK_FALSE(word_stats(w("a a b", fx1)).proper_power_period.has_value());
}

TEST_CASE("subpresentation examples", "[core]") {
  const auto fx1 = testing::fixture("fx1.pres");
  const auto p0 = subpresentation(fx1, {0, 1});
  CHECK(p0.generators() == std::vector<std::string>{"a", "b"});
  REQUIRE(p0.relator_count() == 2);
  CHECK(format_word(p0.relators()[0], p0) == "a b a^-1 b^-1 b^-1");
  CHECK(format_word(p0.relators()[1], p0) == "b a b^-1 a^-1 a^-1");

  const auto empty = subpresentation(fx1, {});
  CHECK(empty.generator_count() == 0);
  CHECK(empty.relator_count() == 0);

  const auto fx3 = testing::fixture("fx3.pres");
  const auto x = subpresentation(fx3, {0, 1});
  CHECK(x.generators() == std::vector<std::string>{"x1", "x2"});
  CHECK(x.relator_count() == 0);

  CHECK_THROWS_AS(subpresentation(fx1, {7}), Error);
}

TEST_CASE("free_edge_generators examples", "[core]") {
  CHECK(free_edge_generators(testing::fixture("fx1.pres")) == GeneratorSet{2});
  CHECK(free_edge_generators(testing::fixture("fx4.pres")).empty());
  CHECK(free_edge_generators(parse_presentation("gens: a b\nrel: a")) == GeneratorSet{0});
}

TEST_CASE("inflate_relative examples", "[core]") {
  const Letter a{0, 1}, b{1, 1};
  SECTION("trivial base gives the commutator") {
    RelativePresentationData d{Presentation(), {"a", "b"}, {{{a, {}}, {b, {}}, {a.inverse(), {}}, {b.inverse(), {}}}}};
    CHECK(inflate_relative(d) == testing::fixture("fx4.pres"));
  }
  SECTION("free base of rank one") {
    const Presentation base({"t"}, {});
    const Letter t{0, 1};
    RelativePresentationData d{base, {"a", "b"}, {{{a, {t}}, {b, {t}}, {a.inverse(), {t}}, {b.inverse(), {t.inverse(), t.inverse(), t.inverse()}}}}};
    const auto p = inflate_relative(d);
    CHECK(p.generators() == std::vector<std::string>{"t", "a", "b"});
    CHECK(format_word(p.relators()[0], p) == "a t b t a^-1 t b^-1 t^-1 t^-1 t^-1");
  }
  SECTION("base with a relator") {
    const auto base = parse_presentation("gens: x\nrel: x^2");
    const Letter x{0, 1}, y{0, 1};
    RelativePresentationData d{base, {"y"}, {{{y, {x}}, {y.inverse(), {x}}}}};
    const auto p = inflate_relative(d);
    CHECK(serialize(p) == "gens: x y\nrel: x x\nrel: y x y^-1 x\n");
  }
  SECTION("name collision") {
    const auto base = parse_presentation("gens: a\nrel: a^2");
    RelativePresentationData d{base, {"a"}, {{{a, {}}}}};
    try {
      inflate_relative(d);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NameCollision);
    }
  }
}

TEST_CASE("normalize_word agrees with slow cancellation and is idempotent", "[core][property]") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = testing::uniform(rng, 1, 3);
    Word x;
    const int len = testing::uniform(rng, 0, 12);
    for (int i = 0; i < len; ++i) x.push_back({testing::uniform(rng, 0, n - 1), testing::uniform(rng, 0, 1) ? 1 : -1});
    for (auto mode : {ReductionMode::Free, ReductionMode::Cyclic}) {
      const auto once = normalize_word(x, mode);
      CHECK(normalize_word(once, mode) == once);
      CHECK(once == reduce_slowly(x, mode == ReductionMode::Cyclic));
    }
  }
}

TEST_CASE("presentation invariants on random inputs", "[core][property]") {
  std::mt19937 rng(12);
  for (int trial = 0; trial < 300; ++trial) {
    const auto p = testing::random_presentation(rng, 4, 4, 9);
    CHECK(parse_presentation(serialize(p)) == p);
    CHECK(subpresentation(p, all_generators(p)) == p);
    for (const auto& r : p.relators()) {
      const auto st = word_stats(r);
      CHECK(st.support.size() <= r.size());
      int total = 0;
      for (auto [g, c] : st.occurrences) total += c;
      CHECK(total == static_cast<int>(r.size()));
      // Oracle for the period: smallest d dividing |r| with r = rotate(r, d).
      std::optional<std::size_t> period;
      for (std::size_t d = 1; d < r.size() && !period; ++d) {
        if (r.size() % d == 0 && rotate(r, d) == r) period = d;
      }
      CHECK(st.proper_power_period == period);
    }
  }
}

TEST_CASE("inflation restricted to the base recovers the base", "[core][property]") {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const int nb = testing::uniform(rng, 1, 3);
    std::vector<Word> base_rels;
    for (int i = testing::uniform(rng, 0, 2); i > 0; --i) base_rels.push_back(testing::random_word(rng, nb, testing::uniform(rng, 1, 5), false));
    const Presentation base(testing::generator_names(nb), base_rels);
    const int nn = testing::uniform(rng, 1, 2);
    std::vector<std::string> fresh;
    for (int i = 0; i < nn; ++i) fresh.push_back("n" + std::to_string(i));
    std::vector<std::vector<TemplateSegment>> templates;
    for (int t = testing::uniform(rng, 1, 2); t > 0; --t) {
      std::vector<TemplateSegment> segs;
      for (int k = testing::uniform(rng, 1, 3); k > 0; --k) {
        segs.push_back({{testing::uniform(rng, 0, nn - 1), testing::uniform(rng, 0, 1) ? 1 : -1},
                        testing::random_word(rng, nb, testing::uniform(rng, 0, 3), false)});
      }
      templates.push_back(segs);
    }
    const auto p = inflate_relative({base, fresh, templates});
    GeneratorSet base_gens;
    for (int g = 0; g < nb; ++g) base_gens.insert(g);
    CHECK(subpresentation(p, base_gens) == base);
  }
}

TEST_CASE("generator sets parse and format", "[core]") {
  const auto fx1 = testing::fixture("fx1.pres");
  CHECK(parse_generator_set("a,b", fx1) == GeneratorSet{0, 1});
  CHECK(parse_generator_set("", fx1).empty());
  CHECK(format_generator_set({0, 2}, fx1) == "{a,c}");
  CHECK_THROWS_AS(parse_generator_set("a,z", fx1), Error);
  CHECK(is_proper_subset({0, 1}, fx1));
  CHECK_FALSE(is_proper_subset({0, 1, 2}, fx1));
}
