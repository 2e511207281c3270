#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "pgl/analyzer.hpp"
#include "pgl/presentation.hpp"
#include "pgl/spec_io.hpp"
#include "pgl/testing/decoder.hpp"

using namespace pgl;
using pgl::testing::Decoder;
using pgl::testing::Rational;

namespace {

ElementId random_id(std::mt19937_64& rng, const StagedPresentation& g, std::uint64_t s) {
  const auto n = g.positions(s);
  std::vector<ElementId::Term> terms;
  for (std::uint64_t pos = 0; pos < n; ++pos)
    if (rng() % 3 == 0) terms.emplace_back(static_cast<std::uint32_t>(pos), static_cast<std::uint32_t>(rng() % g.p()));
  return ElementId::from_terms(std::move(terms));
}

std::map<std::uint32_t, Rational> sum_mod1(std::map<std::uint32_t, Rational> a,
                                           const std::map<std::uint32_t, Rational>& b) {
  for (const auto& [c, r] : b) a[c] += r;
  std::map<std::uint32_t, Rational> out;
  for (auto [c, r] : a) {
    if (r >= 1) r -= 1;
    if (r != 0) out[c] = r;
  }
  return out;
}

const char* kSamples[] = {
    "p: 2\ndivisible_rank: 1\ncyclic: 1:1,2:1\n",
    "p: 3\ncyclic: 1:2,2:2\ncyclic_infinite: 1\n",
    "p: 2\ndivisible_rank: 2\ncyclic_infinite: 3\n",
    "p: 5\ncyclic: 2:1\nsfunction: 0:1,3\n",
    "p: 2\nsfunction_staircase: 1\n",
};

}  // namespace

TEST(Presentation, AddMatchesDecodedArithmetic) {
  std::mt19937_64 rng(11);
  for (const char* text : kSamples) {
    for (std::uint64_t seed : {0u, 5u}) {
      auto g = build_from_iso_type(parse_spec(text), seed);
      g.advance_to(80);
      const Decoder dec(g);
      for (int trial = 0; trial < 200; ++trial) {
        const auto s = rng() % 81;
        const auto a = random_id(rng, g, s), b = random_id(rng, g, s);
        const auto sum = g.add(a, b);
        EXPECT_TRUE(g.contains(sum, s));
        EXPECT_EQ(dec.decode(sum), sum_mod1(dec.decode(a), dec.decode(b))) << text;
        EXPECT_TRUE(g.add(a, g.neg(a)).is_zero());
        EXPECT_EQ(dec.encode(dec.decode(a)), a);
      }
    }
  }
}

TEST(Presentation, GroupAxiomsOnRandomElements) {
  std::mt19937_64 rng(12);
  auto g = build_from_iso_type(parse_spec(kSamples[1]), 3);
  g.advance_to(120);
  for (int trial = 0; trial < 300; ++trial) {
    const auto a = random_id(rng, g, 120), b = random_id(rng, g, 120), c = random_id(rng, g, 120);
    EXPECT_EQ(g.add(a, b), g.add(b, a));
    EXPECT_EQ(g.add(g.add(a, b), c), g.add(a, g.add(b, c)));
    EXPECT_EQ(g.add(a, ElementId{}), a);
    EXPECT_EQ(g.scale(3, a), g.add(a, g.add(a, a)));
  }
}

TEST(Presentation, UniverseGrowsByPowersOfP) {
  auto g = build_from_iso_type(parse_spec(kSamples[0]));
  g.advance_to(50);
  for (std::uint64_t s = 0; s < 50; ++s) {
    EXPECT_LE(g.positions(s), g.positions(s + 1));
    EXPECT_LE(g.positions(s + 1), g.positions(s) + 1);
    EXPECT_EQ(g.universe_size(s), ElementId::power(static_cast<std::uint32_t>(g.positions(s))));
  }
  EXPECT_EQ(ElementId::from_u64(5, 2).to_u64(2), 5u);
  EXPECT_THROW(g.add(ElementId::power(100000), ElementId{}), std::out_of_range);
}

TEST(Presentation, SameSeedSameGroup) {
  const auto t = parse_spec(kSamples[1]);
  auto a = build_from_iso_type(t, 4), b = build_from_iso_type(t, 4);
  a.advance_to(300);
  b.advance_to(300);
  for (std::uint64_t s = 0; s <= 300; s += 7) EXPECT_EQ(a.positions(s), b.positions(s));
  auto lengths = [](const StagedPresentation& g, std::uint64_t s) {
    std::vector<std::uint32_t> out;
    const auto v = analyze(g, s);
    for (std::uint32_t k = 0; k < v.chains.size(); ++k) out.push_back(std::min<std::uint32_t>(v.length(k), 2));
    std::sort(out.begin(), out.end());
    return out;
  };
  EXPECT_EQ(lengths(a, 300), lengths(b, 300));
}

TEST(Presentation, AnalyzerChainsMatchDecoderLengths) {
  for (const char* text : kSamples) {
    auto g = build_from_iso_type(parse_spec(text), 2);
    g.advance_to(200);
    const Decoder dec(g);
    for (std::uint64_t s : {0u, 10u, 57u, 200u}) {
      const auto v = analyze(g, s);
      std::vector<std::uint64_t> got, want;
      for (std::uint32_t k = 0; k < v.chains.size(); ++k) got.push_back(v.length(k));
      for (std::uint32_t c = 0; c < dec.component_count(s); ++c) want.push_back(dec.length(c, s));
      std::sort(got.begin(), got.end());
      std::sort(want.begin(), want.end());
      EXPECT_EQ(got, want) << text << " stage " << s;
    }
  }
}

TEST(Presentation, StageViewEmbedLiftRoundTrip) {
  std::mt19937_64 rng(13);
  auto g = build_from_iso_type(parse_spec(kSamples[0]));
  g.advance_to(30);
  const auto view = stage_view(g, 12, 1u << 20);
  const Decoder dec(g);
  std::uint64_t order = 1;
  for (auto e : view.spec.exponents) order <<= e;
  EXPECT_EQ(ElementId::power(static_cast<std::uint32_t>(g.positions(12))), ElementId::from_u64(order, 2));
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = random_id(rng, g, 12), b = random_id(rng, g, 12);
    const auto ea = view.embed(g, a), eb = view.embed(g, b);
    EXPECT_EQ(view.lift(g, ea), a);
    EXPECT_EQ(view.embed(g, g.add(a, b)), add(ea, eb, view.spec));
    EXPECT_EQ(order_exponent(ea, view.spec), dec.order_exponent(a));
  }
  EXPECT_THROW(stage_view(g, 30, 4), std::length_error);
}

TEST(Presentation, DivisibleOracle) {
  std::mt19937_64 rng(14);
  for (const char* text : {kSamples[0], kSamples[2]}) {
    auto g = build_from_iso_type(parse_spec(text), 1);
    g.advance_to(100);
    const Decoder dec(g);
    for (int trial = 0; trial < 200; ++trial) {
      const auto x = random_id(rng, g, 100);
      const auto v = g.divisible_oracle(x, 100);
      EXPECT_EQ(v == Verdict::yes, dec.in_divisible_part(x));
      EXPECT_NE(v, Verdict::unknown);
    }
  }
  auto t = parse_spec(kSamples[0]);
  t.inf_mode = InfMode::sigma1;
  auto g = build_from_iso_type(t);
  g.advance_to(100);
  const Decoder dec(g);
  for (int trial = 0; trial < 200; ++trial) {
    const auto x = random_id(rng, g, 100);
    const auto v = g.divisible_oracle(x, 100);
    EXPECT_NE(v, Verdict::no);
    if (v == Verdict::yes) EXPECT_TRUE(dec.in_divisible_part(x));
  }
}

TEST(Presentation, TransformFollowsClassSizes) {
  Character c;
  c.finite = {{1, 2}, {3, 1}};
  c.infinite = {2};
  auto a = build_equivalence(c, Rank::finite(1), InfMode::computable, 0);
  a.advance_to(150);
  auto g = transform_equiv_to_group(a, 3);
  g.advance_to(150);
  for (std::uint64_t s : {5u, 40u, 150u}) {
    auto sizes = a.class_sizes(s);
    const auto v = analyze(g, s);
    std::vector<std::uint64_t> lengths;
    for (std::uint32_t k = 0; k < v.chains.size(); ++k) lengths.push_back(v.length(k));
    std::sort(sizes.begin(), sizes.end());
    std::sort(lengths.begin(), lengths.end());
    EXPECT_EQ(sizes, lengths);
    EXPECT_EQ(g.positions(s), a.universe_size(s));
  }
}

TEST(Presentation, EquivalenceStructureExample) {
  Character c;
  c.finite = {{2, 1}};
  auto a = build_equivalence(c, Rank::finite(1), InfMode::computable, 0);
  a.advance_to(40);
  EXPECT_EQ(a.representative(0), 0u);
  std::uint64_t in_inf = 0;
  for (std::uint64_t e = 0; e < a.universe_size(40); ++e) {
    EXPECT_EQ(a.equivalent(e, a.representative(e)), true);
    in_inf += a.known_in_infinite_class(e, 40);
  }
  EXPECT_EQ(in_inf, a.universe_size(40) - 2);
}
