#include <gtest/gtest.h>

#include <random>

#include "pgl/invariants.hpp"
#include "pgl/scott.hpp"
#include "pgl/spec_io.hpp"
#include "pgl/testing/decoder.hpp"

using namespace pgl;

namespace {

ElementId random_id(std::mt19937_64& rng, const StagedPresentation& g, std::uint64_t s) {
  std::vector<ElementId::Term> terms;
  for (std::uint32_t pos = 0; pos < g.positions(s); ++pos)
    if (rng() % 3 == 0) terms.emplace_back(pos, 1 + rng() % (g.p() - 1));
  return ElementId::from_terms(std::move(terms));
}

ElementId component_element(const StagedPresentation& g, std::uint32_t comp, std::uint32_t level) {
  const pgl::testing::Decoder dec(g);
  pgl::testing::Rational r(1);
  for (std::uint32_t i = 0; i < level; ++i) r /= g.p();
  return dec.encode({{comp, r}});
}

std::uint32_t find_component(const StagedPresentation& g, bool divisible, std::uint64_t target = 0) {
  const pgl::testing::Decoder dec(g);
  for (std::uint32_t c = 0; c < dec.component_count(g.stage()); ++c)
    if (dec.divisible_component(c) == divisible && (divisible || dec.target(c) == target)) return c;
  throw std::logic_error("no such component");
}

const Pi1Formula parse2(const char* text) { return Pi1Formula::parse(text, 2); }

}  // namespace

TEST(ScottShape, ByType) {
  EXPECT_EQ(formula_shape_for(parse_spec("p: 2\ncyclic_infinite: 2\n")).first, FormulaShape::orders_and_relations);
  const auto rank1 = formula_shape_for(parse_spec("p: 2\ndivisible_rank: 1\ncyclic_infinite: 2\n"));
  EXPECT_EQ(rank1.first, FormulaShape::orders_relations_divisibility);
  const auto finp = formula_shape_for(parse_spec("p: 2\ndivisible_rank: omega\ncyclic_infinite: 1,3\n"));
  EXPECT_EQ(finp.first, FormulaShape::orders_relations_divisibility);
  EXPECT_EQ(finp.second, 3u);
  EXPECT_EQ(formula_shape_for(parse_spec("p: 2\nsfunction_staircase: 1\n")).first, FormulaShape::pure_diagram);
  EXPECT_THROW(formula_shape_for(parse_spec("p: 2\ndivisible_rank: 1\nsfunction_staircase: 1\n")),
               std::invalid_argument);
}

TEST(ScottFormula, ZeroTupleForcesZero) {
  std::mt19937_64 rng(31);
  const auto t = parse_spec("p: 2\ndivisible_rank: 1\ncyclic_infinite: 2\n");
  auto g = build_from_iso_type(t);
  g.advance_to(200);
  const std::vector<ElementId> zero{ElementId{}};
  const auto phi = generate_scott_formula(t, g, zero, 200);
  EXPECT_EQ(phi.orders, (std::vector<std::uint32_t>{0}));
  EXPECT_EQ(satisfies(g, zero, phi, 200).value, Verdict::yes);
  for (int trial = 0; trial < 30; ++trial) {
    const std::vector<ElementId> x{random_id(rng, g, 10)};
    if (!x[0].is_zero()) EXPECT_NE(satisfies(g, x, phi, 200).value, Verdict::yes);
  }
}

TEST(ScottFormula, HeightZeroOrderPElementIsNotDivisible) {
  const auto t = parse_spec("p: 2\ndivisible_rank: 1\ncyclic_infinite: 2\n");
  auto g = build_from_iso_type(t);
  g.advance_to(400);
  const std::vector<ElementId> low{component_element(g, find_component(g, false, 2), 1)};
  const auto phi = generate_scott_formula(t, g, low, 400);
  EXPECT_EQ(phi.orders, (std::vector<std::uint32_t>{1}));
  EXPECT_EQ(phi.grid, "z0");  // nonzero, height 0 modulo D
  const std::vector<ElementId> div{component_element(g, find_component(g, true), 1)};
  const auto psi = generate_scott_formula(t, g, div, 400);
  EXPECT_EQ(psi.grid, "zd");
  EXPECT_NE(satisfies(g, low, psi, 400).value, Verdict::yes);
}

TEST(ScottFormula, OrderMismatchFails) {
  const auto t = parse_spec("p: 2\ncyclic_infinite: 1,2\n");
  auto g = build_from_iso_type(t);
  g.advance_to(100);
  const std::vector<ElementId> a{component_element(g, find_component(g, false, 1), 1)};
  const std::vector<ElementId> b{component_element(g, find_component(g, false, 2), 2)};
  EXPECT_NE(satisfies(g, b, generate_scott_formula(t, g, a, 100), 100).value, Verdict::yes);
}

TEST(ScottFormula, ReducedDiagramOfCyclicGenerator) {
  const auto t = parse_spec("p: 2\nsfunction_staircase: 1\n");
  auto g = build_from_iso_type(t);
  g.advance_to(200);
  const auto gen = component_element(g, find_component(g, false, 2), 2);
  const std::vector<ElementId> tuple{gen, g.scale(2, gen)};
  const auto phi = generate_scott_formula(t, g, tuple, 200);
  EXPECT_EQ(phi.shape, FormulaShape::pure_diagram);
  EXPECT_EQ(phi.f_exponents, (std::vector<std::uint32_t>{2}));
  EXPECT_EQ(satisfies(g, tuple, phi, 200).value, Verdict::yes);
}

TEST(ScottFormula, SelfSatisfaction) {
  std::mt19937_64 rng(32);
  for (const char* text : {"p: 2\ndivisible_rank: 1\ncyclic_infinite: 2\ncyclic: 3:1\n",
                           "p: 3\ncyclic_infinite: 1\ncyclic: 2:2\n", "p: 2\nsfunction: 0:1,2\nsfunction: 1:3\n",
                           "p: 2\ndivisible_rank: omega\ncyclic_infinite: 1,2\n"}) {
    const auto t = parse_spec(text);
    auto g = build_from_iso_type(t, 2);
    g.advance_to(300);
    for (int trial = 0; trial < 20; ++trial) {
      const std::vector<ElementId> tuple{random_id(rng, g, 8), random_id(rng, g, 8)};
      const auto phi = generate_scott_formula(t, g, tuple, 300);
      EXPECT_EQ(satisfies(g, tuple, phi, 300).value, Verdict::yes) << text;
      EXPECT_EQ(phi.serialize(), generate_scott_formula(t, g, tuple, 300).serialize());
    }
  }
}

TEST(ScottFormula, ArityMismatchThrows) {
  const auto t = parse_spec("p: 2\ncyclic_infinite: 1\n");
  auto g = build_from_iso_type(t);
  g.advance_to(20);
  const std::vector<ElementId> one{ElementId{}}, two{ElementId{}, ElementId{}};
  EXPECT_THROW(satisfies(g, two, generate_scott_formula(t, g, one, 20), 20), std::invalid_argument);
}

TEST(Truncation, PolicyEnforced) {
  const auto t = parse_spec("p: 2\ndivisible_rank: 1\ncyclic_infinite: 2\n");
  EXPECT_NO_THROW(make_truncation(t, FiniteGroupSpec::make(2, {5, 2, 2})));
  EXPECT_THROW(make_truncation(t, FiniteGroupSpec::make(2, {4, 2, 2})), std::invalid_argument);
  EXPECT_THROW(make_truncation(t, FiniteGroupSpec::make(2, {5, 3, 2})), std::invalid_argument);
  EXPECT_THROW(make_truncation(t, FiniteGroupSpec::make(2, {5, 5, 2})), std::invalid_argument);
  const auto spec = policy_truncation(t, 1024);
  EXPECT_LE(spec.order(), 1024u);
  EXPECT_NO_THROW(make_truncation(t, spec));
}

TEST(VerifyScott, Examples) {
  const auto d = parse_spec("p: 2\ndivisible_rank: omega\n");
  const auto r1 = verify_scott_family(d, FiniteGroupSpec::make(2, {4, 4, 4}), 1);
  EXPECT_TRUE(r1.violations.empty());
  EXPECT_EQ(r1.tuples, 4096u);
  EXPECT_EQ(verify_scott_family(d, FiniteGroupSpec::make(2, {4, 4, 4}), 0).violations.size(), 0u);

  const auto h = parse_spec("p: 2\ndivisible_rank: 1\ncyclic_infinite: 2\n");
  const auto r2 = verify_scott_family(h, FiniteGroupSpec::make(2, {5, 2, 2, 2}), 2, 500);
  EXPECT_TRUE(r2.violations.empty());
  EXPECT_GT(r2.formula_classes, 1u);
}

TEST(VerifyScott, ReducedTruncation) {
  const auto t = parse_spec("p: 2\ncyclic: 3:1,2:1,1:2\n");
  const auto r = verify_scott_family(t, FiniteGroupSpec::make(2, {3, 2, 1, 1}), 2, 200);
  EXPECT_TRUE(r.violations.empty());
  EXPECT_EQ(r.formula_classes, r.orbits);
}

TEST(Pi1, Examples) {
  const auto spec = FiniteGroupSpec::make(2, {2, 1});
  EXPECT_TRUE(pi1_holds_in_all_finite_subgroups(spec, parse2("forall x: x + 0 = x"), {}));
  EXPECT_FALSE(pi1_holds_in_all_finite_subgroups(spec, parse2("forall x: p*x != g"), {{"g", {2, 0}}}));
  EXPECT_TRUE(pi1_holds_in_all_finite_subgroups(spec, parse2("forall x: p^2*x != g"), {{"g", {2, 0}}}));
}

TEST(Pi1, ParseErrors) {
  EXPECT_THROW(parse2("forall x: x +"), std::invalid_argument);
  EXPECT_THROW(parse2("x = x"), std::invalid_argument);
  EXPECT_THROW(parse2("forall x: x = 1"), std::invalid_argument);
  EXPECT_THROW(parse2("forall x: (x = 0"), std::invalid_argument);
  EXPECT_NO_THROW(parse2("forall x, y: not (x = y) or 3*x - y != 0 and x = x"));
}

TEST(Pi1, UnboundParameterThrows) {
  EXPECT_THROW(pi1_check(FiniteGroupSpec::make(2, {1}), parse2("forall x: x != g"), {}), std::invalid_argument);
}

TEST(Pi1, DownwardPersistenceRoutesAgree) {
  std::mt19937_64 rng(33);
  const char* formulas[] = {"forall x: p*x != g", "forall x, y: p*x + p*y != g or x = y",
                            "forall x: x = 0 or p*x != 0 or x = g", "forall x: not (p^2*x = 0 and x != 0) or p*x = g"};
  for (const auto& spec : {FiniteGroupSpec::make(2, {2, 1}), FiniteGroupSpec::make(2, {3, 1}),
                           FiniteGroupSpec::make(2, {2, 2})}) {
    const FiniteGroup group(spec);
    for (const char* text : formulas)
      for (int trial = 0; trial < 4; ++trial) {
        const auto r = pi1_check(spec, parse2(text), {{"g", group.element(rng() % group.order())}});
        ASSERT_TRUE(r.all_subgroups);
        EXPECT_EQ(r.full_group, *r.all_subgroups);
        EXPECT_GT(r.subgroups_checked, 0u);
      }
  }
}

TEST(HeightLaw, HomogeneousTruncations) {
  // order <= p^k iff divisible by p^{m-k}
  for (std::uint32_t m = 1; m <= 3; ++m) {
    const auto spec = FiniteGroupSpec::make(2, std::vector<std::uint32_t>(6 / m, m));
    const FiniteGroup g(spec);
    for (std::uint64_t x = 0; x < g.order(); ++x)
      for (std::uint32_t k = 0; k <= m; ++k) {
        bool divisible = false;
        for (std::uint64_t y = 0; y < g.order() && !divisible; ++y) divisible = g.scale(1u << (m - k), y) == x;
        EXPECT_EQ(g.order_exponent(x) <= k, divisible);
      }
  }
}

TEST(VerifyScott, RelationsAloneCannotSeparateMixedOrders) {
  // In Z(4)+Z(2) the elements 2 and (0,1) have order 2 and no relations in
  // common, yet no automorphism swaps them; the divisibility grid separates them.
  const auto spec = FiniteGroupSpec::make(2, {2, 1});
  const Truncation tr{spec, {false, false}};
  const std::vector<Element> a{{2, 0}}, b{{0, 1}};
  EXPECT_EQ(formula_in_truncation(tr, FormulaShape::orders_and_relations, 0, a),
            formula_in_truncation(tr, FormulaShape::orders_and_relations, 0, b));
  std::vector<std::pair<Element, Element>> pair{{a[0], b[0]}};
  EXPECT_FALSE(extend_to_automorphism(pair, spec));
  EXPECT_NE(formula_in_truncation(tr, FormulaShape::orders_relations_divisibility, 2, a),
            formula_in_truncation(tr, FormulaShape::orders_relations_divisibility, 2, b));
}
