#include <gtest/gtest.h>

#include "pgl/kernels.hpp"

using namespace pgl;

namespace {

std::vector<FiniteGroupSpec> samples() {
  return {FiniteGroupSpec::make(2, {1}),       FiniteGroupSpec::make(2, {3, 1, 1}),
          FiniteGroupSpec::make(3, {2, 1}),    FiniteGroupSpec::make(5, {2}),
          FiniteGroupSpec::make(2, {4, 2, 2, 1}), FiniteGroupSpec::make(2, {})};
}

std::vector<std::vector<std::uint32_t>> perms_of(const FiniteGroup& g) {
  std::vector<std::vector<std::uint32_t>> out;
  for (const auto& a : elementary_automorphisms(g.spec())) out.push_back(as_permutation(a, g));
  return out;
}

}  // namespace

TEST(Kernels, ElementTableSerialMatchesParallel) {
  for (const auto& s : samples()) {
    const FiniteGroup g(s);
    const auto a = kernels::serial::element_table(g);
    const auto b = kernels::parallel::element_table(g);
    EXPECT_EQ(a.order, b.order);
    EXPECT_EQ(a.height, b.height);
    for (std::uint64_t x = 0; x < g.order(); ++x) EXPECT_EQ(a.order[x], g.order_exponent(x));
  }
}

TEST(Kernels, SocleCountsSerialMatchesParallel) {
  for (const auto& s : samples()) {
    const FiniteGroup g(s);
    EXPECT_EQ(kernels::serial::socle_power_counts(g), kernels::parallel::socle_power_counts(g));
  }
}

TEST(Kernels, SocleCountsExample) {
  // Z(8)+Z(2): socle has 4 elements, p G meets it in 2, p^2 G in 2, p^3 G in 1.
  const FiniteGroup g(FiniteGroupSpec::make(2, {3, 1}));
  EXPECT_EQ(kernels::serial::socle_power_counts(g), (kernels::SocleCounts{4, 2, 2, 1}));
}

TEST(Kernels, TupleOrbitsSerialMatchesParallel) {
  for (const auto& s : samples()) {
    const FiniteGroup g(s);
    const auto perms = perms_of(g);
    for (unsigned k = 1; k <= 2; ++k)
      EXPECT_EQ(kernels::serial::tuple_orbits(g, perms, k), kernels::parallel::tuple_orbits(g, perms, k));
  }
}

TEST(Kernels, OrbitLabelsAreLeastMembers) {
  const FiniteGroup g(FiniteGroupSpec::make(2, {2, 1}));
  const auto labels = kernels::automorphism_orbits(g, 2);
  for (std::size_t t = 0; t < labels.size(); ++t) {
    EXPECT_LE(labels[t], t);
    EXPECT_EQ(labels[labels[t]], labels[t]);
  }
  // Single elements of Z(4)+Z(2): {0}, {2}, {1,3,5,7}... by order and height.
  const auto single = kernels::automorphism_orbits(g, 1);
  std::set<std::uint32_t> distinct(single.begin(), single.end());
  EXPECT_EQ(distinct.size(), 4u);
}

TEST(Kernels, TupleSpaceCap) {
  const FiniteGroup g(FiniteGroupSpec::make(2, {15}));
  EXPECT_THROW(kernels::automorphism_orbits(g, 2), std::length_error);
}
