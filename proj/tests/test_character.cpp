#include <gtest/gtest.h>

#include <random>

#include "pgl/character.hpp"
#include "pgl/sfunction.hpp"
#include "pgl/spec_io.hpp"

using namespace pgl;

TEST(SFunction, TableValuesAndLimits) {
  const auto f = SFunction::table({{1, 2, 2, 5}, {3}});
  EXPECT_EQ(f.value(0, 0), 1u);
  EXPECT_EQ(f.value(0, 2), 2u);
  EXPECT_EQ(f.value(0, 100), 5u);
  EXPECT_EQ(f.limit(0), 5u);
  EXPECT_EQ(f.settle_stage(0), 3u);
  EXPECT_EQ(f.settle_stage(1), 0u);
  EXPECT_EQ(f.row_count(), 2u);
  EXPECT_FALSE(f.is_s1());
  EXPECT_EQ(sfunction_limits(f, 5), (std::vector<std::uint32_t>{5, 3}));
}

TEST(SFunction, RejectsBadRows) {
  EXPECT_THROW(SFunction::table({{1, 0}}), std::invalid_argument);
  EXPECT_THROW(SFunction::table({{1}, {}}), std::invalid_argument);
}

TEST(SFunction, Staircase) {
  const auto f = SFunction::staircase(1);
  EXPECT_FALSE(f.row_count());
  EXPECT_EQ(f.value(3, 2), 2u);
  EXPECT_EQ(f.value(3, 10), 4u);
  EXPECT_EQ(f.limit(3), 4u);
  EXPECT_TRUE(f.is_s1());
  EXPECT_EQ(sfunction_limits(f, 3), (std::vector<std::uint32_t>{1, 2, 3}));
}

TEST(SFunction, RowsNondecreasingAndReachLimit) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::vector<std::uint32_t>> rows(1 + rng() % 4);
    for (auto& r : rows) {
      std::uint32_t v = 1 + rng() % 3;
      for (std::size_t k = 1 + rng() % 5; k > 0; --k) r.push_back(v += rng() % 2);
    }
    const auto f = SFunction::table(rows);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (std::uint64_t s = 0; s < 10; ++s) EXPECT_LE(f.value(i, s), f.value(i, s + 1));
      EXPECT_EQ(f.value(i, f.settle_stage(i)), f.limit(i));
    }
  }
}

TEST(Character, FromEntriesAndQueries) {
  const auto c = Character::from_entries({{1, 1}, {1, 2}, {3, 1}});
  EXPECT_EQ(c.multiplicity(1), 2u);
  EXPECT_EQ(c.multiplicity(2), 0u);
  EXPECT_TRUE(c.contains(3, 1));
  EXPECT_FALSE(c.contains(3, 2));
  EXPECT_TRUE(c.bounded());
  EXPECT_EQ(c.max_exponent(), 3u);
  EXPECT_TRUE(c.finite_total());
}

TEST(Character, RejectsGapsAndZeros) {
  EXPECT_THROW(Character::from_entries({{1, 2}}), std::invalid_argument);
  EXPECT_THROW(Character::from_entries({{0, 1}}), std::invalid_argument);
  EXPECT_THROW(Character::from_entries({{1, 0}}), std::invalid_argument);
}

TEST(Character, InfiniteAndUnbounded) {
  Character c;
  c.infinite = {2};
  EXPECT_EQ(c.multiplicity(2), kOmega);
  EXPECT_TRUE(c.bounded());
  EXPECT_FALSE(c.finite_total());
  EXPECT_TRUE(c.contains(2, 1000000));

  Character u;
  u.sfunction = SFunction::staircase(1);
  EXPECT_FALSE(u.bounded());
  EXPECT_FALSE(u.max_exponent());
  EXPECT_EQ(u.multiplicity(4), 1u);
  EXPECT_TRUE(Character{}.empty());
  EXPECT_EQ(Character{}.max_exponent(), 0u);
}

TEST(Character, SameEntriesAcrossDescriptors) {
  Character a;
  a.finite = {{2, 1}, {3, 1}};
  Character b;
  b.sfunction = SFunction::table({{1, 3}, {2}});
  EXPECT_TRUE(same_entries(a, b));
  b.finite[3] = 1;
  EXPECT_FALSE(same_entries(a, b));
}

TEST(SpecIo, ParsesAllKeys) {
  const auto t = parse_spec(
      "# sample\n"
      "p: 3\n"
      "divisible_rank: omega\n"
      "cyclic: 1:2, 2:1\n"
      "cyclic_infinite: 4\n"
      "inf_mode: sigma1\n");
  EXPECT_EQ(t.p, 3u);
  EXPECT_EQ(t.divisible_rank, Rank::infinite());
  EXPECT_EQ(t.character.multiplicity(1), 2u);
  EXPECT_EQ(t.character.multiplicity(4), kOmega);
  EXPECT_EQ(t.inf_mode, InfMode::sigma1);
}

TEST(SpecIo, SfunctionRows) {
  const auto t = parse_spec("p: 2\nsfunction: 0:1,2\nsfunction: 1:3\n");
  ASSERT_TRUE(t.character.sfunction);
  EXPECT_EQ(t.character.sfunction->limit(0), 2u);
  EXPECT_EQ(t.character.sfunction->limit(1), 3u);
  const auto s = parse_spec("p: 2\nsfunction_staircase: 2\n");
  EXPECT_EQ(s.character.sfunction->limit(0), 2u);
}

TEST(SpecIo, RoundTrip) {
  for (const char* text : {"p: 2\ncyclic: 1:1,2:1\ndivisible_rank: 1\n", "p: 5\ncyclic_infinite: 1,3\n",
                           "p: 2\nsfunction: 0:1,1,4\nsfunction: 1:2\ninf_mode: sigma1\n",
                           "p: 3\ncharacter: 1:1,1:2,2:1\n", "p: 2\nsfunction_staircase: 0\ndivisible_rank: omega\n"}) {
    const auto printed = print_spec(parse_spec(text));
    EXPECT_EQ(print_spec(parse_spec(printed)), printed) << text;
  }
}

TEST(SpecIo, RejectionsCarryLineNumbers) {
  auto line_of = [](const std::string& text) -> std::size_t {
    try {
      parse_spec(text);
    } catch (const SpecError& e) {
      return e.line();
    }
    return 0;
  };
  EXPECT_EQ(line_of("divisible_rank: 1\n"), 0u);  // missing p: no single line to blame
  EXPECT_EQ(line_of("p: 4\n"), 1u);
  EXPECT_EQ(line_of("p: 2\nbogus: 1\n"), 2u);
  EXPECT_EQ(line_of("p: 2\np: 3\n"), 2u);
  EXPECT_EQ(line_of("p: 2\ncharacter: 1:2\n"), 2u);
  EXPECT_EQ(line_of("p: 2\nsfunction: 1:2\n"), 2u);
  EXPECT_EQ(line_of("p: 2\nsfunction: 0:3,2\n"), 2u);
  EXPECT_EQ(line_of("p: 2\ncyclic: 0:1\n"), 2u);
  EXPECT_EQ(line_of("p: 2\ninf_mode: maybe\n"), 2u);
  EXPECT_THROW(parse_spec_file("/nonexistent/spec"), SpecError);
}
