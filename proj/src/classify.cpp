#include "pgl/invariants.hpp"

namespace pgl {

Classification classify_categoricity(const IsoTypeSpec& t, bool plain) {
  const auto& ch = t.character;
  if (ch.finite_total()) return {CategoricityLevel::computably_categorical, PlainDelta2::yes, "divisible_plus_finite"};
  if (!t.divisible_rank.omega && ch.bounded() && ch.infinite.size() == 1)
    return {CategoricityLevel::computably_categorical, PlainDelta2::yes, "homogeneous_plus_finite"};
  if (ch.bounded()) return {CategoricityLevel::delta2_relatively, PlainDelta2::yes, "finite_period"};
  if (t.divisible_rank.is_zero())
    return {CategoricityLevel::delta2_relatively, PlainDelta2::yes, "reduced_finite_heights"};
  if (t.divisible_rank.omega)
    return {CategoricityLevel::not_delta2_relatively, PlainDelta2::no, "infinite_period_with_divisible"};
  return {plain ? CategoricityLevel::delta2_open : CategoricityLevel::not_delta2_relatively, PlainDelta2::open,
          "infinite_period_with_divisible"};
}

std::string to_string(CategoricityLevel level) {
  switch (level) {
    case CategoricityLevel::computably_categorical:
      return "computably_categorical";
    case CategoricityLevel::delta2_relatively:
      return "delta2_relatively";
    case CategoricityLevel::delta2_open:
      return "delta2_open";
    default:
      return "not_delta2_relatively";
  }
}

std::string to_string(PlainDelta2 flag) {
  switch (flag) {
    case PlainDelta2::yes:
      return "yes";
    case PlainDelta2::no:
      return "no";
    default:
      return "open";
  }
}

}  // namespace pgl
