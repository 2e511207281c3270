#pragma once

// Scott formulas for the categorical and relatively Delta^0_2-categorical
// rows of the classifier, their evaluation on presentations, exhaustive
// verification of the Scott-family property on finite truncations, and
// universal formulas checked over finite subgroups.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pgl/character.hpp"
#include "pgl/finite_core.hpp"
#include "pgl/presentation.hpp"
#include "pgl/verdict.hpp"

namespace pgl {

enum class FormulaShape { orders_and_relations, orders_relations_divisibility, pure_diagram };
std::string to_string(FormulaShape shape);

/// Deterministic text form.  Two tuples get the same formula iff the texts
/// are equal.  No parameters are used, so parameter lists are always empty.
///
/// Grid formulas list, for every coefficient vector c with 0 <= c_i < o(g_i)
/// in lexicographic order, one character for sum c_i g_i: 'z' if it is zero;
/// otherwise 'n' (relations only), 'd' if it lies in D, or the digit
/// min(h, cap) where h is its height modulo D.
struct ScottFormula {
  FormulaShape shape = FormulaShape::orders_and_relations;
  std::uint32_t tuple_length = 0;
  std::uint32_t divisibility_cap = 0;
  std::vector<std::uint32_t> orders;
  std::string grid;
  /// pure_diagram: exponents of F (descending) and the tuple's Aut(F)-orbit
  /// representative in F's coordinates.
  std::vector<std::uint32_t> f_exponents;
  std::vector<Element> f_tuple;

  std::string serialize() const;
  friend bool operator==(const ScottFormula&, const ScottFormula&) = default;
};

/// Shape and divisibility cap for a type.  Throws std::invalid_argument for
/// types outside the covered rows.
std::pair<FormulaShape, std::uint32_t> formula_shape_for(const IsoTypeSpec& t);

/// The presentation must be materialized through `budget`.
ScottFormula generate_scott_formula(const IsoTypeSpec& t, const StagedPresentation& g,
                                    std::span<const ElementId> tuple, std::uint64_t budget);
StageVerdict satisfies(const StagedPresentation& g, std::span<const ElementId> tuple, const ScottFormula& phi,
                       std::uint64_t budget);

/// A finite truncation of a type: summands whose exponent is at least
/// 3 + (largest cyclic exponent) stand for truncated copies of Z(p^inf).
struct Truncation {
  FiniteGroupSpec spec;
  std::vector<bool> divisible_summand;
};

/// Checks the truncation policy; throws std::invalid_argument when violated.
Truncation make_truncation(const IsoTypeSpec& t, const FiniteGroupSpec& spec);
/// A policy-compliant truncation with order <= bound (copies added round robin).
FiniteGroupSpec policy_truncation(const IsoTypeSpec& t, std::uint64_t bound);

ScottFormula formula_in_truncation(const Truncation& tr, FormulaShape shape, std::uint32_t cap,
                                   std::span<const Element> tuple);

struct ScottReport {
  std::uint64_t tuples = 0;
  std::uint64_t orbits = 0;
  std::uint64_t formula_classes = 0;
  std::uint64_t automorphism_checks = 0;
  std::uint64_t invariance_samples = 0;
  std::vector<std::pair<std::vector<Element>, std::vector<Element>>> violations;
};

/// Every pair of tuples of length `tuple_length` with equal formulas must be
/// automorphic.  Grid shapes are computed once per orbit of the
/// D-preserving elementary automorphisms, with `samples` random tuples
/// recomputed directly as a cross-check; pure diagrams are computed for
/// every tuple.
ScottReport verify_scott_family(const IsoTypeSpec& t, const FiniteGroupSpec& truncation, unsigned tuple_length,
                                std::uint64_t samples = 2000, std::uint64_t seed = 1);

/// Universal sentences "forall x, y, ...: matrix" over the group language
/// with named parameters.  Terms are integer combinations of variables,
/// parameters and 0, written like `p^2*x + 3*g - y`; atoms are `=` and
/// `!=`; connectives `and`, `or`, `not` and parentheses.
struct Pi1Formula {
  std::vector<std::string> variables;
  struct Node;
  std::shared_ptr<Node> matrix;

  /// Throws std::invalid_argument with a position on malformed input.
  static Pi1Formula parse(const std::string& text, std::uint32_t p);
};

struct Pi1Result {
  bool full_group;
  std::optional<bool> all_subgroups;  // empty when the subgroup lattice was too large to enumerate
  std::uint64_t subgroups_checked = 0;
};

/// Truth in the full group and, separately, in every subgroup containing
/// the parameters.  Throws std::logic_error if the two routes disagree.
Pi1Result pi1_check(const FiniteGroupSpec& spec, const Pi1Formula& theta,
                    const std::map<std::string, Element>& params, std::uint64_t subgroup_limit = 5000);
bool pi1_holds_in_all_finite_subgroups(const FiniteGroupSpec& spec, const Pi1Formula& theta,
                                       const std::map<std::string, Element>& params);

}  // namespace pgl
