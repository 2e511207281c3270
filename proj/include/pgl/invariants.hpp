#pragma once

// Invariants read off presentations through the opaque interface, with
// verdicts that respect the arithmetical level of each question, plus Ulm
// data and the categoricity classifier for isomorphism types.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "pgl/analyzer.hpp"
#include "pgl/character.hpp"
#include "pgl/finite_core.hpp"
#include "pgl/presentation.hpp"
#include "pgl/verdict.hpp"

namespace pgl {

/// Exact: smallest n with p^n x = 0, by repeated multiplication.
std::uint32_t order_of(const StagedPresentation& g, const ElementId& x);

/// Sigma_1: yes once a witness h with p^n h = x exists among the elements
/// materialized by `budget`; otherwise unknown.  Never answers no.  The
/// presentation must be materialized through `budget`.
StageVerdict height_at_least(const StagedPresentation& g, const ElementId& x, std::uint32_t n,
                             std::uint64_t budget);
StageVerdict height_at_least(const StagedPresentation& g, const ChainView& view, const ElementId& x,
                             std::uint32_t n);

struct DivisibleApprox {
  StageVerdict verdict;
  std::vector<std::uint64_t> mind_changes;  // stages at which the guess flipped
};

/// Limit guess for x in D(G): at stage b the guess is yes iff x has a
/// height witness for every n <= floor(sqrt(b)).
DivisibleApprox divisible_approx(const StagedPresentation& g, const ElementId& x, std::uint64_t budget);

struct CharacterCensus {
  std::set<CharEntry> confirmed;
  /// (stage, entry, added?) for every change between checkpoints.
  std::vector<std::tuple<std::uint64_t, CharEntry, bool>> revisions;
};

/// Sigma_2 census.  An entry (n, k) is confirmed at budget b when k chain
/// tops of order p^n, unchanged since stage b/2, have independent
/// p^{n-1}-multiples.  Checkpoints at b/8, 2b/8, ..., b feed the revision log.
CharacterCensus enumerate_character(const StagedPresentation& g, std::uint64_t budget);

/// u(n) counts summands Z(p^{n+1}); kOmega means infinitely many.  A tail
/// adds one summand for every n >= tail_from.
struct UlmData {
  std::map<std::uint32_t, std::uint64_t> u;
  std::optional<std::uint32_t> tail_from;
  Rank divisible_rank;

  std::uint64_t at(std::uint32_t n) const;
  std::string to_string() const;
};
bool operator==(const UlmData& a, const UlmData& b);

UlmData ulm_invariants(const IsoTypeSpec& t);
/// Dimension counting over P_n = G[p] n p^n G; exponents are not read.
UlmData ulm_of_finite(const FiniteGroupSpec& spec);
bool isomorphic_by_ulm(const IsoTypeSpec& a, const IsoTypeSpec& b);
IsoTypeSpec iso_type_of(const FiniteGroupSpec& spec);

enum class CategoricityLevel { computably_categorical, delta2_relatively, delta2_open, not_delta2_relatively };
enum class PlainDelta2 { yes, no, open };

struct Classification {
  CategoricityLevel level;
  PlainDelta2 plain_delta2;
  std::string clause;
};

/// With plain = true, cases whose plain (non-relative) Delta^0_2 status is
/// open report delta2_open instead of not_delta2_relatively.
Classification classify_categoricity(const IsoTypeSpec& t, bool plain = false);
std::string to_string(CategoricityLevel level);
std::string to_string(PlainDelta2 flag);

}  // namespace pgl
