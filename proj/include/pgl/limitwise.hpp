#pragma once

// Limit-computable constructions: characters of s-functions, the greedy
// complement of the divisible part, and Delta^0_2 isomorphisms between
// presentations with decidable divisible parts.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pgl/analyzer.hpp"
#include "pgl/character.hpp"
#include "pgl/presentation.hpp"
#include "pgl/sfunction.hpp"

namespace pgl {

/// {(n, k) : |{i : m_i = n}| >= k}, kept as the generator descriptor.
Character character_from_sfunction(const SFunction& f);

/// The chain A_0 = {0} <= A_1 <= ... where A_{s+1} adds id s when
/// <A_s, s> meets D only in 0 (and leaves A_s = A_{s+1} otherwise).
struct Decomposition {
  std::uint32_t p = 2;
  std::uint64_t scanned = 0;            // ids < scanned were examined
  std::vector<std::uint64_t> accepted;  // ids that extended the chain, increasing
  std::vector<bool> in_h;               // in_h[x] iff x in A_{x+1}, i.e. x in H

  /// Generators of A_s.
  std::vector<ElementId> generators(std::uint64_t s) const;
  bool member(std::uint64_t x) const { return in_h.at(x); }
};

/// Runs the scan over ids 0..s-1, materializing g as far as needed.  Throws
/// std::invalid_argument unless the divisible-part oracle is exact.
Decomposition decompose_complement(StagedPresentation& g, std::uint64_t s);

/// Stagewise maps h_b on the first `prefix` ids of G1.
struct LimitMap {
  enum class Status { stabilized, inconclusive, invariant_mismatch };

  std::uint32_t p = 2;
  std::uint32_t prefix = 0;
  std::vector<std::uint64_t> checkpoints;
  std::vector<std::vector<std::optional<ElementId>>> maps;  // per checkpoint, per id
  std::vector<std::uint64_t> mind_changes;                   // per id
  Status status = Status::inconclusive;
  std::string reason;
  std::uint64_t stable_since = 0;

  // final chain matching, used by apply()
  ChainView view1, view2;
  std::vector<std::int64_t> partner;

  /// Image of x under the final map, if every chain x touches is matched deeply enough.
  std::optional<ElementId> apply(const StagedPresentation& g1, const StagedPresentation& g2,
                                 const ElementId& x) const;
  /// `stage b` blocks of `h <id> -> <id>` lines, with `retract` on revisions.
  std::string dump() const;
};

/// Divisible chains are matched in discovery order, level by level; reduced
/// chains of equal current length are matched in discovery order.  Both
/// presentations are materialized through `budget`.  Throws
/// std::invalid_argument unless both divisible-part oracles are exact.
LimitMap delta2_isomorphism(StagedPresentation& g1, StagedPresentation& g2, std::uint64_t budget,
                            std::uint32_t prefix = 50);

std::vector<std::uint64_t> mind_change_census(const LimitMap& m, std::uint32_t prefix);

std::string to_string(LimitMap::Status s);

}  // namespace pgl
