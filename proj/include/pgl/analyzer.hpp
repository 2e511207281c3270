#pragma once

// Structure recovery from the opaque interface of a presentation.  Only
// add/neg and universe sizes are consulted.  The element first appearing at
// digit position j is x_j = p^j; multiplying each x_j by p links it to an
// earlier x_i or to 0, which splits the stage group into cyclic chains.

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "pgl/finite_core.hpp"
#include "pgl/presentation.hpp"

namespace pgl {

struct ChainView {
  std::uint32_t p = 2;
  std::uint64_t stage = 0;
  /// chains[c][l] is the position of the generator of order p^{l+1} in chain c.
  std::vector<std::vector<std::uint32_t>> chains;
  /// position -> (chain, level), level counted from 1.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> where;

  std::uint32_t length(std::uint32_t c) const { return static_cast<std::uint32_t>(chains[c].size()); }
  /// Per chain, the coefficients (level -> digit) of x against the chain
  /// generators, recovered by peeling off the highest generator with add/neg.
  std::map<std::uint32_t, std::map<std::uint32_t, std::uint32_t>> coordinates(const StagedPresentation& g,
                                                                             const ElementId& x) const;
};

/// Throws std::logic_error if p * x_j is neither 0 nor the current top of an
/// existing chain.
ChainView analyze(const StagedPresentation& g, std::uint64_t stage);

/// The finite stage group G^s with its canonical spec and the id embedding.
struct StageView {
  ChainView chains;
  FiniteGroupSpec spec;
  /// summand i of spec is chain summand_chain[i]
  std::vector<std::uint32_t> summand_chain;

  Element embed(const StagedPresentation& g, const ElementId& x) const;
  ElementId lift(const StagedPresentation& g, const Element& e) const;
};

/// Throws std::length_error if |G^s| exceeds `bound`.
StageView stage_view(const StagedPresentation& g, std::uint64_t stage, std::uint64_t bound = search_bound());

}  // namespace pgl
