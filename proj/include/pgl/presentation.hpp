#pragma once

// Computable presentations of p-groups grown in stages.
//
// Algorithms may use only p(), positions()/universe_size(), add() and neg()
// (plus the divisible-part oracle when it is decidable).  The layout
// of ids is described here for the decoder only: digit position e belongs
// to the component of the class grown by event e, at level = the class size
// after that event, and a digit d there stands for d / p^level in that
// component, read mod 1.

#include <cstdint>
#include <memory>
#include <vector>

#include "pgl/character.hpp"
#include "pgl/element_id.hpp"
#include "pgl/equivalence.hpp"
#include "pgl/verdict.hpp"

namespace pgl {

namespace testing {
class Decoder;
}

class StagedPresentation {
 public:
  StagedPresentation(std::shared_ptr<GrowthPlan> plan, std::uint32_t p);

  std::uint32_t p() const { return p_; }

  /// Materializes stages 0..stage.
  void advance_to(std::uint64_t stage);
  /// Highest materialized stage.
  std::uint64_t stage() const { return plan_->stages_run() - 1; }

  /// log_p of the universe size at stage s.
  std::uint64_t positions(std::uint64_t s) const { return plan_->events_through(s); }
  ElementId universe_size(std::uint64_t s) const { return ElementId::power(static_cast<std::uint32_t>(positions(s))); }
  bool contains(const ElementId& x, std::uint64_t s) const {
    return x.top() < static_cast<std::int64_t>(positions(s));
  }
  /// First stage at which x is in the universe.
  std::uint64_t stage_of(const ElementId& x) const;

  /// Throws std::out_of_range if an argument is not materialized.
  ElementId add(const ElementId& a, const ElementId& b) const;
  ElementId neg(const ElementId& a) const;
  ElementId sub(const ElementId& a, const ElementId& b) const { return add(a, neg(b)); }
  /// c * a by double-and-add over add().
  ElementId scale(std::uint64_t c, const ElementId& a) const;

  /// The divisible-part oracle.  computable mode answers yes/no exactly;
  /// sigma1 mode answers yes once every component of x is enumerated as
  /// infinite by stage s, and unknown otherwise.
  Verdict divisible_oracle(const ElementId& x, std::uint64_t s) const;
  InfMode mode() const { return plan_->mode(); }

 private:
  friend class testing::Decoder;
  void sync() const;
  void check(const ElementId& x) const;

  std::shared_ptr<GrowthPlan> plan_;
  std::uint32_t p_;
  mutable std::vector<std::vector<std::uint32_t>> comp_positions_;  // per class, position of each level
};

/// Group whose components follow the classes of A: opening a class opens a
/// copy of Z(p), each further element of the class extends its component
/// from Z(p^k) to Z(p^{k+1}).  Infinite classes give copies of Z(p^inf).
StagedPresentation transform_equiv_to_group(const EquivalenceStructure& a, std::uint32_t p);

/// Presentation of t scheduled by `seed` (0 = plain round robin).
StagedPresentation build_from_iso_type(const IsoTypeSpec& t, std::uint64_t seed = 0);

}  // namespace pgl
