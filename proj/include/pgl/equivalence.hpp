#pragma once

// Staged equivalence structures built from a class plan.  Each stage adds at
// most one element: either the first element of a new class or one more
// element of an existing class.  The same event stream drives the group
// presentations in presentation.hpp.

#include <cstdint>
#include <deque>
#include <memory>
#include <random>
#include <vector>

#include "pgl/character.hpp"

namespace pgl {

struct GrowthEvent {
  std::uint32_t cls;
  std::uint64_t new_size;  // 1 when the event opens the class
};

struct ClassInfo {
  std::uint64_t target;          // final size, kOmega for an infinite class
  std::uint64_t created_stage;
  std::uint64_t first_element;   // least representative
  std::uint64_t size = 0;
  std::uint64_t reveal_size;     // sigma1 mode: size at which infiniteness is enumerated
  std::int64_t sfunction_row = -1;
};

class GrowthPlan {
 public:
  /// Throws std::invalid_argument for an unbounded character in computable
  /// mode without an s1 witness.  seed 0 is plain round robin; any other seed
  /// picks uniformly among the first three runnable queue entries.
  GrowthPlan(const Character& character, Rank infinite_classes, InfMode mode, std::uint64_t seed);

  void run_to(std::uint64_t stage);
  /// Stages 0..stages_run()-1 have been executed.
  std::uint64_t stages_run() const { return stage_; }

  const std::vector<GrowthEvent>& events() const { return events_; }
  std::uint64_t event_stage(std::uint64_t e) const { return event_stage_[e]; }
  /// Number of events at stages <= s.  Requires s < stages_run().
  std::uint64_t events_through(std::uint64_t s) const;

  const std::vector<ClassInfo>& classes() const { return classes_; }
  InfMode mode() const { return mode_; }

  /// Size of class c after stage s.
  std::uint64_t size_at(std::uint32_t c, std::uint64_t s) const;
  /// Whether the plan declares class c infinite by stage s.  computable mode:
  /// exact from creation.  sigma1 mode: only after the class reaches its reveal size.
  bool known_infinite(std::uint32_t c, std::uint64_t s) const;
  /// Finite class that has reached its final size by stage s.
  bool complete_at(std::uint32_t c, std::uint64_t s) const;

 private:
  struct Item {
    enum class Kind { fixed, row, spawn_infinite, spawn_exponent, spawn_staircase } kind;
    std::uint64_t param = 0;  // target, row index, or exponent
    std::int64_t cls = -1;
  };
  bool runnable(const Item& it) const;
  bool finished(const Item& it) const;
  void act(Item it);
  void grow(std::uint32_t c);
  std::uint32_t open_class(std::uint64_t target, std::int64_t row);

  Character character_;
  InfMode mode_;
  std::uint64_t seed_;
  std::mt19937_64 rng_;
  std::deque<Item> queue_;
  std::uint64_t stage_ = 0;
  std::uint64_t next_staircase_row_ = 0;
  std::vector<GrowthEvent> events_;
  std::vector<std::uint64_t> event_stage_;
  std::vector<ClassInfo> classes_;
  std::vector<std::vector<std::uint64_t>> class_events_;  // per class, stage of each growth
};

/// A computable equivalence structure on the naturals; element e is the one
/// added by event e.
class EquivalenceStructure {
 public:
  explicit EquivalenceStructure(std::shared_ptr<GrowthPlan> plan) : plan_(std::move(plan)) {}

  void advance_to(std::uint64_t stage) { plan_->run_to(stage + 1); }
  std::uint64_t universe_size(std::uint64_t stage) const { return plan_->events_through(stage); }
  std::uint32_t class_of(std::uint64_t element) const { return plan_->events().at(element).cls; }
  bool equivalent(std::uint64_t a, std::uint64_t b) const { return class_of(a) == class_of(b); }
  /// Least element of the class of a.
  std::uint64_t representative(std::uint64_t a) const { return plan_->classes()[class_of(a)].first_element; }

  /// Membership in Inf(A) as far as the plan reveals it at stage s.
  bool known_in_infinite_class(std::uint64_t element, std::uint64_t stage) const {
    return plan_->known_infinite(class_of(element), stage);
  }

  /// Class sizes after stage s, in order of least representative.
  std::vector<std::uint64_t> class_sizes(std::uint64_t stage) const;

  const GrowthPlan& plan() const { return *plan_; }
  std::shared_ptr<GrowthPlan> shared_plan() const { return plan_; }

 private:
  std::shared_ptr<GrowthPlan> plan_;
};

EquivalenceStructure build_equivalence(const Character& character, Rank infinite_classes, InfMode mode,
                                       std::uint64_t seed = 0);

}  // namespace pgl
