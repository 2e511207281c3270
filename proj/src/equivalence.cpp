#include "pgl/equivalence.hpp"

#include <algorithm>
#include <stdexcept>

namespace pgl {

GrowthPlan::GrowthPlan(const Character& character, Rank infinite_classes, InfMode mode, std::uint64_t seed)
    : character_(character), mode_(mode), seed_(seed), rng_(seed) {
  if (!character.bounded() && mode == InfMode::computable && !infinite_classes.omega &&
      !character.sfunction->is_s1())
    throw std::invalid_argument("unbounded character in computable mode needs an s1-function witness");
  for (const auto& [n, k] : character.finite)
    for (std::uint64_t i = 0; i < k; ++i) queue_.push_back({Item::Kind::fixed, n});
  if (infinite_classes.omega)
    queue_.push_back({Item::Kind::spawn_infinite});
  else
    for (std::uint32_t i = 0; i < infinite_classes.n; ++i) queue_.push_back({Item::Kind::fixed, kOmega});
  for (auto m : character.infinite) queue_.push_back({Item::Kind::spawn_exponent, m});
  if (character.sfunction) {
    const auto& f = *character.sfunction;
    if (auto rows = f.row_count()) {
      for (std::size_t i = 0; i < *rows; ++i)
        if (f.limit(i) > 0) queue_.push_back({Item::Kind::row, i});
    } else {
      if (f.limit(0) == 0) next_staircase_row_ = 1;
      queue_.push_back({Item::Kind::spawn_staircase});
    }
  }
}

std::uint64_t GrowthPlan::events_through(std::uint64_t s) const {
  if (s >= stage_) throw std::out_of_range("stage not materialized");
  return std::upper_bound(event_stage_.begin(), event_stage_.end(), s) - event_stage_.begin();
}

std::uint64_t GrowthPlan::size_at(std::uint32_t c, std::uint64_t s) const {
  const auto& ev = class_events_.at(c);
  return std::upper_bound(ev.begin(), ev.end(), s) - ev.begin();
}

bool GrowthPlan::known_infinite(std::uint32_t c, std::uint64_t s) const {
  const auto& info = classes_.at(c);
  if (info.target != kOmega || info.created_stage > s) return false;
  return mode_ == InfMode::computable || size_at(c, s) >= info.reveal_size;
}

bool GrowthPlan::complete_at(std::uint32_t c, std::uint64_t s) const {
  const auto& info = classes_.at(c);
  return info.target != kOmega && size_at(c, s) == info.target;
}

bool GrowthPlan::runnable(const Item& it) const {
  const std::uint64_t size = it.cls < 0 ? 0 : classes_[it.cls].size;
  switch (it.kind) {
    case Item::Kind::fixed:
      return size < it.param;
    case Item::Kind::row:
      return size < character_.sfunction->value(it.param, stage_);
    case Item::Kind::spawn_staircase:
      return character_.sfunction->value(next_staircase_row_, stage_) >= 1;
    default:
      return true;
  }
}

bool GrowthPlan::finished(const Item& it) const {
  if (it.cls < 0) return false;
  const auto& info = classes_[it.cls];
  return info.target != kOmega && info.size == info.target;
}

void GrowthPlan::grow(std::uint32_t c) {
  auto& info = classes_[c];
  ++info.size;
  events_.push_back({c, info.size});
  event_stage_.push_back(stage_);
  class_events_[c].push_back(stage_);
}

std::uint32_t GrowthPlan::open_class(std::uint64_t target, std::int64_t row) {
  ClassInfo info{target, stage_, events_.size(), 0, target == kOmega ? stage_ / 2 + 2 : kOmega, row};
  classes_.push_back(info);
  class_events_.emplace_back();
  const auto c = static_cast<std::uint32_t>(classes_.size() - 1);
  grow(c);
  return c;
}

void GrowthPlan::act(Item it) {
  switch (it.kind) {
    case Item::Kind::fixed:
    case Item::Kind::row:
      if (it.cls < 0) {
        const bool row = it.kind == Item::Kind::row;
        it.cls = open_class(row ? character_.sfunction->limit(it.param) : it.param,
                            row ? static_cast<std::int64_t>(it.param) : -1);
      } else {
        grow(static_cast<std::uint32_t>(it.cls));
      }
      if (!finished(it)) queue_.push_back(it);
      return;
    case Item::Kind::spawn_infinite: {
      Item cls{Item::Kind::fixed, kOmega, open_class(kOmega, -1)};
      queue_.push_back(cls);
      break;
    }
    case Item::Kind::spawn_exponent: {
      Item cls{Item::Kind::fixed, it.param, open_class(it.param, -1)};
      if (!finished(cls)) queue_.push_back(cls);
      break;
    }
    case Item::Kind::spawn_staircase: {
      const auto row = next_staircase_row_++;
      Item cls{Item::Kind::row, row, open_class(character_.sfunction->limit(row), static_cast<std::int64_t>(row))};
      if (!finished(cls)) queue_.push_back(cls);
      break;
    }
  }
  queue_.push_back(it);
}

void GrowthPlan::run_to(std::uint64_t stage) {
  while (stage_ < stage) {
    std::vector<std::size_t> candidates;
    const std::size_t want = seed_ == 0 ? 1 : 3;
    for (std::size_t i = 0; i < queue_.size() && candidates.size() < want;) {
      if (finished(queue_[i])) {
        queue_.erase(queue_.begin() + static_cast<std::ptrdiff_t>(i));
        continue;
      }
      if (runnable(queue_[i])) candidates.push_back(i);
      ++i;
    }
    if (!candidates.empty()) {
      const auto pick = candidates[candidates.size() == 1 ? 0 : rng_() % candidates.size()];
      Item it = queue_[pick];
      queue_.erase(queue_.begin() + static_cast<std::ptrdiff_t>(pick));
      act(it);
    }
    ++stage_;
  }
}

std::vector<std::uint64_t> EquivalenceStructure::class_sizes(std::uint64_t stage) const {
  std::vector<std::uint64_t> out;
  for (std::uint32_t c = 0; c < plan_->classes().size(); ++c)
    if (plan_->classes()[c].created_stage <= stage) out.push_back(plan_->size_at(c, stage));
  return out;
}

EquivalenceStructure build_equivalence(const Character& character, Rank infinite_classes, InfMode mode,
                                       std::uint64_t seed) {
  auto plan = std::make_shared<GrowthPlan>(character, infinite_classes, mode, seed);
  plan->run_to(1);
  return EquivalenceStructure(std::move(plan));
}

}  // namespace pgl
