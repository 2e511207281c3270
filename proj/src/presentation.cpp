#include "pgl/presentation.hpp"

#include <map>
#include <stdexcept>

#include "pgl/finite_core.hpp"

namespace pgl {

StagedPresentation::StagedPresentation(std::shared_ptr<GrowthPlan> plan, std::uint32_t p)
    : plan_(std::move(plan)), p_(p) {
  if (p < 2 || !is_prime(p)) throw std::invalid_argument("p must be prime");
  if (plan_->stages_run() == 0) plan_->run_to(1);
  sync();
}

void StagedPresentation::advance_to(std::uint64_t stage) {
  plan_->run_to(stage + 1);
  sync();
}

void StagedPresentation::sync() const {
  const auto& ev = plan_->events();
  std::size_t have = 0;
  for (const auto& c : comp_positions_) have += c.size();
  for (std::size_t e = have; e < ev.size(); ++e) {
    if (ev[e].cls >= comp_positions_.size()) comp_positions_.resize(ev[e].cls + 1);
    comp_positions_[ev[e].cls].push_back(static_cast<std::uint32_t>(e));
  }
}

void StagedPresentation::check(const ElementId& x) const {
  sync();
  if (x.top() >= static_cast<std::int64_t>(plan_->events().size()))
    throw std::out_of_range("element " + x.to_string(p_) + " not materialized");
}

std::uint64_t StagedPresentation::stage_of(const ElementId& x) const {
  check(x);
  return x.is_zero() ? 0 : plan_->event_stage(x.top());
}

ElementId StagedPresentation::add(const ElementId& a, const ElementId& b) const {
  check(a);
  check(b);
  const auto& ev = plan_->events();
  // component -> level -> digit sum
  std::map<std::uint32_t, std::map<std::uint64_t, std::uint64_t>> acc;
  for (const auto* x : {&a, &b})
    for (const auto& [pos, d] : x->terms()) acc[ev[pos].cls][ev[pos].new_size] += d;
  std::vector<ElementId::Term> out;
  for (auto& [comp, levels] : acc) {
    while (!levels.empty()) {
      auto it = std::prev(levels.end());
      const auto level = it->first;
      const auto v = it->second;
      levels.erase(it);
      if (v % p_) out.emplace_back(comp_positions_[comp][level - 1], static_cast<std::uint32_t>(v % p_));
      if (v / p_ && level > 1) levels[level - 1] += v / p_;
    }
  }
  return ElementId::from_terms(std::move(out));
}

ElementId StagedPresentation::neg(const ElementId& a) const {
  check(a);
  const auto& ev = plan_->events();
  std::map<std::uint32_t, std::map<std::uint64_t, std::uint32_t>> acc;
  for (const auto& [pos, d] : a.terms()) acc[ev[pos].cls][ev[pos].new_size] = d;
  std::vector<ElementId::Term> out;
  for (const auto& [comp, levels] : acc) {
    const auto deepest = levels.rbegin()->first;
    for (std::uint64_t l = 1; l <= deepest; ++l) {
      auto it = levels.find(l);
      const std::uint32_t d = it == levels.end() ? 0 : it->second;
      const std::uint32_t nd = l == deepest ? p_ - d : p_ - 1 - d;
      if (nd) out.emplace_back(comp_positions_[comp][l - 1], nd);
    }
  }
  return ElementId::from_terms(std::move(out));
}

ElementId StagedPresentation::scale(std::uint64_t c, const ElementId& a) const {
  ElementId result, base = a;
  while (c) {
    if (c & 1) result = add(result, base);
    c >>= 1;
    if (c) base = add(base, base);
  }
  return result;
}

Verdict StagedPresentation::divisible_oracle(const ElementId& x, std::uint64_t s) const {
  check(x);
  const auto& ev = plan_->events();
  bool all_known = true;
  for (const auto& [pos, d] : x.terms()) {
    const auto cls = ev[pos].cls;
    if (plan_->classes()[cls].target != kOmega) {
      if (plan_->mode() == InfMode::computable) return Verdict::no;
      all_known = false;
    } else if (!plan_->known_infinite(cls, s)) {
      all_known = false;
    }
  }
  return all_known ? Verdict::yes : Verdict::unknown;
}

StagedPresentation transform_equiv_to_group(const EquivalenceStructure& a, std::uint32_t p) {
  return StagedPresentation(a.shared_plan(), p);
}

StagedPresentation build_from_iso_type(const IsoTypeSpec& t, std::uint64_t seed) {
  auto plan = std::make_shared<GrowthPlan>(t.character, t.divisible_rank, t.inf_mode, seed);
  return StagedPresentation(std::move(plan), t.p);
}

}  // namespace pgl
