#include <stdexcept>
#include <unordered_set>

#include "pgl/limitwise.hpp"

namespace pgl {

Character character_from_sfunction(const SFunction& f) {
  Character c;
  c.sfunction = f;
  return c;
}

std::vector<ElementId> Decomposition::generators(std::uint64_t s) const {
  std::vector<ElementId> out;
  for (auto x : accepted)
    if (x < s) out.push_back(ElementId::from_u64(x, p));
  return out;
}

Decomposition decompose_complement(StagedPresentation& g, std::uint64_t s) {
  if (g.mode() != InfMode::computable)
    throw std::invalid_argument("divisible part is not stage-decidable for this presentation");
  Decomposition out;
  out.p = g.p();
  out.scanned = s;
  out.in_h.assign(s, false);
  if (s == 0) return out;

  // smallest stage whose universe holds every id < s
  std::uint32_t need = 0;
  for (std::uint64_t size = 1; size < s; size *= g.p()) ++need;
  std::uint64_t t = 0;
  while (true) {
    if (t > g.stage()) g.advance_to(t);
    if (g.positions(t) >= need) break;
    if (t > 64 * (need + 1) + 1000 && g.positions(t) == g.positions(t / 2))
      break;  // the group stopped growing: ids past the universe do not exist
    ++t;
  }
  const auto view = stage_view(g, t, std::max<std::uint64_t>(search_bound(), std::uint64_t{1} << 24));
  const FiniteGroup group(view.spec, view.spec.order());

  std::vector<bool> d_summand(view.spec.rank());
  for (std::size_t i = 0; i < d_summand.size(); ++i) {
    const auto chain = view.summand_chain[i];
    d_summand[i] = g.divisible_oracle(ElementId::power(view.chains.chains[chain][0]), t) == Verdict::yes;
  }
  auto project = [&](std::uint64_t x) {
    auto e = group.element(x);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (d_summand[i]) e[i] = 0;
    return group.index_of(e);
  };

  std::vector<char> in_a(group.order(), 0);
  std::unordered_set<std::uint64_t> projected{0};
  std::vector<std::uint64_t> members{0};
  in_a[0] = 1;
  const auto universe = std::min<std::uint64_t>(s, group.order());
  for (std::uint64_t id = 0; id < universe; ++id) {
    const auto e = group.index_of(view.embed(g, ElementId::from_u64(id, g.p())));
    if (!in_a[e]) {
      bool ok = true;
      std::uint64_t k = 1;
      for (std::uint64_t y = e; !in_a[y]; y = group.add(y, e), ++k)
        if (projected.count(project(y))) {
          ok = false;
          break;
        }
      if (ok) {
        out.accepted.push_back(id);
        const auto base = members;
        std::uint64_t y = e;
        for (std::uint64_t c = 1; c < k; ++c, y = group.add(y, e))
          for (auto a : base) {
            const auto z = group.add(a, y);
            in_a[z] = 1;
            members.push_back(z);
            projected.insert(project(z));
          }
      }
    }
    out.in_h[id] = in_a[e];
  }
  return out;
}

}  // namespace pgl
