#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "pgl/limitwise.hpp"

namespace pgl {

namespace {

struct Matching {
  ChainView v1, v2;
  std::vector<std::int64_t> partner;  // chain of G1 -> chain of G2, -1 if unmatched
  std::vector<bool> d1, d2;
};

std::vector<bool> divisible_chains(const StagedPresentation& g, const ChainView& v, std::uint64_t b) {
  std::vector<bool> out;
  for (const auto& ch : v.chains) out.push_back(g.divisible_oracle(ElementId::power(ch[0]), b) == Verdict::yes);
  return out;
}

Matching match(const StagedPresentation& g1, const StagedPresentation& g2, std::uint64_t b) {
  Matching m{analyze(g1, b), analyze(g2, b), {}, {}, {}};
  m.d1 = divisible_chains(g1, m.v1, b);
  m.d2 = divisible_chains(g2, m.v2, b);
  m.partner.assign(m.v1.chains.size(), -1);
  std::vector<std::uint32_t> div2;
  std::map<std::uint32_t, std::vector<std::uint32_t>> red2;
  for (std::uint32_t c = 0; c < m.v2.chains.size(); ++c) {
    if (m.d2[c])
      div2.push_back(c);
    else
      red2[m.v2.length(c)].push_back(c);
  }
  std::size_t next_div = 0;
  std::map<std::uint32_t, std::size_t> next_red;
  for (std::uint32_t c = 0; c < m.v1.chains.size(); ++c) {
    if (m.d1[c]) {
      if (next_div < div2.size()) m.partner[c] = div2[next_div++];
    } else {
      const auto len = m.v1.length(c);
      auto& k = next_red[len];
      const auto& pool = red2[len];
      if (k < pool.size()) m.partner[c] = pool[k++];
    }
  }
  return m;
}

std::optional<ElementId> image(const StagedPresentation& g1, const StagedPresentation& g2, const ChainView& v1,
                               const ChainView& v2, const std::vector<std::int64_t>& partner, const ElementId& x) {
  ElementId out;
  for (const auto& [c, digits] : v1.coordinates(g1, x)) {
    const auto c2 = partner[c];
    if (c2 < 0) return std::nullopt;
    for (const auto& [level, d] : digits) {
      if (level > v2.length(static_cast<std::uint32_t>(c2))) return std::nullopt;
      out = g2.add(out, g2.scale(d, ElementId::power(v2.chains[c2][level - 1])));
    }
  }
  return out;
}

}  // namespace

std::optional<ElementId> LimitMap::apply(const StagedPresentation& g1, const StagedPresentation& g2,
                                         const ElementId& x) const {
  return image(g1, g2, view1, view2, partner, x);
}

std::string to_string(LimitMap::Status s) {
  switch (s) {
    case LimitMap::Status::stabilized:
      return "stabilized";
    case LimitMap::Status::invariant_mismatch:
      return "invariant_mismatch";
    default:
      return "inconclusive";
  }
}

LimitMap delta2_isomorphism(StagedPresentation& g1, StagedPresentation& g2, std::uint64_t budget,
                            std::uint32_t prefix) {
  if (g1.mode() != InfMode::computable || g2.mode() != InfMode::computable)
    throw std::invalid_argument("Delta^0_2 isomorphism needs decidable divisible parts");
  if (g1.p() != g2.p()) throw std::invalid_argument("presentations over different primes");
  g1.advance_to(budget);
  g2.advance_to(budget);
  LimitMap m;
  m.p = g1.p();
  {
    // ids that never exist (finite groups) are dropped from the prefix
    const auto n = g1.positions(budget);
    std::uint64_t size = 1;
    for (std::uint64_t i = 0; i < n && size < prefix; ++i) size *= g1.p();
    m.prefix = static_cast<std::uint32_t>(std::min<std::uint64_t>(prefix, size));
  }
  m.mind_changes.assign(m.prefix, 0);
  constexpr std::uint64_t kCheckpoints = 32;
  for (std::uint64_t j = 1; j <= kCheckpoints; ++j) {
    const auto b = std::max<std::uint64_t>(1, budget * j / kCheckpoints);
    if (!m.checkpoints.empty() && m.checkpoints.back() == b) continue;
    auto mt = match(g1, g2, b);
    std::vector<std::optional<ElementId>> row(m.prefix);
    for (std::uint32_t x = 0; x < m.prefix; ++x) {
      const auto id = ElementId::from_u64(x, m.p);
      if (g1.contains(id, b)) row[x] = image(g1, g2, mt.v1, mt.v2, mt.partner, id);
      if (!m.maps.empty() && m.maps.back()[x] && row[x] && *m.maps.back()[x] != *row[x]) ++m.mind_changes[x];
    }
    if (m.maps.empty() || m.maps.back() != row) m.stable_since = b;
    m.checkpoints.push_back(b);
    m.maps.push_back(std::move(row));
    m.view1 = std::move(mt.v1);
    m.view2 = std::move(mt.v2);
    m.partner = std::move(mt.partner);

    if (j == kCheckpoints) {
      const auto half = budget / 2;
      const bool stagnant = g1.positions(budget) == g1.positions(half) && g2.positions(budget) == g2.positions(half);
      if (stagnant) {
        std::vector<std::uint32_t> l1, l2;
        for (std::uint32_t c = 0; c < m.view1.chains.size(); ++c) l1.push_back(m.view1.length(c));
        for (std::uint32_t c = 0; c < m.view2.chains.size(); ++c) l2.push_back(m.view2.length(c));
        std::sort(l1.begin(), l1.end());
        std::sort(l2.begin(), l2.end());
        if (l1 != l2) {
          m.status = LimitMap::Status::invariant_mismatch;
          std::ostringstream os;
          os << "settled cyclic decompositions differ:";
          for (auto l : l1) os << ' ' << l;
          os << " vs";
          for (auto l : l2) os << ' ' << l;
          m.reason = os.str();
          return m;
        }
      }
    }
  }
  const auto& last = m.maps.back();
  const bool total = std::all_of(last.begin(), last.end(), [](const auto& v) { return v.has_value(); });
  if (total && m.stable_since <= budget / 2) {
    m.status = LimitMap::Status::stabilized;
  } else {
    m.status = LimitMap::Status::inconclusive;
    m.reason = total ? "map still changing in the second half of the budget" : "map not yet total on the prefix";
  }
  return m;
}

std::vector<std::uint64_t> mind_change_census(const LimitMap& m, std::uint32_t prefix) {
  return {m.mind_changes.begin(), m.mind_changes.begin() + std::min<std::size_t>(prefix, m.mind_changes.size())};
}

std::string LimitMap::dump() const {
  std::ostringstream os;
  for (std::size_t j = 0; j < checkpoints.size(); ++j) {
    os << "stage " << checkpoints[j] << "\n";
    for (std::uint32_t x = 0; x < prefix; ++x) {
      const auto& v = maps[j][x];
      os << "h " << x << " -> " << (v ? v->to_string(p) : std::string("?"));
      if (j > 0 && v && maps[j - 1][x] && *maps[j - 1][x] != *v) os << " retract";
      os << "\n";
    }
  }
  return os.str();
}

}  // namespace pgl
