#include "pgl/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "pgl/kernels.hpp"

namespace pgl {

namespace {

std::uint64_t isqrt(std::uint64_t b) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(b)));
  while (r * r > b) --r;
  while ((r + 1) * (r + 1) <= b) ++r;
  return r;
}

ElementId p_power_times(const StagedPresentation& g, std::uint32_t n, ElementId x) {
  for (std::uint32_t i = 0; i < n && !x.is_zero(); ++i) x = g.scale(g.p(), x);
  return x;
}

// Length of chain c counting only positions materialized by stage s.
std::uint32_t length_at(const StagedPresentation& g, const ChainView& v, std::uint32_t c, std::uint64_t s) {
  const auto limit = g.positions(s);
  const auto& ch = v.chains[c];
  return static_cast<std::uint32_t>(std::lower_bound(ch.begin(), ch.end(), limit) - ch.begin());
}

}  // namespace

std::uint32_t order_of(const StagedPresentation& g, const ElementId& x) {
  std::uint32_t n = 0;
  for (ElementId y = x; !y.is_zero(); ++n) y = g.scale(g.p(), y);
  return n;
}

StageVerdict height_at_least(const StagedPresentation& g, const ChainView& view, const ElementId& x,
                             std::uint32_t n) {
  if (n == 0 || x.is_zero()) return {Verdict::yes, view.stage};
  ElementId h;
  for (const auto& [c, digits] : view.coordinates(g, x)) {
    for (const auto& [level, d] : digits) {
      if (level + n > view.length(c)) return {Verdict::unknown, view.stage};
      h = g.add(h, g.scale(d, ElementId::power(view.chains[c][level + n - 1])));
    }
  }
  if (p_power_times(g, n, h) != x) throw std::logic_error("height witness failed verification");
  return {Verdict::yes, view.stage};
}

StageVerdict height_at_least(const StagedPresentation& g, const ElementId& x, std::uint32_t n,
                             std::uint64_t budget) {
  return height_at_least(g, analyze(g, budget), x, n);
}

DivisibleApprox divisible_approx(const StagedPresentation& g, const ElementId& x, std::uint64_t budget) {
  DivisibleApprox out;
  if (x.is_zero()) {
    out.verdict = {Verdict::yes, budget};
    return out;
  }
  const auto view = analyze(g, budget);
  const auto coords = view.coordinates(g, x);
  bool have = false, guess = false;
  for (std::uint64_t b = g.stage_of(x); b <= budget; ++b) {
    std::uint64_t ht = kInfiniteHeight;
    for (const auto& [c, digits] : coords) {
      const auto deepest = digits.rbegin()->first;
      const auto len = length_at(g, view, c, b);
      ht = std::min<std::uint64_t>(ht, len - deepest);
    }
    const bool now = ht >= isqrt(b);
    if (have && now != guess) out.mind_changes.push_back(b);
    guess = now;
    have = true;
  }
  if (guess && height_at_least(g, view, x, static_cast<std::uint32_t>(isqrt(budget))).value != Verdict::yes)
    throw std::logic_error("divisibility guess without witness");
  out.verdict = {guess ? Verdict::yes : Verdict::no, budget};
  return out;
}

namespace {

std::set<CharEntry> census_at(const StagedPresentation& g, const ChainView& view, std::uint64_t b) {
  std::map<std::uint32_t, std::uint64_t> count;
  for (std::uint32_t c = 0; c < view.chains.size(); ++c) {
    const auto len = length_at(g, view, c, b);
    if (len == 0) continue;
    // the top must be unchanged through the window (b/2, b]
    if (length_at(g, view, c, b / 2) != len) continue;
    const auto top = view.chains[c][len - 1];
    // witness: the top generator; order p^len and p^{len-1} top is the chain's socle generator
    const auto gen = ElementId::power(top);
    const auto bottom = p_power_times(g, len - 1, gen);
    if (bottom != ElementId::power(view.chains[c][0]) || !g.scale(g.p(), bottom).is_zero())
      throw std::logic_error("chain witness failed verification");
    ++count[len];
  }
  std::set<CharEntry> out;
  for (const auto& [n, k] : count)
    for (std::uint64_t i = 1; i <= k; ++i) out.insert({n, i});
  return out;
}

}  // namespace

CharacterCensus enumerate_character(const StagedPresentation& g, std::uint64_t budget) {
  CharacterCensus out;
  const auto view = analyze(g, budget);
  std::set<CharEntry> prev;
  for (int j = 1; j <= 8; ++j) {
    const auto b = budget * j / 8;
    auto now = census_at(g, view, b);
    for (const auto& e : now)
      if (!prev.count(e)) out.revisions.emplace_back(b, e, true);
    for (const auto& e : prev)
      if (!now.count(e)) out.revisions.emplace_back(b, e, false);
    prev = std::move(now);
  }
  out.confirmed = std::move(prev);
  return out;
}

std::uint64_t UlmData::at(std::uint32_t n) const {
  std::uint64_t v = 0;
  if (auto it = u.find(n); it != u.end()) v = it->second;
  if (tail_from && n >= *tail_from && v != kOmega) ++v;
  return v;
}

std::string UlmData::to_string() const {
  std::ostringstream os;
  os << "rank=" << divisible_rank.to_string();
  std::uint32_t top = 0;
  for (const auto& [n, k] : u) top = std::max(top, n + 1);
  if (tail_from) top = std::max(top, *tail_from);
  for (std::uint32_t n = 0; n < top; ++n) {
    const auto v = at(n);
    if (v) os << " u" << n << "=" << (v == kOmega ? std::string("inf") : std::to_string(v));
  }
  if (tail_from) os << " tail_from=" << *tail_from;
  return os.str();
}

bool operator==(const UlmData& a, const UlmData& b) {
  if (!(a.divisible_rank == b.divisible_rank)) return false;
  if (a.tail_from.has_value() != b.tail_from.has_value()) return false;
  std::uint32_t top = 0;
  for (const auto* d : {&a, &b}) {
    for (const auto& [n, k] : d->u) top = std::max(top, n + 1);
    if (d->tail_from) top = std::max(top, *d->tail_from + 1);
  }
  for (std::uint32_t n = 0; n <= top; ++n)
    if (a.at(n) != b.at(n)) return false;
  return true;
}

UlmData ulm_invariants(const IsoTypeSpec& t) {
  UlmData d;
  d.divisible_rank = t.divisible_rank;
  const auto& ch = t.character;
  Character explicit_part = ch;
  if (ch.sfunction && ch.sfunction->kind() == SFunction::Kind::staircase) {
    explicit_part.sfunction.reset();
    d.tail_from = std::max<std::uint32_t>(ch.sfunction->offset(), 1) - 1;
  }
  std::uint32_t top = 0;
  for (const auto& [n, k] : explicit_part.finite) top = std::max(top, n);
  for (auto n : explicit_part.infinite) top = std::max(top, n);
  if (explicit_part.sfunction)
    for (std::size_t i = 0; i < explicit_part.sfunction->rows().size(); ++i)
      top = std::max(top, explicit_part.sfunction->limit(i));
  for (std::uint32_t n = 1; n <= top; ++n)
    if (auto m = explicit_part.multiplicity(n)) d.u[n - 1] = m;
  return d;
}

UlmData ulm_of_finite(const FiniteGroupSpec& spec) {
  UlmData d;
  if (spec.rank() == 0) return d;
  const FiniteGroup group(spec, std::max<std::uint64_t>(spec.order(), search_bound()));
  auto counts = kernels::parallel::socle_power_counts(group);
  counts.push_back(1);
  for (std::uint32_t n = 0; n + 1 < counts.size(); ++n) {
    std::uint64_t ratio = counts[n] / counts[n + 1], dim = 0;
    while (ratio > 1) {
      ratio /= spec.p;
      ++dim;
    }
    if (dim) d.u[n] = dim;
  }
  return d;
}

bool isomorphic_by_ulm(const IsoTypeSpec& a, const IsoTypeSpec& b) {
  return a.p == b.p && ulm_invariants(a) == ulm_invariants(b);
}

IsoTypeSpec iso_type_of(const FiniteGroupSpec& spec) {
  IsoTypeSpec t;
  t.p = spec.p;
  for (auto n : spec.exponents) ++t.character.finite[n];
  return t;
}

}  // namespace pgl
