#include "pgl/character.hpp"

#include <algorithm>
#include <stdexcept>

namespace pgl {

Character Character::from_entries(const std::set<CharEntry>& entries) {
  Character c;
  for (const auto& [n, k] : entries) {
    if (n == 0 || k == 0) throw std::invalid_argument("character entries need n >= 1 and k >= 1");
    if (k > 1 && !entries.count({n, k - 1}))
      throw std::invalid_argument("character not downward closed: (" + std::to_string(n) + "," +
                                  std::to_string(k) + ") present without (" + std::to_string(n) + "," +
                                  std::to_string(k - 1) + ")");
    c.finite[n] = std::max(c.finite[n], k);
  }
  return c;
}

std::uint64_t Character::multiplicity(std::uint32_t n) const {
  if (n == 0) return 0;
  if (infinite.count(n)) return kOmega;
  std::uint64_t m = 0;
  if (auto it = finite.find(n); it != finite.end()) m = it->second;
  if (sfunction) {
    if (sfunction->kind() == SFunction::Kind::staircase) {
      if (n >= sfunction->offset()) m += 1;
    } else {
      for (std::size_t i = 0; i < sfunction->rows().size(); ++i)
        if (sfunction->limit(i) == n) ++m;
    }
  }
  return m;
}

bool Character::bounded() const { return !(sfunction && sfunction->kind() == SFunction::Kind::staircase); }

std::optional<std::uint32_t> Character::max_exponent() const {
  if (!bounded()) return std::nullopt;
  std::uint32_t top = 0;
  for (const auto& [n, k] : finite)
    if (k) top = std::max(top, n);
  for (auto n : infinite) top = std::max(top, n);
  if (sfunction)
    for (std::size_t i = 0; i < sfunction->rows().size(); ++i) top = std::max(top, sfunction->limit(i));
  return top;
}

bool Character::finite_total() const { return infinite.empty() && bounded(); }

bool Character::empty() const {
  auto top = max_exponent();
  if (!top) return false;
  for (std::uint32_t n = 1; n <= *top; ++n)
    if (multiplicity(n)) return false;
  return true;
}

std::set<CharEntry> Character::entries(std::uint32_t max_n, std::uint64_t max_k) const {
  std::set<CharEntry> out;
  for (std::uint32_t n = 1; n <= max_n; ++n) {
    const auto m = std::min(multiplicity(n), max_k);
    for (std::uint64_t k = 1; k <= m; ++k) out.insert({n, k});
  }
  return out;
}

bool same_entries(const Character& a, const Character& b) {
  if (a.bounded() != b.bounded()) return false;
  std::uint32_t top = 0;
  if (a.bounded()) {
    top = std::max(*a.max_exponent(), *b.max_exponent());
  } else {
    // Past every explicit exponent and both offsets, each side has exactly one summand per exponent.
    for (const Character* c : {&a, &b}) {
      for (const auto& [n, k] : c->finite) top = std::max(top, n);
      for (auto n : c->infinite) top = std::max(top, n);
      top = std::max(top, c->sfunction->offset());
    }
    top += 1;
  }
  for (std::uint32_t n = 1; n <= top; ++n)
    if (a.multiplicity(n) != b.multiplicity(n)) return false;
  return true;
}

}  // namespace pgl
