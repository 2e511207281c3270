#pragma once

// Characters (sets of pairs (n, k) read as "at least k summands of exponent n")
// and isomorphism types of p-groups of length at most omega.

#include <compare>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>

#include "pgl/sfunction.hpp"

namespace pgl {

inline constexpr std::uint64_t kOmega = std::numeric_limits<std::uint64_t>::max();

using CharEntry = std::pair<std::uint32_t, std::uint64_t>;

/// A character given by a generator descriptor: explicit finite
/// multiplicities, exponents of infinite multiplicity, and optionally an
/// s-function whose limits m_i each contribute one summand of exponent m_i.
/// Downward closure in k holds by construction.
struct Character {
  std::map<std::uint32_t, std::uint64_t> finite;
  std::set<std::uint32_t> infinite;
  std::optional<SFunction> sfunction;

  /// Throws std::invalid_argument on n = 0, k = 0 or a gap in k.
  static Character from_entries(const std::set<CharEntry>& entries);

  /// kOmega for infinite multiplicity.
  std::uint64_t multiplicity(std::uint32_t n) const;
  bool contains(std::uint32_t n, std::uint64_t k) const { return k >= 1 && multiplicity(n) >= k; }

  bool bounded() const;
  /// Largest exponent with nonzero multiplicity; nullopt when unbounded, 0 when empty.
  std::optional<std::uint32_t> max_exponent() const;
  /// Only finitely many summands in total.
  bool finite_total() const;
  bool empty() const;

  /// All entries with n <= max_n and k <= max_k.
  std::set<CharEntry> entries(std::uint32_t max_n, std::uint64_t max_k) const;
};

/// Equal as sets of pairs.
bool same_entries(const Character& a, const Character& b);

struct Rank {
  bool omega = false;
  std::uint32_t n = 0;

  static Rank finite(std::uint32_t n) { return {false, n}; }
  static Rank infinite() { return {true, 0}; }
  bool is_zero() const { return !omega && n == 0; }
  std::string to_string() const { return omega ? "omega" : std::to_string(n); }
  friend bool operator==(const Rank&, const Rank&) = default;
};

enum class InfMode { computable, sigma1 };

struct IsoTypeSpec {
  std::uint32_t p = 2;
  Rank divisible_rank;
  Character character;
  InfMode inf_mode = InfMode::computable;
};

}  // namespace pgl
