#pragma once

// Element ids of staged presentations.  Universes grow geometrically, so an
// id is a natural number kept as a sparse list of nonzero base-p digits.
// The radix is not stored: comparison only needs digit positions and values.

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace pgl {

class ElementId {
 public:
  using Term = std::pair<std::uint32_t, std::uint32_t>;  // (position, digit), digit != 0

  ElementId() = default;
  static ElementId from_u64(std::uint64_t v, std::uint32_t p);
  /// Terms may come in any order; zero digits are dropped.  Duplicate
  /// positions throw std::invalid_argument.
  static ElementId from_terms(std::vector<Term> terms);
  /// p^n.
  static ElementId power(std::uint32_t n) { return from_terms({{n, 1}}); }

  bool is_zero() const { return terms_.empty(); }
  const std::vector<Term>& terms() const { return terms_; }
  std::uint32_t digit(std::uint32_t position) const;
  /// Highest nonzero position; -1 for zero.
  std::int64_t top() const { return terms_.empty() ? std::int64_t{-1} : std::int64_t{terms_.back().first}; }

  std::optional<std::uint64_t> to_u64(std::uint32_t p) const;
  std::string to_string(std::uint32_t p) const;

  friend bool operator==(const ElementId&, const ElementId&) = default;
  friend std::strong_ordering operator<=>(const ElementId& a, const ElementId& b);

 private:
  std::vector<Term> terms_;  // ascending position
};

struct ElementIdHash {
  std::size_t operator()(const ElementId& x) const;
};

}  // namespace pgl
