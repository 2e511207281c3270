#pragma once

// Two-argument functions f(i, s), nondecreasing in s, with a limit m_i for
// every row.  Only finitely presented tables are representable: either a
// finite list of explicit rows whose last value repeats forever, or the
// staircase f(i, s) = min(i + offset, s) with infinitely many rows.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pgl {

class SFunction {
 public:
  enum class Kind { table, staircase };

  /// Throws std::invalid_argument naming the first empty or decreasing row.
  static SFunction table(std::vector<std::vector<std::uint32_t>> rows);
  static SFunction staircase(std::uint32_t offset);

  Kind kind() const { return kind_; }
  const std::vector<std::vector<std::uint32_t>>& rows() const { return rows_; }
  std::uint32_t offset() const { return offset_; }

  /// Number of rows, or nullopt when there are infinitely many.
  std::optional<std::size_t> row_count() const;

  std::uint32_t value(std::size_t i, std::uint64_t s) const;
  std::uint32_t limit(std::size_t i) const;
  /// First stage from which row i is constant.
  std::uint64_t settle_stage(std::size_t i) const;

  /// Limits strictly increase.
  bool is_s1() const;

  friend bool operator==(const SFunction&, const SFunction&) = default;

 private:
  Kind kind_ = Kind::table;
  std::vector<std::vector<std::uint32_t>> rows_;
  std::uint32_t offset_ = 0;
};

/// The first n limits m_0, ..., m_{n-1} (fewer if the table is shorter).
std::vector<std::uint32_t> sfunction_limits(const SFunction& f, std::size_t n);

}  // namespace pgl
