#include "pgl/sfunction.hpp"

#include <algorithm>
#include <stdexcept>

namespace pgl {

SFunction SFunction::table(std::vector<std::vector<std::uint32_t>> rows) {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].empty()) throw std::invalid_argument("sfunction row " + std::to_string(i) + " is empty");
    if (!std::is_sorted(rows[i].begin(), rows[i].end()))
      throw std::invalid_argument("sfunction row " + std::to_string(i) + " is not monotone");
  }
  SFunction f;
  f.kind_ = Kind::table;
  f.rows_ = std::move(rows);
  return f;
}

SFunction SFunction::staircase(std::uint32_t offset) {
  SFunction f;
  f.kind_ = Kind::staircase;
  f.offset_ = offset;
  return f;
}

std::optional<std::size_t> SFunction::row_count() const {
  if (kind_ == Kind::staircase) return std::nullopt;
  return rows_.size();
}

std::uint32_t SFunction::value(std::size_t i, std::uint64_t s) const {
  if (kind_ == Kind::staircase) return static_cast<std::uint32_t>(std::min<std::uint64_t>(i + offset_, s));
  const auto& row = rows_.at(i);
  return row[std::min<std::uint64_t>(s, row.size() - 1)];
}

std::uint32_t SFunction::limit(std::size_t i) const {
  if (kind_ == Kind::staircase) return static_cast<std::uint32_t>(i + offset_);
  return rows_.at(i).back();
}

std::uint64_t SFunction::settle_stage(std::size_t i) const {
  if (kind_ == Kind::staircase) return i + offset_;
  const auto& row = rows_.at(i);
  std::size_t k = row.size() - 1;
  while (k > 0 && row[k - 1] == row.back()) --k;
  return k;
}

bool SFunction::is_s1() const {
  if (kind_ == Kind::staircase) return true;
  for (std::size_t i = 1; i < rows_.size(); ++i)
    if (limit(i - 1) >= limit(i)) return false;
  return true;
}

std::vector<std::uint32_t> sfunction_limits(const SFunction& f, std::size_t n) {
  if (auto rc = f.row_count()) n = std::min(n, *rc);
  std::vector<std::uint32_t> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(f.limit(i));
  return out;
}

}  // namespace pgl
