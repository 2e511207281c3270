#include "pgl/element_id.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>

namespace pgl {

ElementId ElementId::from_u64(std::uint64_t v, std::uint32_t p) {
  ElementId x;
  for (std::uint32_t pos = 0; v; ++pos, v /= p)
    if (v % p) x.terms_.emplace_back(pos, static_cast<std::uint32_t>(v % p));
  return x;
}

ElementId ElementId::from_terms(std::vector<Term> terms) {
  std::erase_if(terms, [](const Term& t) { return t.second == 0; });
  std::sort(terms.begin(), terms.end());
  for (std::size_t i = 1; i < terms.size(); ++i)
    if (terms[i].first == terms[i - 1].first) throw std::invalid_argument("duplicate digit position");
  ElementId x;
  x.terms_ = std::move(terms);
  return x;
}

std::uint32_t ElementId::digit(std::uint32_t position) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), Term{position, 0});
  return it != terms_.end() && it->first == position ? it->second : 0;
}

std::optional<std::uint64_t> ElementId::to_u64(std::uint32_t p) const {
  unsigned __int128 v = 0;
  for (const auto& [pos, d] : terms_) {
    unsigned __int128 w = d;
    for (std::uint32_t i = 0; i < pos; ++i) {
      w *= p;
      if (w >> 64) return std::nullopt;
    }
    v += w;
    if (v >> 64) return std::nullopt;
  }
  return static_cast<std::uint64_t>(v);
}

std::string ElementId::to_string(std::uint32_t p) const {
  if (auto v = to_u64(p)) return std::to_string(*v);
  using boost::multiprecision::cpp_int;
  cpp_int v = 0;
  for (const auto& [pos, d] : terms_) v += cpp_int(d) * boost::multiprecision::pow(cpp_int(p), pos);
  return v.str();
}

std::strong_ordering operator<=>(const ElementId& a, const ElementId& b) {
  auto ia = a.terms_.rbegin(), ib = b.terms_.rbegin();
  for (; ia != a.terms_.rend() && ib != b.terms_.rend(); ++ia, ++ib) {
    if (ia->first != ib->first) return ia->first <=> ib->first;
    if (ia->second != ib->second) return ia->second <=> ib->second;
  }
  if (ia != a.terms_.rend()) return std::strong_ordering::greater;
  if (ib != b.terms_.rend()) return std::strong_ordering::less;
  return std::strong_ordering::equal;
}

std::size_t ElementIdHash::operator()(const ElementId& x) const {
  std::size_t h = 1469598103934665603ull;
  for (const auto& [pos, d] : x.terms()) {
    h = (h ^ pos) * 1099511628211ull;
    h = (h ^ d) * 1099511628211ull;
  }
  return h;
}

}  // namespace pgl
