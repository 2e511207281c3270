#include "pgl/finite_core.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <sstream>
#include <unordered_set>

namespace pgl {

namespace {

std::uint64_t pow_u64(std::uint64_t base, std::uint32_t e) {
  std::uint64_t r = 1;
  while (e--) r *= base;
  return r;
}

std::uint32_t valuation(std::uint64_t x, std::uint32_t p) {
  std::uint32_t v = 0;
  while (x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::uint64_t search_bound() {
  if (const char* env = std::getenv("PGL_MAX_ORDER")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return std::uint64_t{1} << 16;
}

// ---------------------------------------------------------------------------
// FiniteGroupSpec

FiniteGroupSpec FiniteGroupSpec::make(std::uint32_t p, std::vector<std::uint32_t> exponents) {
  if (!is_prime(p)) throw std::invalid_argument("p = " + std::to_string(p) + " is not prime");
  for (auto e : exponents)
    if (e == 0) throw std::invalid_argument("cyclic exponent must be positive");
  std::stable_sort(exponents.begin(), exponents.end(), std::greater<>());
  FiniteGroupSpec spec{p, std::move(exponents)};
  (void)spec.order();
  return spec;
}

std::uint64_t FiniteGroupSpec::order() const {
  std::uint64_t total = 0;
  for (auto e : exponents) total += e;
  // p^total must fit in 62 bits.
  long double bits = static_cast<long double>(total) * std::log2(static_cast<long double>(p));
  if (bits > 62.0L) throw std::overflow_error("group order exceeds 2^62: " + to_string());
  return pow_u64(p, static_cast<std::uint32_t>(total));
}

std::uint64_t FiniteGroupSpec::modulus(std::size_t i) const { return pow_u64(p, exponents.at(i)); }

std::string FiniteGroupSpec::to_string() const {
  if (exponents.empty()) return "0";
  std::ostringstream os;
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    if (i) os << " + ";
    os << "Z(" << p << "^" << exponents[i] << ")";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Element arithmetic

Element zero_element(const FiniteGroupSpec& spec) { return Element(spec.rank(), 0); }

void check_element(const Element& g, const FiniteGroupSpec& spec) {
  if (g.size() != spec.rank())
    throw std::invalid_argument("element has " + std::to_string(g.size()) +
                                " coordinates, group has " + std::to_string(spec.rank()) +
                                " summands");
  for (std::size_t i = 0; i < g.size(); ++i)
    if (g[i] >= spec.modulus(i)) throw std::invalid_argument("coordinate out of range");
}

Element add(const Element& a, const Element& b, const FiniteGroupSpec& spec) {
  check_element(a, spec);
  check_element(b, spec);
  Element r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = (a[i] + b[i]) % spec.modulus(i);
  return r;
}

Element negate(const Element& a, const FiniteGroupSpec& spec) {
  check_element(a, spec);
  Element r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto m = spec.modulus(i);
    r[i] = (m - a[i]) % m;
  }
  return r;
}

Element scale(std::uint64_t c, const Element& a, const FiniteGroupSpec& spec) {
  check_element(a, spec);
  Element r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto m = spec.modulus(i);
    r[i] = static_cast<std::uint64_t>((static_cast<unsigned __int128>(c % m) * a[i]) % m);
  }
  return r;
}

bool is_zero(const Element& a) {
  return std::all_of(a.begin(), a.end(), [](auto x) { return x == 0; });
}

std::uint32_t order_exponent(const Element& g, const FiniteGroupSpec& spec) {
  check_element(g, spec);
  std::uint32_t n = 0;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (g[i] != 0) n = std::max(n, spec.exponents[i] - valuation(g[i], spec.p));
  return n;
}

std::uint32_t height(const Element& g, const FiniteGroupSpec& spec) {
  check_element(g, spec);
  std::uint32_t h = kInfiniteHeight;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (g[i] != 0) h = std::min(h, valuation(g[i], spec.p));
  return h;
}

// ---------------------------------------------------------------------------
// FiniteGroup

FiniteGroup::FiniteGroup(FiniteGroupSpec spec, std::uint64_t bound) : spec_(std::move(spec)) {
  order_ = spec_.order();
  if (order_ > bound)
    throw std::length_error("group " + spec_.to_string() + " of order " + std::to_string(order_) +
                            " exceeds search bound " + std::to_string(bound));
  const auto r = spec_.rank();
  modulus_.resize(r);
  stride_.resize(r);
  std::uint64_t s = 1;
  for (std::size_t i = r; i-- > 0;) {
    modulus_[i] = spec_.modulus(i);
    stride_[i] = s;
    s *= modulus_[i];
  }
}

std::uint64_t FiniteGroup::index_of(const Element& g) const {
  std::uint64_t idx = 0;
  for (std::size_t i = 0; i < g.size(); ++i) idx += g[i] * stride_[i];
  return idx;
}

Element FiniteGroup::element(std::uint64_t index) const {
  Element g(rank());
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = (index / stride_[i]) % modulus_[i];
  return g;
}

std::uint64_t FiniteGroup::add(std::uint64_t a, std::uint64_t b) const {
  std::uint64_t r = 0;
  for (std::size_t i = 0; i < modulus_.size(); ++i) {
    const auto m = modulus_[i];
    const auto x = (a / stride_[i]) % m;
    const auto y = (b / stride_[i]) % m;
    r += ((x + y) % m) * stride_[i];
  }
  return r;
}

std::uint64_t FiniteGroup::negate(std::uint64_t a) const {
  std::uint64_t r = 0;
  for (std::size_t i = 0; i < modulus_.size(); ++i) {
    const auto m = modulus_[i];
    const auto x = (a / stride_[i]) % m;
    r += ((m - x) % m) * stride_[i];
  }
  return r;
}

std::uint64_t FiniteGroup::scale(std::uint64_t c, std::uint64_t a) const {
  std::uint64_t r = 0;
  for (std::size_t i = 0; i < modulus_.size(); ++i) {
    const auto m = modulus_[i];
    const auto x = (a / stride_[i]) % m;
    r += static_cast<std::uint64_t>(static_cast<unsigned __int128>(c % m) * x % m) * stride_[i];
  }
  return r;
}

std::uint32_t FiniteGroup::order_exponent(std::uint64_t a) const {
  std::uint32_t n = 0;
  for (std::size_t i = 0; i < modulus_.size(); ++i) {
    const auto x = (a / stride_[i]) % modulus_[i];
    if (x != 0) n = std::max(n, spec_.exponents[i] - valuation(x, spec_.p));
  }
  return n;
}

std::uint32_t FiniteGroup::height(std::uint64_t a) const {
  std::uint32_t h = kInfiniteHeight;
  for (std::size_t i = 0; i < modulus_.size(); ++i) {
    const auto x = (a / stride_[i]) % modulus_[i];
    if (x != 0) h = std::min(h, valuation(x, spec_.p));
  }
  return h;
}

// ---------------------------------------------------------------------------
// Subgroups

namespace {

// Closure of a generating set, as a sorted vector of indices.
std::vector<std::uint64_t> closure(const FiniteGroup& group, const std::vector<std::uint64_t>& gens) {
  std::vector<std::uint64_t> members{0};
  std::unordered_set<std::uint64_t> seen{0};
  for (auto g : gens) {
    if (seen.count(g)) continue;
    // members := members + <g>
    std::vector<std::uint64_t> multiples;
    for (std::uint64_t x = g; x != 0 && !seen.count(x); x = group.add(x, g)) multiples.push_back(x);
    const auto base = members;
    for (auto m : multiples)
      for (auto b : base) {
        const auto s = group.add(m, b);
        if (seen.insert(s).second) members.push_back(s);
      }
  }
  std::sort(members.begin(), members.end());
  return members;
}

}  // namespace

Subgroup Subgroup::generated_by(std::vector<Element> generators, const FiniteGroupSpec& spec) {
  FiniteGroup group(spec);
  std::vector<std::uint64_t> gens;
  for (const auto& g : generators) {
    check_element(g, spec);
    gens.push_back(group.index_of(g));
  }
  Subgroup sub;
  sub.generators = std::move(generators);
  for (auto idx : closure(group, gens)) sub.elements.push_back(group.element(idx));
  return sub;
}

Subgroup Subgroup::whole(const FiniteGroupSpec& spec) {
  std::vector<Element> gens;
  for (std::size_t i = 0; i < spec.rank(); ++i) {
    Element e = zero_element(spec);
    e[i] = 1;
    gens.push_back(std::move(e));
  }
  return generated_by(std::move(gens), spec);
}

Subgroup Subgroup::trivial(const FiniteGroupSpec& spec) { return generated_by({}, spec); }

bool Subgroup::contains(const Element& g) const {
  return std::binary_search(elements.begin(), elements.end(), g);
}

namespace {

std::vector<std::uint64_t> checked_indices(const Subgroup& sub, const FiniteGroup& group) {
  std::vector<std::uint64_t> idx;
  idx.reserve(sub.elements.size());
  for (const auto& g : sub.elements) {
    check_element(g, group.spec());
    idx.push_back(group.index_of(g));
  }
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  const std::unordered_set<std::uint64_t> set(idx.begin(), idx.end());
  if (!set.count(0)) throw std::invalid_argument("subgroup does not contain 0");
  for (auto a : idx)
    for (auto b : idx)
      if (!set.count(group.add(a, b))) throw std::invalid_argument("subgroup not closed under +");
  for (const auto& g : sub.generators)
    if (!set.count(group.index_of(g))) throw std::invalid_argument("generator outside subgroup");
  return idx;
}

}  // namespace

bool is_pure(const Subgroup& sub, const FiniteGroupSpec& spec) {
  FiniteGroup group(spec);
  const auto members = checked_indices(sub, group);
  const std::uint32_t top = spec.exponents.empty() ? 0 : spec.exponents.front();
  std::vector<std::uint64_t> power = members;  // p^n * sub
  for (std::uint32_t n = 1; n <= top; ++n) {
    for (auto& x : power) x = group.scale(spec.p, x);
    std::unordered_set<std::uint64_t> in_power(power.begin(), power.end());
    for (auto a : members) {
      const auto h = group.height(a);
      if (h >= n && !in_power.count(a)) return false;
    }
  }
  return true;
}

std::optional<Subgroup> find_pure_complement(const Subgroup& sub, const FiniteGroupSpec& spec) {
  FiniteGroup group(spec);
  const auto members = checked_indices(sub, group);
  const std::uint64_t target = group.order() / members.size();
  if (target * members.size() != group.order()) return std::nullopt;
  const std::unordered_set<std::uint64_t> in_sub(members.begin(), members.end());

  std::vector<std::uint64_t> chosen;
  std::optional<std::vector<std::uint64_t>> found;

  // Depth-first over increasing generator indices.
  std::function<void(std::uint64_t, const std::vector<std::uint64_t>&)> search =
      [&](std::uint64_t start, const std::vector<std::uint64_t>& current) {
        if (found) return;
        if (current.size() == target) {
          found = chosen;
          return;
        }
        const std::unordered_set<std::uint64_t> cur(current.begin(), current.end());
        for (std::uint64_t g = start; g < group.order() && !found; ++g) {
          if (cur.count(g) || in_sub.count(g)) continue;
          auto gens = chosen;
          gens.push_back(g);
          auto next = closure(group, gens);
          if (target % next.size() != 0) continue;
          const bool meets = std::any_of(next.begin(), next.end(),
                                         [&](auto x) { return x != 0 && in_sub.count(x); });
          if (meets) continue;
          chosen.push_back(g);
          search(g + 1, next);
          chosen.pop_back();
        }
      };
  search(1, {0});
  if (!found) return std::nullopt;

  std::vector<Element> gens;
  for (auto g : *found) gens.push_back(group.element(g));
  return Subgroup::generated_by(std::move(gens), spec);
}

// ---------------------------------------------------------------------------
// Automorphisms

Element Automorphism::apply(const Element& g, const FiniteGroupSpec& spec) const {
  check_element(g, spec);
  Element r = zero_element(spec);
  for (std::size_t i = 0; i < g.size(); ++i)
    if (g[i] != 0) r = add(r, scale(g[i], basis_images[i], spec), spec);
  return r;
}

Automorphism Automorphism::identity(const FiniteGroupSpec& spec) {
  Automorphism a;
  for (std::size_t i = 0; i < spec.rank(); ++i) {
    Element e = zero_element(spec);
    e[i] = 1;
    a.basis_images.push_back(std::move(e));
  }
  return a;
}

bool Automorphism::is_valid(const FiniteGroupSpec& spec) const {
  if (basis_images.size() != spec.rank()) return false;
  FiniteGroup group(spec);
  std::vector<std::uint64_t> gens;
  for (std::size_t i = 0; i < spec.rank(); ++i) {
    check_element(basis_images[i], spec);
    if (order_exponent(basis_images[i], spec) > spec.exponents[i]) return false;
    gens.push_back(group.index_of(basis_images[i]));
  }
  return closure(group, gens).size() == group.order();
}

namespace {

// Candidate images for a basis element of exponent e: order exactly p^e and
// height sequence 0, 1, ..., e-1 (automorphisms preserve heights).
std::vector<std::uint64_t> basis_candidates(const FiniteGroup& group, std::uint32_t e) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t x = 0; x < group.order(); ++x) {
    if (group.order_exponent(x) != e) continue;
    bool ok = true;
    std::uint64_t y = x;
    for (std::uint32_t k = 0; k < e && ok; ++k) {
      ok = group.height(y) == k;
      y = group.scale(group.p(), y);
    }
    if (ok) out.push_back(x);
  }
  return out;
}

}  // namespace

std::optional<Automorphism> extend_to_automorphism(
    std::span<const std::pair<Element, Element>> pairs, const FiniteGroupSpec& spec) {
  FiniteGroup group(spec);
  const auto r = spec.rank();
  struct Constraint {
    Element source;
    std::uint64_t target;
    std::size_t last;  // largest basis index in the support of source
  };
  std::vector<Constraint> constraints;
  for (const auto& [a, b] : pairs) {
    check_element(a, spec);
    check_element(b, spec);
    if (is_zero(a)) {
      if (!is_zero(b)) return std::nullopt;
      continue;
    }
    std::size_t last = 0;
    for (std::size_t i = 0; i < r; ++i)
      if (a[i] != 0) last = i;
    constraints.push_back({a, group.index_of(b), last});
  }

  std::vector<std::vector<std::uint64_t>> candidates(r);
  for (std::size_t i = 0; i < r; ++i) candidates[i] = basis_candidates(group, spec.exponents[i]);

  std::vector<std::uint64_t> image(r, 0);
  std::vector<std::vector<std::uint64_t>> span_at(r + 1);
  span_at[0] = {0};

  std::function<bool(std::size_t)> assign = [&](std::size_t i) -> bool {
    if (i == r) return true;
    const std::unordered_set<std::uint64_t> span(span_at[i].begin(), span_at[i].end());
    for (auto x : candidates[i]) {
      // <x> meets the span trivially iff the order-p element of <x> avoids it.
      const auto socle = group.scale(pow_u64(spec.p, spec.exponents[i] - 1), x);
      if (span.count(socle)) continue;
      image[i] = x;
      bool ok = true;
      for (const auto& c : constraints) {
        if (c.last != i) continue;
        std::uint64_t v = 0;
        for (std::size_t j = 0; j <= i; ++j)
          if (c.source[j]) v = group.add(v, group.scale(c.source[j], image[j]));
        if (v != c.target) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      std::vector<std::uint64_t> gens(image.begin(), image.begin() + static_cast<long>(i) + 1);
      span_at[i + 1] = closure(group, gens);
      if (assign(i + 1)) return true;
    }
    return false;
  };
  if (!assign(0)) return std::nullopt;

  Automorphism aut;
  for (auto x : image) aut.basis_images.push_back(group.element(x));
  return aut;
}

bool brute_force_isomorphic(const FiniteGroupSpec& a, const FiniteGroupSpec& b, std::uint64_t bound) {
  if (a.p != b.p) return a.order() == 1 && b.order() == 1;
  if (a.order() > bound || b.order() > bound)
    throw std::length_error("brute_force_isomorphic: order exceeds search bound");
  if (a.order() != b.order()) return false;
  FiniteGroup target(b, bound);
  const auto r = a.rank();
  // Images of a's basis e_i must have order exactly p^{n_i}.
  std::vector<std::vector<std::uint64_t>> candidates(r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::uint64_t x = 0; x < target.order(); ++x)
      if (target.order_exponent(x) == a.exponents[i]) candidates[i].push_back(x);

  std::vector<std::uint64_t> image(r, 0);
  std::vector<std::vector<std::uint64_t>> span_at(r + 1);
  span_at[0] = {0};
  std::function<bool(std::size_t)> assign = [&](std::size_t i) -> bool {
    if (i == r) return true;
    const std::unordered_set<std::uint64_t> span(span_at[i].begin(), span_at[i].end());
    const std::uint64_t socle_mult = pow_u64(a.p, a.exponents[i] - 1);
    for (auto x : candidates[i]) {
      // Images of equal-exponent generators may be taken in increasing order.
      if (i > 0 && a.exponents[i - 1] == a.exponents[i] && x <= image[i - 1]) continue;
      if (span.count(target.scale(socle_mult, x))) continue;
      image[i] = x;
      std::vector<std::uint64_t> gens(image.begin(), image.begin() + static_cast<long>(i) + 1);
      span_at[i + 1] = closure(target, gens);
      if (assign(i + 1)) return true;
    }
    return false;
  };
  return assign(0);
}

std::vector<Automorphism> elementary_automorphisms(const FiniteGroupSpec& spec) {
  const auto r = spec.rank();
  std::vector<Automorphism> out;
  std::vector<std::uint64_t> units;
  if (spec.p == 2) {
    units = {std::uint64_t(-1), 5};
  } else {
    // A primitive root modulo p^2 generates the units modulo every p^n.
    const std::uint64_t p = spec.p, p2 = p * p;
    for (std::uint64_t g = 2; g < p2; ++g) {
      if (g % p == 0) continue;
      std::uint64_t x = 1, ord = 0;
      do {
        x = x * g % p2;
        ++ord;
      } while (x != 1);
      if (ord == p * (p - 1)) {
        units = {g};
        break;
      }
    }
  }
  for (std::size_t j = 0; j < r; ++j) {
    const auto m = spec.modulus(j);
    for (auto u : units) {
      auto a = Automorphism::identity(spec);
      a.basis_images[j][j] = (u % m + m) % m;
      if (a.basis_images[j][j] != 1) out.push_back(std::move(a));
    }
  }
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t i = 0; i < r; ++i) {
      if (i == j) continue;
      auto a = Automorphism::identity(spec);
      const std::uint32_t shift = spec.exponents[i] > spec.exponents[j] ? spec.exponents[i] - spec.exponents[j] : 0;
      std::uint64_t c = 1;
      for (std::uint32_t k = 0; k < shift; ++k) c *= spec.p;
      a.basis_images[j][i] = c % spec.modulus(i);
      out.push_back(std::move(a));
      if (spec.exponents[i] == spec.exponents[j] && i > j) {
        auto s = Automorphism::identity(spec);
        std::swap(s.basis_images[i], s.basis_images[j]);
        out.push_back(std::move(s));
      }
    }
  return out;
}

std::vector<std::uint32_t> as_permutation(const Automorphism& aut, const FiniteGroup& group) {
  std::vector<std::uint64_t> img;
  for (const auto& e : aut.basis_images) img.push_back(group.index_of(e));
  std::vector<std::uint32_t> perm(group.order());
  const auto r = group.rank();
  for (std::uint64_t x = 0; x < group.order(); ++x) {
    const auto coords = group.element(x);
    std::uint64_t y = 0;
    for (std::size_t i = 0; i < r; ++i)
      if (coords[i]) y = group.add(y, group.scale(coords[i], img[i]));
    perm[x] = static_cast<std::uint32_t>(y);
  }
  return perm;
}

}  // namespace pgl
