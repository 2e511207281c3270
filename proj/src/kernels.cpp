#include "pgl/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <stdexcept>

namespace pgl::kernels {

namespace {

std::uint8_t clamp8(std::uint32_t v) { return static_cast<std::uint8_t>(std::min<std::uint32_t>(v, 255)); }

std::uint64_t tuple_count(const FiniteGroup& group, unsigned arity) {
  std::uint64_t n = 1;
  for (unsigned i = 0; i < arity; ++i) {
    n *= group.order();
    if (n > (std::uint64_t{1} << 28)) throw std::length_error("tuple space too large for orbit table");
  }
  return n;
}

std::uint64_t apply_to_tuple(std::uint64_t t, const std::vector<std::uint32_t>& perm, std::uint64_t n,
                             unsigned arity) {
  std::uint64_t out = 0, mult = 1;
  for (unsigned i = 0; i < arity; ++i) {
    out += perm[t % n] * mult;
    t /= n;
    mult *= n;
  }
  return out;
}

struct UnionFind {
  std::vector<std::uint32_t> parent;
  explicit UnionFind(std::uint64_t n) : parent(n) {
    for (std::uint64_t i = 0; i < n; ++i) parent[i] = static_cast<std::uint32_t>(i);
  }
  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b)
      parent[b] = a;
    else
      parent[a] = b;
  }
  OrbitLabels labels() {
    OrbitLabels out(parent.size());
    for (std::size_t i = 0; i < parent.size(); ++i) out[i] = find(static_cast<std::uint32_t>(i));
    return out;
  }
};

std::vector<std::uint64_t> power_images(const FiniteGroup& group, std::uint64_t x, std::uint32_t top) {
  std::vector<std::uint64_t> out{x};
  for (std::uint32_t n = 1; n <= top; ++n) out.push_back(group.scale(group.p(), out.back()));
  return out;
}

}  // namespace

namespace serial {

ElementTable element_table(const FiniteGroup& group) {
  ElementTable t;
  t.order.resize(group.order());
  t.height.resize(group.order());
  for (std::uint64_t x = 0; x < group.order(); ++x) {
    t.order[x] = clamp8(group.order_exponent(x));
    t.height[x] = clamp8(group.height(x));
  }
  return t;
}

SocleCounts socle_power_counts(const FiniteGroup& group) {
  const std::uint32_t top = group.rank() ? group.spec().exponents.front() : 0;
  // in_power[n][y] : y in p^n G
  std::vector<std::vector<char>> in_power(top + 1, std::vector<char>(group.order(), 0));
  for (std::uint64_t x = 0; x < group.order(); ++x) {
    const auto imgs = power_images(group, x, top);
    for (std::uint32_t n = 0; n <= top; ++n) in_power[n][imgs[n]] = 1;
  }
  SocleCounts counts(top + 1, 0);
  for (std::uint64_t y = 0; y < group.order(); ++y) {
    if (group.scale(group.p(), y) != 0) continue;
    for (std::uint32_t n = 0; n <= top; ++n)
      if (in_power[n][y]) ++counts[n];
  }
  return counts;
}

OrbitLabels tuple_orbits(const FiniteGroup& group, std::span<const std::vector<std::uint32_t>> perms,
                         unsigned arity) {
  const auto n = group.order();
  const auto total = tuple_count(group, arity);
  UnionFind uf(total);
  for (const auto& perm : perms)
    for (std::uint64_t t = 0; t < total; ++t)
      uf.unite(static_cast<std::uint32_t>(t), static_cast<std::uint32_t>(apply_to_tuple(t, perm, n, arity)));
  return uf.labels();
}

}  // namespace serial

namespace parallel {

ElementTable element_table(const FiniteGroup& group) {
  ElementTable t;
  const auto n = static_cast<std::int64_t>(group.order());
  t.order.resize(n);
  t.height.resize(n);
#pragma omp parallel for schedule(static)
  for (std::int64_t x = 0; x < n; ++x) {
    t.order[x] = clamp8(group.order_exponent(x));
    t.height[x] = clamp8(group.height(x));
  }
  return t;
}

SocleCounts socle_power_counts(const FiniteGroup& group) {
  const std::uint32_t top = group.rank() ? group.spec().exponents.front() : 0;
  const auto n = static_cast<std::int64_t>(group.order());
  std::vector<std::vector<char>> in_power(top + 1, std::vector<char>(n, 0));
  // Distinct x may write the same cell; every write stores 1, so the race is benign
  // only in the C++ sense of an atomic store.
#pragma omp parallel for schedule(static)
  for (std::int64_t x = 0; x < n; ++x) {
    const auto imgs = power_images(group, x, top);
    for (std::uint32_t k = 0; k <= top; ++k) {
#pragma omp atomic write
      in_power[k][imgs[k]] = 1;
    }
  }
  SocleCounts counts(top + 1, 0);
  for (std::uint32_t k = 0; k <= top; ++k) {
    std::uint64_t c = 0;
#pragma omp parallel for reduction(+ : c) schedule(static)
    for (std::int64_t y = 0; y < n; ++y)
      if (in_power[k][y] && group.scale(group.p(), y) == 0) ++c;
    counts[k] = c;
  }
  return counts;
}

OrbitLabels tuple_orbits(const FiniteGroup& group, std::span<const std::vector<std::uint32_t>> perms,
                         unsigned arity) {
  const auto n = group.order();
  const auto total = tuple_count(group, arity);
  UnionFind uf(total);
  std::vector<std::uint32_t> image(total);
  for (const auto& perm : perms) {
#pragma omp parallel for schedule(static)
    for (std::int64_t t = 0; t < static_cast<std::int64_t>(total); ++t)
      image[t] = static_cast<std::uint32_t>(apply_to_tuple(t, perm, n, arity));
    for (std::uint64_t t = 0; t < total; ++t) uf.unite(static_cast<std::uint32_t>(t), image[t]);
  }
  return uf.labels();
}

}  // namespace parallel

OrbitLabels automorphism_orbits(const FiniteGroup& group, unsigned arity) {
  std::vector<std::vector<std::uint32_t>> perms;
  for (const auto& aut : elementary_automorphisms(group.spec())) perms.push_back(as_permutation(aut, group));
  return parallel::tuple_orbits(group, perms, arity);
}

}  // namespace pgl::kernels
