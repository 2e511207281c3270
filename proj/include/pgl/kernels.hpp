#pragma once

// Data-parallel sweeps over every element (or every tuple) of a finite group.
// Each kernel has a serial reference in kernels::serial and an OpenMP version
// in kernels::parallel; tests compare the two and the benchmark times them.

#include <cstdint>
#include <span>
#include <vector>

#include "pgl/finite_core.hpp"

namespace pgl::kernels {

/// Per-element order exponent and height (height clamped to 255; zero gets 255).
struct ElementTable {
  std::vector<std::uint8_t> order;
  std::vector<std::uint8_t> height;
};

/// |P_n| for n = 0..top, where P_n = {x : px = 0} n p^n G.  Membership in
/// p^n G is decided by enumerating p^n * G, not by reading coordinates.
using SocleCounts = std::vector<std::uint64_t>;

/// Orbit labels of Aut-generated permutations acting diagonally on tuples of
/// length `arity`.  label[t] is the least tuple index in the orbit of t,
/// where a tuple (x_0, ..., x_{k-1}) has index sum x_i * |G|^i.
using OrbitLabels = std::vector<std::uint32_t>;

namespace serial {
ElementTable element_table(const FiniteGroup& group);
SocleCounts socle_power_counts(const FiniteGroup& group);
OrbitLabels tuple_orbits(const FiniteGroup& group, std::span<const std::vector<std::uint32_t>> perms,
                         unsigned arity);
}  // namespace serial

namespace parallel {
ElementTable element_table(const FiniteGroup& group);
SocleCounts socle_power_counts(const FiniteGroup& group);
OrbitLabels tuple_orbits(const FiniteGroup& group, std::span<const std::vector<std::uint32_t>> perms,
                         unsigned arity);
}  // namespace parallel

/// Orbit labels under the elementary automorphisms of the group.
OrbitLabels automorphism_orbits(const FiniteGroup& group, unsigned arity);

}  // namespace pgl::kernels
