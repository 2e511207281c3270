#pragma once

// Exact arithmetic and exhaustive search over finite Abelian p-groups given
// as direct sums of cyclic groups Z(p^n_1) + ... + Z(p^n_r).
//
// Everything in this header is a ground-truth oracle for the staged
// machinery elsewhere in the library, so algorithms here favour plain
// enumeration over cleverness.

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pgl {

inline constexpr std::uint32_t kInfiniteHeight = std::numeric_limits<std::uint32_t>::max();

bool is_prime(std::uint64_t n);

/// Upper bound on the order of groups the brute-force searches will touch.
/// Defaults to 2^16; the PGL_MAX_ORDER environment variable overrides it.
std::uint64_t search_bound();

/// A finite p-group Z(p^{n_0}) + ... + Z(p^{n_{r-1}}).  The exponent list is
/// kept in canonical (descending) order.
struct FiniteGroupSpec {
  std::uint32_t p = 2;
  std::vector<std::uint32_t> exponents;

  /// Validates and canonicalises.  Throws std::invalid_argument for a
  /// non-prime p or a zero exponent, std::overflow_error if the order does
  /// not fit in 62 bits.
  static FiniteGroupSpec make(std::uint32_t p, std::vector<std::uint32_t> exponents);

  std::uint64_t order() const;
  std::size_t rank() const { return exponents.size(); }
  std::uint64_t modulus(std::size_t i) const;
  std::string to_string() const;

  friend bool operator==(const FiniteGroupSpec&, const FiniteGroupSpec&) = default;
};

/// Coordinates aligned with FiniteGroupSpec::exponents.
using Element = std::vector<std::uint64_t>;

Element zero_element(const FiniteGroupSpec& spec);
void check_element(const Element& g, const FiniteGroupSpec& spec);

Element add(const Element& a, const Element& b, const FiniteGroupSpec& spec);
Element negate(const Element& a, const FiniteGroupSpec& spec);
Element scale(std::uint64_t c, const Element& a, const FiniteGroupSpec& spec);
bool is_zero(const Element& a);

/// Smallest n with p^n * g = 0.
std::uint32_t order_exponent(const Element& g, const FiniteGroupSpec& spec);

/// Largest n with g in p^n G; kInfiniteHeight for g = 0.
std::uint32_t height(const Element& g, const FiniteGroupSpec& spec);

/// Index arithmetic over an enumerable finite group.  Indices follow the
/// canonical element order: lexicographic on coordinates, first summand most
/// significant.
class FiniteGroup {
 public:
  /// Throws std::length_error when the order exceeds `bound`.
  explicit FiniteGroup(FiniteGroupSpec spec, std::uint64_t bound = search_bound());

  const FiniteGroupSpec& spec() const { return spec_; }
  std::uint32_t p() const { return spec_.p; }
  std::uint64_t order() const { return order_; }
  std::size_t rank() const { return spec_.rank(); }

  std::uint64_t index_of(const Element& g) const;
  Element element(std::uint64_t index) const;

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t negate(std::uint64_t a) const;
  std::uint64_t scale(std::uint64_t c, std::uint64_t a) const;

  std::uint32_t order_exponent(std::uint64_t a) const;
  std::uint32_t height(std::uint64_t a) const;

  /// Index of the i-th canonical basis element e_i.
  std::uint64_t basis(std::size_t i) const { return stride_[i]; }

 private:
  FiniteGroupSpec spec_;
  std::uint64_t order_ = 1;
  std::vector<std::uint64_t> modulus_;
  std::vector<std::uint64_t> stride_;
};

/// A subgroup given by generators together with its enumerated closure,
/// sorted in canonical element order.
struct Subgroup {
  std::vector<Element> generators;
  std::vector<Element> elements;

  static Subgroup generated_by(std::vector<Element> generators, const FiniteGroupSpec& spec);
  static Subgroup whole(const FiniteGroupSpec& spec);
  static Subgroup trivial(const FiniteGroupSpec& spec);

  std::size_t size() const { return elements.size(); }
  bool contains(const Element& g) const;
};

/// True iff every a in `sub` divisible by p^n in G is divisible by p^n in
/// `sub`.  Throws std::invalid_argument if `sub` is not closed.
bool is_pure(const Subgroup& sub, const FiniteGroupSpec& spec);

/// A complement C with sub + C = G and sub n C = 0.  Candidates are tried in
/// canonical element order; the first complement reached is returned.
/// std::nullopt means `sub` was not pure (or an internal bug).
std::optional<Subgroup> find_pure_complement(const Subgroup& sub, const FiniteGroupSpec& spec);

/// An automorphism stored as the images of the canonical basis.
struct Automorphism {
  std::vector<Element> basis_images;

  Element apply(const Element& g, const FiniteGroupSpec& spec) const;
  static Automorphism identity(const FiniteGroupSpec& spec);
  /// Checks that the basis images define a bijective endomorphism.
  bool is_valid(const FiniteGroupSpec& spec) const;
};

/// Exhaustive search for an automorphism sending each pair.first to
/// pair.second.  Basis generators are assigned in canonical order (largest
/// order first), candidate images in canonical element order.
std::optional<Automorphism> extend_to_automorphism(
    std::span<const std::pair<Element, Element>> pairs, const FiniteGroupSpec& spec);

/// Decides isomorphism by backtracking over images of a's basis in b.
/// Invariants are not consulted.  Throws std::length_error beyond `bound`.
bool brute_force_isomorphic(const FiniteGroupSpec& a, const FiniteGroupSpec& b,
                            std::uint64_t bound = search_bound());

/// Elementary automorphisms: unit scalings of one summand and transvections
/// e_j -> e_j + p^{max(0, n_i - n_j)} e_i.  Each one is a genuine automorphism.
std::vector<Automorphism> elementary_automorphisms(const FiniteGroupSpec& spec);

/// The automorphism as a permutation of element indices.
std::vector<std::uint32_t> as_permutation(const Automorphism& aut, const FiniteGroup& group);

}  // namespace pgl
