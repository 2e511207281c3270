#include "pgl/scott.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <random>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "pgl/analyzer.hpp"
#include "pgl/invariants.hpp"
#include "pgl/kernels.hpp"

namespace pgl {

std::string to_string(FormulaShape shape) {
  switch (shape) {
    case FormulaShape::orders_and_relations:
      return "orders_and_relations";
    case FormulaShape::orders_relations_divisibility:
      return "orders_relations_divisibility";
    default:
      return "pure_diagram";
  }
}

std::string ScottFormula::serialize() const {
  std::ostringstream os;
  os << "shape " << to_string(shape) << "\nlength " << tuple_length << "\nparameters\n";
  if (shape == FormulaShape::pure_diagram) {
    os << "F";
    for (auto e : f_exponents) os << ' ' << e;
    os << "\ntuple";
    for (const auto& el : f_tuple) {
      os << " (";
      for (std::size_t i = 0; i < el.size(); ++i) os << (i ? "," : "") << el[i];
      os << ")";
    }
    os << "\n";
    return os.str();
  }
  os << "orders";
  for (auto o : orders) os << ' ' << o;
  os << "\ncap " << divisibility_cap << "\ngrid " << grid << "\n";
  return os.str();
}

std::pair<FormulaShape, std::uint32_t> formula_shape_for(const IsoTypeSpec& t) {
  const auto cls = classify_categoricity(t);
  const auto& ch = t.character;
  if (cls.level == CategoricityLevel::not_delta2_relatively || cls.level == CategoricityLevel::delta2_open)
    throw std::invalid_argument("no Scott formulas for type classified " + to_string(cls.level));
  if (!ch.bounded()) return {FormulaShape::pure_diagram, 0};
  const bool homogeneous = ch.infinite.size() == 1 && ch.finite.empty() && !ch.sfunction;
  if (homogeneous && t.divisible_rank.is_zero()) return {FormulaShape::orders_and_relations, 0};
  if (homogeneous && cls.level == CategoricityLevel::computably_categorical)
    return {FormulaShape::orders_relations_divisibility, 0};
  return {FormulaShape::orders_relations_divisibility, *ch.max_exponent()};
}

namespace {

std::uint64_t ipow(std::uint64_t b, std::uint32_t e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

template <class Elem, class Add, class Char>
std::string build_grid(std::span<const Elem> tuple, const std::vector<std::uint32_t>& orders, std::uint32_t p,
                       Add&& add, Char&& ch) {
  std::string out;
  auto rec = [&](auto&& self, std::size_t i, const Elem& acc) -> void {
    if (i == tuple.size()) {
      out.push_back(ch(acc));
      return;
    }
    Elem cur = acc;
    const auto count = ipow(p, orders[i]);
    for (std::uint64_t c = 0; c < count; ++c) {
      self(self, i + 1, cur);
      cur = add(cur, tuple[i]);
    }
  };
  rec(rec, 0, Elem{});
  return out;
}

char grid_char(FormulaShape shape, std::uint32_t cap, bool zero, bool in_d, std::uint32_t hmod) {
  if (zero) return 'z';
  if (shape == FormulaShape::orders_and_relations) return 'n';
  if (in_d) return 'd';
  return static_cast<char>('0' + std::min(hmod, cap));
}

// Exact finite-group evaluation context for a truncation.
struct Context {
  Truncation tr;
  FiniteGroup group;
  std::vector<std::uint8_t> order;
  std::vector<char> in_d;
  std::vector<std::uint32_t> hmod;

  explicit Context(const Truncation& t)
      : tr(t), group(t.spec, std::max<std::uint64_t>(t.spec.order(), search_bound())) {
    const auto table = kernels::parallel::element_table(group);
    order = table.order;
    const auto n = group.order();
    in_d.assign(n, 0);
    hmod.assign(n, 0);
    for (std::uint64_t x = 0; x < n; ++x) {
      auto e = group.element(x);
      for (std::size_t i = 0; i < e.size(); ++i)
        if (tr.divisible_summand[i]) e[i] = 0;
      const auto proj = group.index_of(e);
      in_d[x] = proj == 0;
      hmod[x] = proj == 0 ? kInfiniteHeight : table.height[proj];
    }
  }

  ScottFormula formula(FormulaShape shape, std::uint32_t cap, std::span<const std::uint64_t> tuple) const {
    ScottFormula f;
    f.shape = shape;
    f.tuple_length = static_cast<std::uint32_t>(tuple.size());
    f.divisibility_cap = cap;
    for (auto x : tuple) f.orders.push_back(order[x]);
    f.grid = build_grid<std::uint64_t>(
        tuple, f.orders, group.p(), [&](std::uint64_t a, std::uint64_t b) { return group.add(a, b); },
        [&](std::uint64_t x) { return grid_char(shape, cap, x == 0, in_d[x], hmod[x]); });
    return f;
  }
};

struct Hash128 {
  std::uint64_t a, b;
  friend bool operator==(const Hash128&, const Hash128&) = default;
  friend auto operator<=>(const Hash128&, const Hash128&) = default;
};

Hash128 hash_text(const std::string& s) {
  std::uint64_t a = 1469598103934665603ull, b = 0x9e3779b97f4a7c15ull;
  for (unsigned char c : s) {
    a = (a ^ c) * 1099511628211ull;
    b = (b ^ c) * 0x100000001b3ull + 0x7f4a7c15ull;
    b ^= b >> 29;
  }
  return {a, b};
}

// Orbit tables of Aut(F) acting on tuples, keyed by F's exponents.
class DiagramTables {
 public:
  DiagramTables(std::uint32_t p, unsigned arity) : p_(p), arity_(arity) {}

  const std::pair<FiniteGroup, kernels::OrbitLabels>& get(const std::vector<std::uint32_t>& exps) {
    auto it = tables_.find(exps);
    if (it == tables_.end()) {
      const auto spec = FiniteGroupSpec::make(p_, exps);
      FiniteGroup f(spec, std::max<std::uint64_t>(spec.order(), 1));
      auto labels = kernels::automorphism_orbits(f, arity_);
      it = tables_.emplace(exps, std::make_pair(std::move(f), std::move(labels))).first;
    }
    return it->second;
  }

 private:
  std::uint32_t p_;
  unsigned arity_;
  std::map<std::vector<std::uint32_t>, std::pair<FiniteGroup, kernels::OrbitLabels>> tables_;
};

// Tuple given by per-summand coordinates (exponent, coords per tuple member).
ScottFormula diagram_formula(std::uint32_t p, const std::vector<std::uint32_t>& exps,
                             const std::vector<Element>& coords, DiagramTables& tables) {
  ScottFormula f;
  f.shape = FormulaShape::pure_diagram;
  f.tuple_length = static_cast<std::uint32_t>(coords.size());
  f.f_exponents = exps;
  const auto& [group, labels] = tables.get(exps);
  std::uint64_t idx = 0;
  for (const auto& c : coords) idx = idx * group.order() + group.index_of(c);
  auto rep = labels[idx];
  f.f_tuple.resize(coords.size());
  for (std::size_t i = coords.size(); i-- > 0;) {
    f.f_tuple[i] = group.element(rep % group.order());
    rep /= group.order();
  }
  (void)p;
  return f;
}

ScottFormula diagram_in_truncation(const Truncation& tr, std::span<const Element> tuple, DiagramTables& tables) {
  std::vector<std::uint32_t> exps;
  std::vector<Element> coords(tuple.size());
  for (std::size_t i = 0; i < tr.spec.rank(); ++i) {
    bool used = false;
    for (const auto& g : tuple) used |= g[i] != 0;
    if (!used) continue;
    exps.push_back(tr.spec.exponents[i]);
    for (std::size_t j = 0; j < tuple.size(); ++j) coords[j].push_back(tuple[j][i]);
  }
  return diagram_formula(tr.spec.p, exps, coords, tables);
}

}  // namespace

Truncation make_truncation(const IsoTypeSpec& t, const FiniteGroupSpec& spec) {
  if (spec.p != t.p) throw std::invalid_argument("truncation prime differs from type");
  Truncation tr{spec, std::vector<bool>(spec.rank(), false)};
  const auto& ch = t.character;
  std::map<std::uint32_t, std::uint64_t> count;
  std::uint64_t d_count = 0;
  std::optional<std::uint32_t> d_exp;
  const auto top = ch.max_exponent();
  for (std::size_t i = 0; i < spec.rank(); ++i) {
    const auto n = spec.exponents[i];
    if (top && !t.divisible_rank.is_zero() && n >= *top + 3) {
      if (d_exp && *d_exp != n) throw std::invalid_argument("divisible summands truncated unevenly");
      d_exp = n;
      tr.divisible_summand[i] = true;
      ++d_count;
    } else {
      ++count[n];
    }
  }
  if (t.divisible_rank.omega ? d_count == 0 : d_count != t.divisible_rank.n)
    throw std::invalid_argument("truncation has " + std::to_string(d_count) +
                                " divisible summands, expected rank " + t.divisible_rank.to_string());
  if (!top && !t.divisible_rank.is_zero())
    throw std::invalid_argument("unbounded types with divisible part have no truncation policy");
  for (const auto& [n, k] : count) {
    const auto m = ch.multiplicity(n);
    if (m < k) throw std::invalid_argument("truncation has too many summands of exponent " + std::to_string(n));
  }
  if (top)
    for (std::uint32_t n = 1; n <= *top; ++n) {
      const auto m = ch.multiplicity(n);
      if (m != kOmega && m != count[n])
        throw std::invalid_argument("truncation drops finite-part summands of exponent " + std::to_string(n));
    }
  return tr;
}

FiniteGroupSpec policy_truncation(const IsoTypeSpec& t, std::uint64_t bound) {
  const auto& ch = t.character;
  std::vector<std::uint32_t> exps;
  const auto top = ch.max_exponent();
  if (top) {
    const std::uint32_t d_copies = t.divisible_rank.omega ? 1 : t.divisible_rank.n;
    for (std::uint32_t i = 0; i < d_copies; ++i) exps.push_back(*top + 3);
    for (std::uint32_t n = 1; n <= *top; ++n) {
      const auto m = ch.multiplicity(n);
      if (m != kOmega)
        for (std::uint64_t i = 0; i < m; ++i) exps.push_back(n);
    }
  } else {
    for (const auto& [n, k] : ch.finite)
      for (std::uint64_t i = 0; i < k; ++i) exps.push_back(n);
  }
  auto order_of_exps = [&](const std::vector<std::uint32_t>& e) {
    double bits = 0;
    for (auto n : e) bits += n * std::log2(t.p);
    return bits;
  };
  const double limit = std::log2(static_cast<double>(bound)) + 1e-9;
  if (order_of_exps(exps) > limit) throw std::invalid_argument("finite part alone exceeds the bound");
  std::vector<std::uint32_t> extra(ch.infinite.begin(), ch.infinite.end());
  if (!top) {
    for (std::size_t i = 0;; ++i) {
      const auto m = ch.sfunction->limit(i);
      if (m == 0) continue;
      if (m * std::log2(t.p) > limit) break;
      extra.push_back(m);
      if (extra.size() > 64) break;
    }
  }
  bool added = true;
  std::vector<std::uint32_t> copies(extra.size(), 0);
  while (added) {
    added = false;
    for (std::size_t i = 0; i < extra.size(); ++i) {
      if (!top && copies[i] >= 1) continue;
      auto trial = exps;
      trial.push_back(extra[i]);
      if (order_of_exps(trial) <= limit) {
        exps = std::move(trial);
        ++copies[i];
        added = true;
      }
    }
  }
  return FiniteGroupSpec::make(t.p, exps);
}

ScottFormula formula_in_truncation(const Truncation& tr, FormulaShape shape, std::uint32_t cap,
                                   std::span<const Element> tuple) {
  if (shape == FormulaShape::pure_diagram) {
    DiagramTables tables(tr.spec.p, static_cast<unsigned>(tuple.size()));
    return diagram_in_truncation(tr, tuple, tables);
  }
  const Context ctx(tr);
  std::vector<std::uint64_t> idx;
  for (const auto& g : tuple) idx.push_back(ctx.group.index_of(g));
  return ctx.formula(shape, cap, idx);
}

ScottReport verify_scott_family(const IsoTypeSpec& t, const FiniteGroupSpec& truncation, unsigned tuple_length,
                                std::uint64_t samples, std::uint64_t seed) {
  const auto [shape, cap] = formula_shape_for(t);
  const auto tr = make_truncation(t, truncation);
  ScottReport report;
  if (tuple_length == 0) return report;
  const Context ctx(tr);
  const auto& group = ctx.group;
  const auto n = group.order();

  auto tuple_of = [&](std::uint64_t idx) {
    std::vector<std::uint64_t> out(tuple_length);
    for (unsigned i = tuple_length; i-- > 0;) {
      out[i] = idx % n;
      idx /= n;
    }
    return out;
  };
  auto elements_of = [&](std::uint64_t idx) {
    std::vector<Element> out;
    for (auto x : tuple_of(idx)) out.push_back(group.element(x));
    return out;
  };

  // Orbits of automorphisms that preserve the truncated divisible part.
  std::vector<std::vector<std::uint32_t>> perms;
  for (const auto& aut : elementary_automorphisms(tr.spec)) {
    auto perm = as_permutation(aut, group);
    bool keeps_d = true;
    for (std::size_t i = 0; i < tr.spec.rank(); ++i)
      if (tr.divisible_summand[i] && !ctx.in_d[perm[group.basis(i)]]) keeps_d = false;
    if (keeps_d || shape == FormulaShape::pure_diagram) perms.push_back(std::move(perm));
  }
  const auto labels = kernels::parallel::tuple_orbits(group, perms, tuple_length);
  const auto total = static_cast<std::uint64_t>(labels.size());
  report.tuples = total;

  std::map<Hash128, std::vector<std::uint32_t>> classes;  // formula -> distinct orbit labels
  if (shape == FormulaShape::pure_diagram) {
    DiagramTables tables(tr.spec.p, tuple_length);
    std::vector<Hash128> hashes(total);
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      const auto tuple = elements_of(idx);
      hashes[idx] = hash_text(diagram_in_truncation(tr, tuple, tables).serialize());
    }
    std::map<Hash128, std::set<std::uint32_t>> seen;
    for (std::uint64_t idx = 0; idx < total; ++idx) seen[hashes[idx]].insert(labels[idx]);
    for (auto& [h, s] : seen) classes[h] = std::vector<std::uint32_t>(s.begin(), s.end());
  } else {
    std::vector<std::uint32_t> reps;
    for (std::uint64_t idx = 0; idx < total; ++idx)
      if (labels[idx] == idx) reps.push_back(static_cast<std::uint32_t>(idx));
    std::vector<Hash128> hashes(reps.size());
#pragma omp parallel for schedule(dynamic, 64)
    for (std::int64_t r = 0; r < static_cast<std::int64_t>(reps.size()); ++r) {
      const auto tuple = tuple_of(reps[r]);
      hashes[r] = hash_text(ctx.formula(shape, cap, tuple).serialize());
    }
    std::unordered_map<std::uint32_t, Hash128> rep_hash;
    for (std::size_t r = 0; r < reps.size(); ++r) {
      classes[hashes[r]].push_back(reps[r]);
      rep_hash[reps[r]] = hashes[r];
    }
    std::mt19937_64 rng(seed);
    for (std::uint64_t s = 0; s < samples; ++s) {
      const auto idx = rng() % total;
      const auto direct = hash_text(ctx.formula(shape, cap, tuple_of(idx)).serialize());
      if (!(direct == rep_hash.at(labels[idx])))
        throw std::logic_error("formula differs inside an automorphism orbit");
      ++report.invariance_samples;
    }
  }
  report.formula_classes = classes.size();
  for (const auto& [h, members] : classes) {
    report.orbits += members.size();
    const auto first = elements_of(members[0]);
    for (std::size_t m = 1; m < members.size(); ++m) {
      const auto other = elements_of(members[m]);
      std::vector<std::pair<Element, Element>> pairs;
      for (unsigned i = 0; i < tuple_length; ++i) pairs.emplace_back(first[i], other[i]);
      ++report.automorphism_checks;
      if (!extend_to_automorphism(pairs, tr.spec)) report.violations.emplace_back(first, other);
    }
  }
  return report;
}

}  // namespace pgl

namespace pgl {

namespace {

struct PresentationProbe {
  const StagedPresentation& g;
  ChainView view;
  std::vector<bool> d_chain;

  PresentationProbe(const StagedPresentation& pres, std::uint64_t budget) : g(pres), view(analyze(pres, budget)) {
    for (const auto& chain : view.chains)
      d_chain.push_back(g.divisible_oracle(ElementId::power(chain[0]), budget) == Verdict::yes);
  }

  // (in D, height modulo D)
  std::pair<bool, std::uint32_t> classify(const ElementId& x) const {
    std::uint32_t h = kInfiniteHeight;
    bool any = false;
    for (const auto& [c, digits] : view.coordinates(g, x)) {
      if (d_chain[c]) continue;
      any = true;
      h = std::min(h, view.length(c) - digits.rbegin()->first);
    }
    return {!any, h};
  }
};

ScottFormula formula_on_presentation(FormulaShape shape, std::uint32_t cap, const StagedPresentation& g,
                                     std::span<const ElementId> tuple, std::uint64_t budget) {
  const PresentationProbe probe(g, budget);
  ScottFormula f;
  f.shape = shape;
  f.tuple_length = static_cast<std::uint32_t>(tuple.size());
  if (shape == FormulaShape::pure_diagram) {
    std::map<std::uint32_t, std::vector<std::uint64_t>> support;  // chain -> coordinate per member
    for (std::size_t j = 0; j < tuple.size(); ++j) {
      for (const auto& [c, digits] : probe.view.coordinates(g, tuple[j])) {
        auto& col = support[c];
        col.resize(tuple.size(), 0);
        const auto len = probe.view.length(c);
        std::uint64_t k = 0;
        for (std::uint32_t l = 1; l <= len; ++l) {
          k *= g.p();
          if (auto it = digits.find(l); it != digits.end()) k += it->second;
        }
        col[j] = k;
      }
    }
    std::vector<std::uint32_t> chains;
    for (const auto& [c, col] : support) chains.push_back(c);
    std::stable_sort(chains.begin(), chains.end(),
                     [&](auto a, auto b) { return probe.view.length(a) > probe.view.length(b); });
    std::vector<std::uint32_t> exps;
    std::vector<Element> coords(tuple.size());
    double bits = 0;
    for (auto c : chains) {
      exps.push_back(probe.view.length(c));
      bits += probe.view.length(c) * std::log2(g.p()) * tuple.size();
      for (std::size_t j = 0; j < tuple.size(); ++j) coords[j].push_back(support[c][j]);
    }
    if (bits > 28) throw std::runtime_error("no pure enclosing subgroup small enough within budget");
    DiagramTables tables(g.p(), static_cast<unsigned>(tuple.size()));
    return diagram_formula(g.p(), exps, coords, tables);
  }
  f.divisibility_cap = cap;
  double bits = 0;
  for (const auto& x : tuple) {
    f.orders.push_back(order_of(g, x));
    bits += f.orders.back() * std::log2(g.p());
  }
  if (bits > 20) throw std::runtime_error("tuple generates too large a subgroup to tabulate");
  f.grid = build_grid<ElementId>(
      tuple, f.orders, g.p(), [&](const ElementId& a, const ElementId& b) { return g.add(a, b); },
      [&](const ElementId& x) {
        if (x.is_zero()) return 'z';
        const auto [in_d, h] = probe.classify(x);
        return grid_char(shape, cap, false, in_d, h);
      });
  return f;
}

}  // namespace

ScottFormula generate_scott_formula(const IsoTypeSpec& t, const StagedPresentation& g,
                                    std::span<const ElementId> tuple, std::uint64_t budget) {
  const auto [shape, cap] = formula_shape_for(t);
  return formula_on_presentation(shape, cap, g, tuple, budget);
}

StageVerdict satisfies(const StagedPresentation& g, std::span<const ElementId> tuple, const ScottFormula& phi,
                       std::uint64_t budget) {
  if (tuple.size() != phi.tuple_length) throw std::invalid_argument("arity mismatch");
  const auto mine = formula_on_presentation(phi.shape, phi.divisibility_cap, g, tuple, budget);
  if (mine == phi) return {Verdict::yes, budget};
  if (phi.shape == FormulaShape::pure_diagram) return {Verdict::unknown, budget};
  // Orders and relations are computable, so a mismatch there is final.
  if (mine.orders != phi.orders) return {Verdict::no, budget};
  bool final_no = false;
  for (std::size_t i = 0; i < phi.grid.size(); ++i) {
    const char a = mine.grid[i], b = phi.grid[i];
    if (a == b) continue;
    if (a == 'z' || b == 'z') final_no = true;
    // D membership is decided by the oracle in computable mode.
    else if ((a == 'd' || b == 'd') && g.mode() == InfMode::computable) final_no = true;
    // A found height witness is permanent: more height than the formula allows is final.
    else if (a != 'd' && b != 'd' && a > b) final_no = true;
  }
  return {final_no ? Verdict::no : Verdict::unknown, budget};
}

}  // namespace pgl
