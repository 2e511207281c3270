#include "pgl/report.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "pgl/analyzer.hpp"
#include "pgl/invariants.hpp"
#include "pgl/limitwise.hpp"
#include "pgl/presentation.hpp"
#include "pgl/scott.hpp"
#include "pgl/spec_io.hpp"

namespace pgl {

namespace {

std::string header(const std::string& command, const IsoTypeSpec& t) {
  std::ostringstream os;
  os << "command: " << command << "\n";
  std::istringstream spec(print_spec(t));
  for (std::string line; std::getline(spec, line);) os << "spec." << line << "\n";
  return os.str();
}

template <class Map>
std::string census(const Map& m) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, v] : m) {
    os << (first ? "" : ",") << k << ":" << v;
    first = false;
  }
  return first ? "none" : os.str();
}

std::string group_census(const StagedPresentation& g, std::uint64_t stage) {
  const auto view = analyze(g, stage);
  std::map<std::uint32_t, std::uint64_t> reduced;
  std::uint64_t divisible = 0;
  for (std::uint32_t c = 0; c < view.chains.size(); ++c) {
    if (g.divisible_oracle(ElementId::power(view.chains[c][0]), stage) == Verdict::yes)
      ++divisible;
    else
      ++reduced[view.length(c)];
  }
  std::ostringstream os;
  os << "stage: " << stage << "\n";
  os << "universe_log_p: " << g.positions(stage) << "\n";
  os << "chains: " << view.chains.size() << "\n";
  os << "divisible_chains: " << divisible << "\n";
  os << "other_chain_lengths: " << census(reduced) << "\n";
  return os.str();
}

std::string entries(const std::set<CharEntry>& s) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [n, k] : s) {
    os << (first ? "" : ",") << n << ":" << k;
    first = false;
  }
  return first ? "none" : os.str();
}

RunResult run_build(const RunConfig& c, const IsoTypeSpec& t) {
  auto g = build_from_iso_type(t, c.seed);
  g.advance_to(c.stages);
  return {kExitOk, header("build", t) + "seed: " + std::to_string(c.seed) + "\n" + group_census(g, c.stages)};
}

RunResult run_transform(const RunConfig& c, const IsoTypeSpec& t) {
  auto a = build_equivalence(t.character, t.divisible_rank, t.inf_mode, c.seed);
  a.advance_to(c.stages);
  std::map<std::string, std::uint64_t> sizes;
  std::uint64_t infinite = 0;
  const auto& plan = a.plan();
  for (std::uint32_t k = 0; k < plan.classes().size(); ++k) {
    if (plan.classes()[k].created_stage > c.stages) continue;
    if (plan.known_infinite(k, c.stages))
      ++infinite;
    else
      ++sizes[std::to_string(plan.size_at(k, c.stages))];
  }
  std::ostringstream os;
  os << header("transform", t) << "seed: " << c.seed << "\n";
  os << "elements: " << a.universe_size(c.stages) << "\n";
  os << "classes_known_infinite: " << infinite << "\n";
  os << "other_class_sizes: " << census(sizes) << "\n";
  const auto g = transform_equiv_to_group(a, t.p);
  os << group_census(g, c.stages);
  return {kExitOk, os.str()};
}

RunResult run_invariants(const RunConfig& c, const IsoTypeSpec& t) {
  auto g = build_from_iso_type(t, c.seed);
  g.advance_to(c.budget);
  const auto cc = enumerate_character(g, c.budget);
  std::ostringstream os;
  os << header("invariants", t) << "seed: " << c.seed << "\nbudget: " << c.budget << "\n";
  os << "character_confirmed: " << entries(cc.confirmed) << "\n";
  os << "character_revisions: " << cc.revisions.size() << "\n";
  os << "ulm: " << ulm_invariants(t).to_string() << "\n";
  return {kExitOk, os.str()};
}

RunResult run_classify(const IsoTypeSpec& t) {
  const auto rel = classify_categoricity(t);
  const auto plain = classify_categoricity(t, true);
  std::ostringstream os;
  os << header("classify", t);
  os << "level: " << to_string(rel.level) << "\n";
  os << "plain_level: " << to_string(plain.level) << "\n";
  os << "plain_delta2: " << to_string(rel.plain_delta2) << "\n";
  os << "clause: " << rel.clause << "\n";
  return {kExitOk, os.str()};
}

RunResult run_iso(const RunConfig& c, const IsoTypeSpec& t) {
  const auto t2 = c.spec2_path.empty() ? t : parse_spec_file(c.spec2_path);
  auto g1 = build_from_iso_type(t, c.seed);
  auto g2 = build_from_iso_type(t2, c.seed + 1);
  const auto m = delta2_isomorphism(g1, g2, c.budget);
  std::ostringstream os;
  os << header("iso", t);
  std::istringstream spec2(print_spec(t2));
  for (std::string line; std::getline(spec2, line);) os << "spec2." << line << "\n";
  os << "seeds: " << c.seed << "," << c.seed + 1 << "\nbudget: " << c.budget << "\n";
  os << "status: " << to_string(m.status) << "\n";
  if (!m.reason.empty()) os << "reason: " << m.reason << "\n";
  if (m.status == LimitMap::Status::stabilized) os << "stabilized_prefix: " << m.prefix << "\n";
  os << "stable_since: " << m.stable_since << "\n";
  std::uint64_t total = 0;
  std::map<std::uint32_t, std::uint64_t> changed;
  for (std::uint32_t x = 0; x < m.mind_changes.size(); ++x)
    if (m.mind_changes[x]) {
      total += m.mind_changes[x];
      changed[x] = m.mind_changes[x];
    }
  os << "mind_changes_total: " << total << "\n";
  os << "mind_changes: " << census(changed) << "\n";
  os << m.dump();
  const int code = m.status == LimitMap::Status::stabilized       ? kExitOk
                   : m.status == LimitMap::Status::invariant_mismatch ? kExitViolation
                                                                      : kExitInconclusive;
  return {code, os.str()};
}

RunResult run_scott(const RunConfig& c, const IsoTypeSpec& t) {
  const auto tr = policy_truncation(t, c.bound);
  const auto [shape, cap] = formula_shape_for(t);
  const auto r = verify_scott_family(t, tr, c.length, 2000, c.seed + 1);
  std::ostringstream os;
  os << header("scott-verify", t);
  os << "truncation: " << tr.to_string() << "\n";
  os << "shape: " << to_string(shape) << "\n";
  os << "divisibility_cap: " << cap << "\n";
  os << "tuple_length: " << c.length << "\n";
  os << "tuples: " << r.tuples << "\n";
  os << "orbits: " << r.orbits << "\n";
  os << "formula_classes: " << r.formula_classes << "\n";
  os << "automorphism_checks: " << r.automorphism_checks << "\n";
  os << "violations: " << r.violations.size() << "\n";
  return {r.violations.empty() ? kExitOk : kExitViolation, os.str()};
}

RunResult run_decompose(const RunConfig& c, const IsoTypeSpec& t) {
  auto g = build_from_iso_type(t, c.seed);
  const auto d = decompose_complement(g, c.stages);
  std::ostringstream os;
  os << header("decompose", t) << "seed: " << c.seed << "\n";
  os << "scanned: " << d.scanned << "\n";
  os << "accepted:";
  for (auto x : d.accepted) os << ' ' << x;
  os << "\n";
  std::uint64_t members = 0;
  for (bool b : d.in_h) members += b;
  os << "h_members_below_scan: " << members << "\n";
  return {kExitOk, os.str()};
}

}  // namespace

RunResult run(const RunConfig& c) {
  IsoTypeSpec t;
  try {
    t = parse_spec_file(c.spec_path);
  } catch (const SpecError& e) {
    return {kExitSpecError, std::string("error: spec: ") + e.what() + "\n"};
  }
  try {
    if (c.command == "build") return run_build(c, t);
    if (c.command == "transform") return run_transform(c, t);
    if (c.command == "invariants") return run_invariants(c, t);
    if (c.command == "classify") return run_classify(t);
    if (c.command == "iso") return run_iso(c, t);
    if (c.command == "scott-verify") return run_scott(c, t);
    if (c.command == "decompose") return run_decompose(c, t);
    return {kExitSpecError, "error: unknown command '" + c.command + "'\n"};
  } catch (const SpecError& e) {
    return {kExitSpecError, std::string("error: spec2: ") + e.what() + "\n"};
  } catch (const std::invalid_argument& e) {
    return {kExitSpecError, std::string("error: input: ") + e.what() + "\n"};
  } catch (const std::length_error& e) {
    return {kExitInconclusive, std::string("error: bound: ") + e.what() + "\n"};
  } catch (const std::runtime_error& e) {
    return {kExitInconclusive, std::string("error: budget: ") + e.what() + "\n"};
  } catch (const std::logic_error& e) {
    return {kExitViolation, std::string("error: invariant: ") + e.what() + "\n"};
  }
}

}  // namespace pgl
