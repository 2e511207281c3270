#include "pgl/analyzer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace pgl {

ChainView analyze(const StagedPresentation& g, std::uint64_t stage) {
  ChainView v;
  v.p = g.p();
  v.stage = stage;
  const auto n = g.positions(stage);
  v.where.reserve(n);
  for (std::uint32_t j = 0; j < n; ++j) {
    const auto y = g.scale(g.p(), ElementId::power(j));
    if (y.is_zero()) {
      v.chains.push_back({j});
      v.where.emplace_back(static_cast<std::uint32_t>(v.chains.size() - 1), 1);
      continue;
    }
    if (y.terms().size() != 1 || y.terms()[0].second != 1 || y.top() >= j)
      throw std::logic_error("p * x_" + std::to_string(j) + " is not a chain generator");
    const auto [c, level] = v.where[y.top()];
    if (v.chains[c].size() != level)
      throw std::logic_error("p * x_" + std::to_string(j) + " lands below the top of its chain");
    v.chains[c].push_back(j);
    v.where.emplace_back(c, level + 1);
  }
  return v;
}

std::map<std::uint32_t, std::map<std::uint32_t, std::uint32_t>> ChainView::coordinates(
    const StagedPresentation& g, const ElementId& x) const {
  std::map<std::uint32_t, std::map<std::uint32_t, std::uint32_t>> out;
  ElementId y = x;
  while (!y.is_zero()) {
    const auto t = static_cast<std::uint32_t>(y.top());
    if (t >= where.size()) throw std::out_of_range("element beyond analyzed stage");
    const auto gen = ElementId::power(t);
    bool peeled = false;
    ElementId multiple;
    for (std::uint32_t c = 1; c < p && !peeled; ++c) {
      multiple = g.add(multiple, gen);
      const auto rest = g.sub(y, multiple);
      if (rest.top() < static_cast<std::int64_t>(t)) {
        out[where[t].first][where[t].second] = c;
        y = rest;
        peeled = true;
      }
    }
    if (!peeled) throw std::logic_error("could not peel generator " + std::to_string(t));
  }
  return out;
}

StageView stage_view(const StagedPresentation& g, std::uint64_t stage, std::uint64_t bound) {
  StageView sv;
  sv.chains = analyze(g, stage);
  const auto& chains = sv.chains.chains;
  std::vector<std::uint32_t> lengths;
  for (std::uint32_t c = 0; c < chains.size(); ++c) lengths.push_back(sv.chains.length(c));
  const double log_order = std::accumulate(lengths.begin(), lengths.end(), 0.0) * std::log2(g.p());
  if (log_order > 62) throw std::length_error("stage group exceeds search bound");
  sv.summand_chain.resize(chains.size());
  std::iota(sv.summand_chain.begin(), sv.summand_chain.end(), 0);
  std::stable_sort(sv.summand_chain.begin(), sv.summand_chain.end(),
                   [&](auto a, auto b) { return lengths[a] > lengths[b]; });
  std::vector<std::uint32_t> exps;
  for (auto c : sv.summand_chain) exps.push_back(lengths[c]);
  sv.spec = FiniteGroupSpec::make(g.p(), exps);
  if (sv.spec.order() > bound) throw std::length_error("stage group exceeds search bound");
  return sv;
}

Element StageView::embed(const StagedPresentation& g, const ElementId& x) const {
  std::vector<std::uint32_t> slot(summand_chain.size());
  for (std::uint32_t i = 0; i < summand_chain.size(); ++i) slot[summand_chain[i]] = i;
  Element e(summand_chain.size(), 0);
  for (const auto& [c, digits] : chains.coordinates(g, x)) {
    const auto len = chains.length(c);
    std::uint64_t k = 0;
    for (std::uint32_t l = 1; l <= len; ++l) {
      k *= g.p();
      if (auto it = digits.find(l); it != digits.end()) k += it->second;
    }
    e[slot[c]] = k;
  }
  return e;
}

ElementId StageView::lift(const StagedPresentation& g, const Element& e) const {
  check_element(e, spec);
  ElementId x;
  for (std::uint32_t i = 0; i < e.size(); ++i) {
    const auto c = summand_chain[i];
    auto k = e[i];
    for (std::uint32_t l = chains.length(c); l >= 1 && k; --l, k /= g.p())
      if (k % g.p()) x = g.add(x, g.scale(k % g.p(), ElementId::power(chains.chains[c][l - 1])));
  }
  return x;
}

}  // namespace pgl
