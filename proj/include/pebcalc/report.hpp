#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pebcalc/decide.hpp"
#include "pebcalc/pebbling.hpp"
#include "pebcalc/translate.hpp"

namespace pebcalc {

struct CorpusEntry {
  std::string name;
  Dag dag;
};

/// Which graphs `report` runs over: every single-sink DAG up to `nmax`
/// vertices (up to isomorphism), paths, pyramids and complete binary trees.
struct CorpusSpec {
  Vertex nmax = 5;
  Vertex path_max = 16;
  Vertex pyramid_max = 3;
  Vertex tree_max = 3;
};

inline std::vector<CorpusEntry> build_corpus(const CorpusSpec& spec) {
  std::vector<CorpusEntry> out;
  for (Vertex n = 1; n <= spec.nmax; ++n) {
    auto all = all_single_sink_dags(n);
    for (std::size_t k = 0; k < all.size(); ++k)
      out.push_back({"dag" + std::to_string(n) + "_" + std::to_string(k), std::move(all[k])});
  }
  for (Vertex n = 2; n <= spec.path_max; ++n) out.push_back({"path_" + std::to_string(n), make_path(n)});
  for (Vertex h = 1; h <= spec.pyramid_max; ++h) out.push_back({"pyramid_" + std::to_string(h), make_pyramid(h)});
  for (Vertex h = 1; h <= spec.tree_max; ++h) out.push_back({"binary_tree_" + std::to_string(h), make_binary_tree(h)});
  return out;
}

struct PriceReport {
  std::size_t bw = 0;
  std::size_t black = 0;
  std::size_t rev = 0;
  std::optional<int> pc_deg;
  std::optional<int> mc_deg;
  std::optional<int> ns_deg;

  bool mc_matches_black() const { return mc_deg && static_cast<std::size_t>(*mc_deg) == black; }
  bool ns_matches_rev() const { return ns_deg && static_cast<std::size_t>(*ns_deg) == rev; }
};

/// Pebbling prices from the game search next to minimal refutation degrees of
/// Peb(G) from the deciders.
template <Field F>
PriceReport price_report(const Dag& dag, const F& field, SearchLimits limits = {}, DecideOptions opt = {}) {
  PriceReport r;
  r.bw = pebbling_price(dag, GameVariant::BlackWhite, std::nullopt, limits);
  r.black = pebbling_price(dag, GameVariant::Black, std::nullopt, limits);
  r.rev = pebbling_price(dag, GameVariant::Reversible, std::nullopt, limits);
  const auto sys = pebbling_system(dag, field);
  const int d_max = static_cast<int>(dag.size()) + 1;
  r.pc_deg = min_degree(sys, ProofSystem::PC, d_max, opt);
  r.mc_deg = min_degree(sys, ProofSystem::MC, d_max, opt);
  r.ns_deg = min_degree(sys, ProofSystem::NS, d_max, opt);
  return r;
}

}  // namespace pebcalc
