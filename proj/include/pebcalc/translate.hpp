#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "pebcalc/pebbling.hpp"
#include "pebcalc/proofs.hpp"

namespace pebcalc {

template <Field F>
PolySystem<F> pebbling_system(const Dag& dag, const F& field) {
  return encode(pebbling_formula(dag), field);
}

/// Rewrites a black strategy into the shape the translations expect: the
/// play is cut at the first time the sink is pebbled, every other pebble is
/// then removed and the sink goes last, and any detour that revisits a
/// configuration is skipped. Time and space never grow; for strategies that
/// already have this shape the result is the input.
inline PebblingStrategy canonical_black_strategy(const Dag& dag, const PebblingStrategy& s) {
  if (s.variant != GameVariant::Black) throw Error(Errc::InvalidParam, "expected a black strategy");
  validate_strategy(dag, s);
  const Vertex z = dag.unique_sink();
  std::vector<Move> moves;
  PebbleConfig c;
  for (const Move& m : s.moves) {
    c = apply_move(dag, c, m, GameVariant::Black);
    moves.push_back(m);
    if (c.black & bit(z)) break;
  }
  for (Vertex v = 0; v < dag.size(); ++v)
    if (v != z && (c.black & bit(v))) moves.push_back(remove(v));
  moves.push_back(remove(z));

  std::vector<Move> out;
  std::vector<VertexSet> configs{0};
  std::map<VertexSet, std::size_t> seen{{0, 0}};
  VertexSet cur = 0;
  for (const Move& m : moves) {
    cur = m.action == Action::Place ? cur | bit(m.vertex) : cur & ~bit(m.vertex);
    auto it = seen.find(cur);
    if (it != seen.end() && !(cur == 0 && &m == &moves.back())) {
      for (std::size_t k = it->second + 1; k < configs.size(); ++k) seen.erase(configs[k]);
      configs.resize(it->second + 1);
      out.resize(it->second);
      continue;
    }
    seen[cur] = configs.size();
    configs.push_back(cur);
    out.push_back(m);
  }
  return {GameVariant::Black, std::move(out)};
}

/// Black pebbling -> input MC refutation of Peb(G). Works on the white dual of
/// the canonical strategy: the backbone monomial at each step is the product
/// of the white-pebbled variables. A white placement multiplies the backbone
/// by one variable; a white removal of v multiplies the axiom A_v variable by
/// variable up to the rest of the backbone monomial and adds it on.
template <Field F>
InputMcRefutation<F> black_to_mc(const Dag& dag, const PebblingStrategy& strategy, const F& field) {
  const PolySystem<F> sys = pebbling_system(dag, field);
  const PebblingStrategy white = black_white_dual(canonical_black_strategy(dag, strategy));
  const Vertex z = dag.unique_sink();
  InputMcRefutation<F> r;
  auto& d = r.derivation;
  d.system = ProofSystem::MC;
  if (white.moves.empty() || white.moves.front() != place(z, Color::White))
    throw Error(Errc::InvalidParam, "white dual must start on the sink");
  std::size_t cur = d.add(sys.axioms[sink_axiom_index(dag)], Justification<F>::axiom(sink_axiom_index(dag)));
  r.backbone.push_back(cur);
  VertexSet config = bit(z);
  const auto one = field.one();
  for (std::size_t i = 1; i < white.moves.size(); ++i) {
    const Move& m = white.moves[i];
    const Vertex v = m.vertex;
    if (m.action == Action::Place) {
      cur = d.add(d.lines[cur].poly.times_var(v), Justification<F>::mult(cur, v));
      config |= bit(v);
    } else {
      std::size_t a = d.add(sys.axioms[v], Justification<F>::axiom(v));
      const VertexSet rest = config & ~dag.pred_mask(v) & ~bit(v);
      for (Var y : Monomial(rest).vars()) a = d.add(d.lines[a].poly.times_var(y), Justification<F>::mult(a, y));
      auto sum = Polynomial<F>::linear_combination(one, d.lines[cur].poly, one, d.lines[a].poly);
      cur = d.add(std::move(sum), Justification<F>::lincomb(cur, a, one, one));
      config &= ~bit(v);
    }
    r.backbone.push_back(cur);
  }
  return r;
}

/// Input MC refutation of Peb(G) -> black pebbling. Reads a white strategy off
/// the backbone variable sets (M_0 is pebbled first, sink first, then one
/// move per change of variable set) and returns its black dual.
template <Field F>
PebblingStrategy mc_to_pebbling(const Dag& dag, const InputMcRefutation<F>& r) {
  using Kind = typename Justification<F>::Kind;
  const auto& d = r.derivation;
  if (d.lines.empty()) throw Error(Errc::NotInputRefutation, "empty derivation");
  const PolySystem<F> sys = pebbling_system(dag, d.lines.front().poly.field());
  for (std::size_t i = 0; i < d.lines.size(); ++i) {
    const auto& j = d.lines[i].just;
    if (j.kind == Kind::Axiom && (j.a >= sys.axioms.size() || !(sys.axioms[j.a] == d.lines[i].poly)))
      throw Error(Errc::WrongSystem, "line " + std::to_string(i) + " is not an axiom of Peb(G)", i);
  }
  try {
    check_input_refutation(sys, r);
  } catch (const Error& e) {
    throw Error(Errc::NotInputRefutation, e.what(), e.index());
  }
  PebblingStrategy white{GameVariant::White, {}};
  auto vars_of = [&](std::size_t line) { return d.lines[line].poly.terms()[0].first.bits(); };
  VertexSet config = vars_of(r.backbone.front());
  const auto& topo = dag.topological_order();
  for (auto it = topo.rbegin(); it != topo.rend(); ++it)
    if (config & bit(*it)) white.moves.push_back(place(*it, Color::White));
  for (std::size_t k = 1; k < r.backbone.size(); ++k) {
    const VertexSet next = vars_of(r.backbone[k]);
    for (Var v : Monomial(next & ~config).vars()) white.moves.push_back(place(v, Color::White));
    for (Var v : Monomial(config & ~next).vars()) white.moves.push_back(remove(v, Color::White));
    config = next;
  }
  try {
    validate_strategy(dag, white);
  } catch (const Error& e) {
    throw Error(Errc::NotInputRefutation, std::string("backbone does not trace a pebbling: ") + e.what());
  }
  return black_white_dual(white);
}

/// Reversible pebbling -> Nullstellensatz certificate by telescoping. With
/// P_i the configurations and i* the first step that pebbles the sink,
///   1 = sum_{i <= i*} +-m_{P_{i-1} \ pred(v_i) \ {v_i}} * A_{v_i} + m_{P_{i*} \ {z}} * x_z
/// where placements carry + and removals -.
template <Field F>
NsCertificate<F> rev_to_ns(const Dag& dag, const PebblingStrategy& s, const F& field) {
  if (s.variant != GameVariant::Reversible) throw Error(Errc::InvalidParam, "expected a reversible strategy");
  const Vertex z = dag.unique_sink();
  try {
    validate_strategy(dag, s);
  } catch (const Error& e) {
    if (e.code() == Errc::DoesNotTouchSink) throw Error(Errc::SinkNeverPebbled, e.what());
    throw;
  }
  std::map<std::size_t, std::vector<typename Polynomial<F>::Term>> parts;
  PebbleConfig c;
  for (const Move& m : s.moves) {
    const Vertex v = m.vertex;
    const Monomial mult(c.black & ~dag.pred_mask(v) & ~bit(v));
    const auto sign = m.action == Action::Place ? field.one() : field.neg(field.one());
    parts[v].emplace_back(mult, sign);
    c = apply_move(dag, c, m, GameVariant::Reversible);
    if (c.black & bit(z)) break;
  }
  parts[sink_axiom_index(dag)].emplace_back(Monomial(c.black & ~bit(z)), field.one());
  NsCertificate<F> cert;
  for (auto& [j, terms] : parts) {
    auto g = Polynomial<F>::from_terms(field, std::move(terms));
    if (!g.is_zero()) cert.g.emplace(j, std::move(g));
  }
  return cert;
}

}  // namespace pebcalc
