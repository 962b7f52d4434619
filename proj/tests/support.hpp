#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "pebcalc/pebcalc.hpp"

namespace pebtest {

using namespace pebcalc;
using Rng = std::mt19937_64;

inline std::size_t uniform(Rng& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }
inline bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

/// Random single-sink DAG on 2..n_max vertices.
inline Dag random_dag(Rng& rng, Vertex n_max) {
  const Vertex n = static_cast<Vertex>(2 + uniform(rng, n_max - 1));
  const double p = 0.2 + 0.4 * std::uniform_real_distribution<double>(0, 1)(rng);
  const std::uint64_t seed = rng();
  Dag d = make_random(n, p, seed);
  return d.size() <= n_max ? d : make_random(n - 1, p, seed);
}

/// Black strategy that pebbles vertices along a random topological order,
/// re-pebbling predecessors that were dropped early. Not canonical.
inline PebblingStrategy random_black_strategy(const Dag& dag, Rng& rng) {
  const Vertex z = dag.unique_sink();
  PebblingStrategy s{GameVariant::Black, {}};
  VertexSet on = 0;
  // `keep` holds predecessors still needed further up the recursion
  std::function<void(Vertex, VertexSet)> pebble = [&](Vertex v, VertexSet keep) {
    for (Vertex p : dag.preds(v))
      if (!(on & bit(p))) pebble(p, keep | dag.pred_mask(v));
    s.moves.push_back(place(v));
    on |= bit(v);
    for (Vertex p : dag.preds(v))
      if ((on & bit(p)) && !(keep & bit(p)) && coin(rng, 0.4)) {
        s.moves.push_back(remove(p));
        on &= ~bit(p);
      }
  };
  std::vector<Vertex> order = dag.topological_order();
  for (Vertex v : order) {
    if (v == z) break;
    if (!(on & bit(v)) && coin(rng, 0.5)) pebble(v, 0);
    for (Vertex w = 0; w < dag.size(); ++w)
      if ((on & bit(w)) && coin(rng, 0.15)) {
        s.moves.push_back(remove(w));
        on &= ~bit(w);
      }
  }
  pebble(z, 0);
  for (Vertex w = 0; w < dag.size(); ++w)
    if (on & bit(w)) s.moves.push_back(remove(w));
  return s;
}

/// Random black strategy already in canonical shape.
inline PebblingStrategy random_canonical_black(const Dag& dag, Rng& rng) {
  return canonical_black_strategy(dag, random_black_strategy(dag, rng));
}

/// Random reversible strategy: a loop-free random walk until the sink is
/// pebbled, then the sink is removed and the walk is undone.
inline PebblingStrategy random_reversible(const Dag& dag, Rng& rng) {
  const Vertex z = dag.unique_sink();
  while (true) {
    std::vector<Move> prefix;
    std::vector<VertexSet> configs{0};
    std::map<VertexSet, std::size_t> seen{{0, 0}};
    VertexSet c = 0;
    for (int guard = 0; guard < 4000 && !(c & bit(z)); ++guard) {
      std::vector<Move> legal;
      for (Vertex v = 0; v < dag.size(); ++v) {
        if ((dag.pred_mask(v) & ~c) != 0) continue;
        legal.push_back(c & bit(v) ? remove(v) : place(v));
      }
      std::vector<Move> places;
      std::copy_if(legal.begin(), legal.end(), std::back_inserter(places),
                   [](const Move& m) { return m.action == Action::Place; });
      const auto& pool = (!places.empty() && coin(rng, 0.65)) ? places : legal;
      const Move m = pool[uniform(rng, pool.size())];
      c = m.action == Action::Place ? c | bit(m.vertex) : c & ~bit(m.vertex);
      if (auto it = seen.find(c); it != seen.end()) {
        for (std::size_t k = it->second + 1; k < configs.size(); ++k) seen.erase(configs[k]);
        configs.resize(it->second + 1);
        prefix.resize(it->second);
        continue;
      }
      seen[c] = configs.size();
      configs.push_back(c);
      prefix.push_back(m);
    }
    if (!(c & bit(z))) continue;
    PebblingStrategy s{GameVariant::Reversible, prefix};
    s.moves.push_back(remove(z));
    for (auto it = prefix.rbegin(); it != prefix.rend(); ++it) {
      if (it->vertex == z) continue;
      s.moves.push_back(it->action == Action::Place ? remove(it->vertex) : place(it->vertex));
    }
    // The sink is placed once, last in the prefix; its mirror was the removal above.
    return s;
  }
}

/// Inserts `line` at position `pos`, shifting later references.
template <Field F>
void insert_line(Derivation<F>& d, std::vector<std::size_t>* backbone, std::size_t pos, DerivationLine<F> line) {
  using Kind = typename Justification<F>::Kind;
  for (auto& l : d.lines) {
    if (l.just.kind == Kind::Axiom) continue;
    if (l.just.a >= pos) ++l.just.a;
    if (l.just.kind == Kind::LinComb && l.just.b >= pos) ++l.just.b;
  }
  if (backbone)
    for (auto& b : *backbone)
      if (b >= pos) ++b;
  d.lines.insert(d.lines.begin() + static_cast<std::ptrdiff_t>(pos), std::move(line));
}

/// Adds redundant lines and one multiplication of a derived backbone monomial
/// by one of its own variables, which the next backbone step then uses.
template <Field F>
Derivation<F> perturb(const PolySystem<F>& sys, const InputMcRefutation<F>& r, Rng& rng, int redundant = 3) {
  using Kind = typename Justification<F>::Kind;
  const F& f = sys.field;
  Derivation<F> d = r.derivation;
  std::vector<std::size_t> bb = r.backbone;
  std::size_t max_deg = 0;
  for (const auto& l : d.lines) max_deg = std::max<std::size_t>(max_deg, static_cast<std::size_t>(l.poly.degree()));

  // derived-monomial multiplication used by the following backbone step
  std::vector<std::size_t> cands;
  for (std::size_t k = 1; k + 1 < bb.size(); ++k)
    if (d.lines[bb[k]].just.kind == Kind::LinComb && !d.lines[bb[k]].poly.is_one()) cands.push_back(k);
  if (!cands.empty()) {
    const std::size_t k = cands[uniform(rng, cands.size())];
    const std::size_t li = bb[k];
    const auto vars = d.lines[li].poly.terms()[0].first.vars();
    const Var x = vars[uniform(rng, vars.size())];
    insert_line(d, &bb, li + 1, {d.lines[li].poly.times_var(x), Justification<F>::mult(li, x)});
    auto& next = d.lines[bb[k + 1]].just;
    if (next.a == li) next.a = li + 1;
    else if (next.kind == Kind::LinComb && next.b == li) next.b = li + 1;
  }

  for (int t = 0; t < redundant; ++t) {
    std::vector<bool> product;
    verify_derivation(sys, d, &product);
    const std::size_t pos = uniform(rng, d.lines.size());  // before the last line
    const int kind = static_cast<int>(uniform(rng, 3));
    DerivationLine<F> line{Polynomial<F>(f), {}};
    if (kind == 0 || pos == 0) {
      const std::size_t j = uniform(rng, sys.axioms.size());
      line = {sys.axioms[j], Justification<F>::axiom(j)};
    } else if (kind == 1) {
      std::vector<std::size_t> prods;
      for (std::size_t i = 0; i < pos; ++i)
        if (product[i]) prods.push_back(i);
      if (prods.empty()) continue;
      const std::size_t a = prods[uniform(rng, prods.size())];
      const Var x = static_cast<Var>(uniform(rng, sys.num_vars));
      auto q = d.lines[a].poly.times_var(x);
      if (static_cast<std::size_t>(q.degree()) > max_deg) continue;
      line = {q, Justification<F>::mult(a, x)};
    } else {
      const std::size_t a = uniform(rng, pos), b = uniform(rng, pos);
      const auto alpha = f.from_int(static_cast<std::int64_t>(uniform(rng, 5)) - 2);
      const auto beta = f.from_int(static_cast<std::int64_t>(uniform(rng, 5)) + 1);
      line = {Polynomial<F>::linear_combination(alpha, d.lines[a].poly, beta, d.lines[b].poly),
              Justification<F>::lincomb(a, b, alpha, beta)};
    }
    insert_line(d, &bb, pos, std::move(line));
  }
  return d;
}

/// Derivation that builds every product g_j * p_j of a certificate by single
/// multiplications and sums them up: a refutation with no backbone shape.
template <Field F>
Derivation<F> derivation_from_certificate(const PolySystem<F>& sys, const NsCertificate<F>& c) {
  const F& f = sys.field;
  Derivation<F> d;
  d.system = ProofSystem::NS;
  std::optional<std::size_t> acc;
  for (const auto& [j, g] : c.g)
    for (const auto& [m, coef] : g.terms()) {
      std::size_t l = d.add(sys.axioms[j], Justification<F>::axiom(j));
      for (Var v : m.vars()) l = d.add(d.lines[l].poly.times_var(v), Justification<F>::mult(l, v));
      if (!acc) {
        acc = d.add(d.lines[l].poly.scaled(coef), Justification<F>::lincomb(l, l, coef, f.zero()));
      } else {
        auto sum = Polynomial<F>::linear_combination(f.one(), d.lines[*acc].poly, coef, d.lines[l].poly);
        acc = d.add(std::move(sum), Justification<F>::lincomb(*acc, l, f.one(), coef));
      }
    }
  return d;
}

/// A polynomial different from p: one coefficient bumped, one term added or
/// one term dropped.
template <Field F>
Polynomial<F> corrupt_poly(const Polynomial<F>& p, Var num_vars, Rng& rng) {
  const F& f = p.field();
  auto terms = p.terms();
  const int kind = static_cast<int>(uniform(rng, 3));
  if (kind == 0 && !terms.empty()) {
    auto& t = terms[uniform(rng, terms.size())];
    t.second = f.add(t.second, f.one());
  } else if (kind == 1 && terms.size() > 1) {
    terms.erase(terms.begin() + static_cast<std::ptrdiff_t>(uniform(rng, terms.size())));
  } else {
    Monomial m;
    for (Var v = 0; v < num_vars; ++v)
      if (coin(rng, 0.3)) m = m.with(v);
    terms.emplace_back(m, f.from_int(static_cast<std::int64_t>(1 + uniform(rng, 3))));
  }
  auto q = Polynomial<F>::from_terms(f, std::move(terms));
  if (q == p) return p + Polynomial<F>::one(f);
  return q;
}

}  // namespace pebtest
