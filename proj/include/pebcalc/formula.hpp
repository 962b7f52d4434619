#pragma once

#include <algorithm>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "pebcalc/graph.hpp"
#include "pebcalc/polynomial.hpp"

namespace pebcalc {

struct Clause {
  std::vector<Var> positives;
  std::vector<Var> negatives;

  friend bool operator==(const Clause&, const Clause&) = default;
};

struct CnfFormula {
  Var num_vars = 0;
  std::vector<Clause> clauses;

  friend bool operator==(const CnfFormula&, const CnfFormula&) = default;
};

/// Sorts the literals of a clause and rejects tautologies.
inline Clause make_clause(std::vector<Var> positives, std::vector<Var> negatives) {
  std::sort(positives.begin(), positives.end());
  std::sort(negatives.begin(), negatives.end());
  positives.erase(std::unique(positives.begin(), positives.end()), positives.end());
  negatives.erase(std::unique(negatives.begin(), negatives.end()), negatives.end());
  for (Var v : positives)
    if (std::binary_search(negatives.begin(), negatives.end(), v))
      throw Error(Errc::InvalidParam, "variable " + std::to_string(v) + " occurs with both signs");
  return {std::move(positives), std::move(negatives)};
}

/// Peb(G): for every vertex v (in id order) the clause ~pred(v) \/ x_v, then
/// the sink axiom ~x_z. Variable v stands for vertex v.
inline CnfFormula pebbling_formula(const Dag& dag) {
  const Vertex z = dag.unique_sink();
  CnfFormula f{dag.size(), {}};
  for (Vertex v = 0; v < dag.size(); ++v) f.clauses.push_back(make_clause({v}, dag.preds(v)));
  f.clauses.push_back(make_clause({}, {z}));
  return f;
}

/// Index of the sink axiom within pebbling_formula(dag).
inline std::size_t sink_axiom_index(const Dag& dag) { return dag.size(); }

inline bool is_horn(const CnfFormula& f) {
  return std::all_of(f.clauses.begin(), f.clauses.end(), [](const Clause& c) { return c.positives.size() <= 1; });
}

inline bool satisfies(const Clause& c, std::uint64_t true_vars) {
  for (Var v : c.positives)
    if (true_vars >> v & 1u) return true;
  for (Var v : c.negatives)
    if (!(true_vars >> v & 1u)) return true;
  return false;
}

/// The polynomial axioms of a CNF over one field.
template <Field F>
struct PolySystem {
  F field;
  Var num_vars = 0;
  std::vector<Polynomial<F>> axioms;
};

/// p(C) = prod_{x in P} (1 - x) * prod_{y in N} y, multilinear from the start.
template <Field F>
Polynomial<F> encode_clause(const Clause& c, const F& field) {
  Polynomial<F> p = Polynomial<F>::monomial(field, Monomial::of(c.negatives));
  for (Var x : c.positives) {
    Polynomial<F> factor = Polynomial<F>::one(field) - Polynomial<F>::monomial(field, Monomial().with(x));
    p = p * factor;
  }
  return p;
}

template <Field F>
PolySystem<F> encode(const CnfFormula& f, const F& field) {
  if (f.num_vars > kMaxVars) throw Error(Errc::TooManyVariables, std::to_string(f.num_vars) + " variables");
  PolySystem<F> sys{field, f.num_vars, {}};
  sys.axioms.reserve(f.clauses.size());
  for (const auto& c : f.clauses) {
    for (Var v : c.positives)
      if (v >= f.num_vars) throw Error(Errc::IndexOutOfRange, "variable " + std::to_string(v));
    for (Var v : c.negatives)
      if (v >= f.num_vars) throw Error(Errc::IndexOutOfRange, "variable " + std::to_string(v));
    sys.axioms.push_back(encode_clause(c, field));
  }
  return sys;
}

/// True when every axiom is a single term or a binomial a*(m - m*x) with
/// x not in m, the shape produced by encoding Horn clauses. Such binomials
/// vanish at the all-ones point, which input-refutation extraction relies on.
template <Field F>
bool is_horn_system(const PolySystem<F>& sys) {
  for (const auto& p : sys.axioms) {
    if (p.size() <= 1) continue;
    if (p.size() > 2) return false;
    const auto& [m1, c1] = p.terms()[0];
    const auto& [m2, c2] = p.terms()[1];
    if (m2.degree() != m1.degree() + 1 || !m1.divides(m2)) return false;
    if (!sys.field.is_zero(sys.field.add(c1, c2))) return false;
  }
  return true;
}

/// DIMACS CNF; variables are 1-based on the wire and 0-based in memory.
inline CnfFormula parse_dimacs(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string tok;
  CnfFormula f;
  bool header = false;
  std::size_t declared = 0;
  std::vector<Var> pos, neg;
  std::string line;
  while (std::getline(in, line)) {
    std::string_view l = detail::trim(line);
    if (l.empty() || l[0] == 'c' || l[0] == '%') continue;
    std::istringstream ls{std::string(l)};
    if (l[0] == 'p') {
      std::string p, cnf;
      long long nv = -1, nc = -1;
      ls >> p >> cnf >> nv >> nc;
      if (cnf != "cnf" || nv < 0 || nc < 0) throw Error(Errc::ParseError, "bad DIMACS header");
      f.num_vars = static_cast<Var>(nv);
      declared = static_cast<std::size_t>(nc);
      header = true;
      continue;
    }
    if (!header) throw Error(Errc::ParseError, "clause before DIMACS header");
    long long lit;
    while (ls >> lit) {
      if (lit == 0) {
        f.clauses.push_back(make_clause(pos, neg));
        pos.clear(), neg.clear();
        continue;
      }
      long long v = lit < 0 ? -lit : lit;
      if (v > static_cast<long long>(f.num_vars)) throw Error(Errc::IndexOutOfRange, "literal " + std::to_string(lit));
      (lit > 0 ? pos : neg).push_back(static_cast<Var>(v - 1));
    }
    if (!ls.eof()) throw Error(Errc::ParseError, "bad literal in '" + std::string(l) + "'");
  }
  if (!header) throw Error(Errc::ParseError, "missing DIMACS header");
  if (!pos.empty() || !neg.empty()) f.clauses.push_back(make_clause(pos, neg));
  if (f.clauses.size() != declared)
    throw Error(Errc::ParseError, "header declares " + std::to_string(declared) + " clauses, found " +
                                      std::to_string(f.clauses.size()));
  return f;
}

inline std::string render_dimacs(const CnfFormula& f) {
  std::ostringstream out;
  out << "p cnf " << f.num_vars << ' ' << f.clauses.size() << '\n';
  for (const auto& c : f.clauses) {
    for (Var v : c.negatives) out << '-' << (v + 1) << ' ';
    for (Var v : c.positives) out << (v + 1) << ' ';
    out << "0\n";
  }
  return out.str();
}

}  // namespace pebcalc
