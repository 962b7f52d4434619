#pragma once

#include <optional>
#include <unordered_set>
#include <vector>

#include "pebcalc/proofs.hpp"
#include "pebcalc/span.hpp"

namespace pebcalc {

inline constexpr std::uint64_t kDefaultDimensionCap = 2'000'000;

struct DecideOptions {
  std::uint64_t dimension_cap = kDefaultDimensionCap;
};

namespace detail {

inline void check_dimension(Var n, int d, const DecideOptions& opt) {
  const std::uint64_t dim = monomial_dimension(n, static_cast<unsigned>(d));
  if (dim > opt.dimension_cap)
    throw Error(Errc::DimensionCapExceeded, std::to_string(dim) + " monomials of degree <= " + std::to_string(d) +
                                                " exceed the cap of " + std::to_string(opt.dimension_cap));
}

/// Calls fn(m, m * p) for every multiplier m with deg(m * p) <= d and
/// m * p != 0. Variables common to all terms of p are never part of m, so
/// distinct m mostly give distinct products. With `stepwise`, every partial
/// product along increasing variable order must also stay within degree d.
template <Field F, class Fn>
void for_each_product(const Polynomial<F>& p, Var num_vars, int d, bool stepwise, Fn&& fn) {
  if (p.is_zero() || p.degree() > d) return;
  Monomial common = all_vars(num_vars);
  for (const auto& [m, c] : p.terms()) common = common & m;
  const Monomial inner = p.support().minus(common);
  const Monomial outer = all_vars(num_vars).minus(p.support());
  std::vector<Monomial> inner_subsets;
  for_each_monomial(inner, inner.degree(), [&](Monomial s) { inner_subsets.push_back(s); });
  for_each_monomial(outer, d, [&](Monomial out) {
    for (Monomial in : inner_subsets) {
      const Monomial m = out * in;
      Polynomial<F> q = p.times(m);
      if (q.is_zero() || q.degree() > d) continue;
      if (stepwise) {
        Polynomial<F> partial = p;
        bool ok = true;
        for (Var v : m.vars()) {
          partial = partial.times_var(v);
          if (partial.degree() > d) {
            ok = false;
            break;
          }
        }
        if (!ok) continue;
      }
      fn(m, q);
    }
  });
}

template <Field F, bool Track>
void seed_products(SpanBasis<F, Track>& v, const PolySystem<F>& sys, int d, bool stepwise,
                   std::vector<std::pair<std::size_t, Monomial>>* origin = nullptr) {
  for (std::size_t j = 0; j < sys.axioms.size(); ++j)
    for_each_product(sys.axioms[j], sys.num_vars, d, stepwise, [&](Monomial m, const Polynomial<F>& q) {
      v.insert(q);
      if (origin) origin->emplace_back(j, m);
    });
}

}  // namespace detail

/// Degree-d Nullstellensatz: is 1 in the span of the products m * p_j of
/// degree at most d? Returns a certificate when it is.
template <Field F>
std::optional<NsCertificate<F>> ns_feasible(const PolySystem<F>& sys, int d, const DecideOptions& opt = {}) {
  detail::check_dimension(sys.num_vars, d, opt);
  const Polynomial<F> one = Polynomial<F>::one(sys.field);
  {
    SpanBasis<F> v(sys.field, d);
    detail::seed_products(v, sys, d, false);
    if (!v.member(one)) return std::nullopt;
  }
  SpanBasis<F, true> v(sys.field, d);
  std::vector<std::pair<std::size_t, Monomial>> origin;
  detail::seed_products(v, sys, d, false, &origin);
  auto expr = v.express(one);
  if (!expr) throw Error(Errc::NotARefutation, "certificate extraction failed");
  std::map<std::size_t, std::vector<typename Polynomial<F>::Term>> parts;
  for (const auto& [gen, c] : *expr) parts[origin[gen].first].emplace_back(origin[gen].second, c);
  NsCertificate<F> cert;
  for (auto& [j, terms] : parts) {
    auto g = Polynomial<F>::from_terms(sys.field, std::move(terms));
    if (!g.is_zero()) cert.g.emplace(j, std::move(g));
  }
  return cert;
}

/// Degree-d Monomial Calculus: closes the span of the axiom-products under
/// multiplying monomials of the span by variables.
template <Field F>
bool mc_feasible(const PolySystem<F>& sys, int d, const DecideOptions& opt = {}) {
  detail::check_dimension(sys.num_vars, d, opt);
  const F& f = sys.field;
  const Polynomial<F> one = Polynomial<F>::one(f);
  SpanBasis<F> v(f, d);
  detail::seed_products(v, sys, d, true);
  const Monomial universe = all_vars(sys.num_vars);
  std::unordered_set<Monomial> reached;
  bool grew = true;
  while (grew) {
    if (v.member(one)) return true;
    grew = false;
    for_each_monomial(universe, d, [&](Monomial u) {
      if (reached.count(u)) return;
      if (!v.member(Polynomial<F>::monomial(f, u))) return;
      reached.insert(u);
      if (u.degree() >= d) return;
      for (Var x : universe.minus(u).vars())
        if (v.insert(Polynomial<F>::monomial(f, u.with(x)))) grew = true;
    });
  }
  return v.member(one);
}

/// Degree-d Polynomial Calculus: closes the span of the axioms under
/// multiplication by variables wherever the result stays within degree d.
/// For each variable x, the elements q of the span with deg(x q) <= d are
/// exactly the span of the rows whose pivot is not a degree-d monomial
/// avoiding x, once the basis is re-reduced with those monomials ranked first.
template <Field F>
bool pc_feasible(const PolySystem<F>& sys, int d, const DecideOptions& opt = {}) {
  detail::check_dimension(sys.num_vars, d, opt);
  const F& f = sys.field;
  const Polynomial<F> one = Polynomial<F>::one(f);
  SpanBasis<F> v(f, d);
  for (const auto& p : sys.axioms)
    if (!p.is_zero() && p.degree() <= d) v.insert(p);
  bool grew = true;
  while (grew) {
    if (v.member(one)) return true;
    grew = false;
    const auto rows = v.rows();
    for (Var x = 0; x < sys.num_vars; ++x) {
      SpanBasis<F> split(f, d, MonomialOrder{d, Monomial().with(x)});
      for (const auto& r : rows) split.insert(r);
      for (const auto& q : split.rows_with_unpromoted_pivot()) {
        Polynomial<F> xq = q.times_var(x);
        if (!xq.is_zero() && v.insert(xq)) grew = true;
      }
    }
  }
  return v.member(one);
}

template <Field F>
bool feasible(const PolySystem<F>& sys, ProofSystem system, int d, const DecideOptions& opt = {}) {
  switch (system) {
    case ProofSystem::NS: return ns_feasible(sys, d, opt).has_value();
    case ProofSystem::MC: return mc_feasible(sys, d, opt);
    case ProofSystem::PC: return pc_feasible(sys, d, opt);
  }
  return false;
}

/// Smallest d in [1, d_max] with a degree-d refutation, or nullopt.
template <Field F>
std::optional<int> min_degree(const PolySystem<F>& sys, ProofSystem system, int d_max, const DecideOptions& opt = {}) {
  for (int d = 1; d <= d_max; ++d)
    if (feasible(sys, system, d, opt)) return d;
  return std::nullopt;
}

}  // namespace pebcalc
