#pragma once

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <unordered_map>
#include <vector>

#include "pebcalc/proofs.hpp"

namespace pebcalc {

namespace detail {

/// One move of a backbone plan: start from a single-term axiom-product line,
/// multiply by a variable, or combine with a two-term axiom-product line to
/// jump to its other monomial.
struct PlanStep {
  enum class Kind { Start, Mult, Combine } kind;
  std::size_t line = 0;
  Var var = 0;
};

template <Field F>
class Normalizer {
 public:
  using Element = typename F::Element;
  using Combo = std::map<std::size_t, Element>;
  using Kind = typename Justification<F>::Kind;

  Normalizer(const PolySystem<F>& sys, const Derivation<F>& d) : sys_(sys), d_(d), f_(sys.field) {
    verify_derivation(sys, d, &product_);
    const std::size_t n = d.lines.size();
    combo_.resize(n);
    leaf_.assign(n, false);
    for (std::size_t i = 0; i < n; ++i) {
      const auto& j = d.lines[i].just;
      const bool new_axiom = j.kind == Kind::Mult && !product_[j.a];
      if (product_[i] || new_axiom) {
        leaf_[i] = true;
        if (!d.lines[i].poly.is_zero()) combo_[i].emplace(i, f_.one());
        continue;
      }
      Combo c;
      auto add = [&](const Combo& src, const Element& k) {
        if (f_.is_zero(k)) return;
        for (const auto& [l, v] : src) {
          auto [it, ins] = c.try_emplace(l, f_.mul(k, v));
          if (!ins) {
            it->second = f_.add(it->second, f_.mul(k, v));
            if (f_.is_zero(it->second)) c.erase(it);
          }
        }
      };
      add(combo_[j.a], j.alpha);
      add(combo_[j.b], j.beta);
      combo_[i] = std::move(c);
    }
  }

  InputMcRefutation<F> run() {
    const std::size_t last = d_.lines.size() - 1;
    std::vector<PlanStep> plan = leaf_[last] ? plan_of(last) : plan_to(combo_[last], Monomial::one());
    return emit(contract(plan));
  }

 private:
  Monomial mono(std::size_t line) const { return d_.lines[line].poly.terms()[0].first; }
  bool single(std::size_t line) const { return d_.lines[line].poly.size() == 1; }

  const std::vector<PlanStep>& plan_of(std::size_t leaf) {
    auto it = plans_.find(leaf);
    if (it != plans_.end()) return it->second;
    std::vector<PlanStep> p;
    const auto& j = d_.lines[leaf].just;
    if (product_[leaf]) {
      p.push_back({PlanStep::Kind::Start, leaf, 0});
    } else {
      p = plan_to(combo_[j.a], mono(j.a));
      p.push_back({PlanStep::Kind::Mult, 0, j.var});
    }
    return plans_.emplace(leaf, std::move(p)).first->second;
  }

  /// Walks the monomial graph of the leaves in `c` from `target` to the
  /// cheapest single-term leaf. Two-term leaves are the edges.
  std::vector<PlanStep> plan_to(const Combo& c, Monomial target) {
    std::unordered_map<Monomial, std::vector<std::pair<Monomial, std::size_t>>> adj;
    std::unordered_map<Monomial, std::vector<std::size_t>> starts;
    for (const auto& [l, k] : c) {
      const auto& terms = d_.lines[l].poly.terms();
      if (terms.size() == 1) starts[terms[0].first].push_back(l);
      else if (terms.size() == 2) {
        adj[terms[0].first].emplace_back(terms[1].first, l);
        adj[terms[1].first].emplace_back(terms[0].first, l);
      }
    }
    std::unordered_map<Monomial, std::pair<Monomial, std::size_t>> parent;
    std::unordered_map<Monomial, std::size_t> dist{{target, 0}};
    std::deque<Monomial> queue{target};
    std::size_t best_cost = SIZE_MAX, best_leaf = 0;
    Monomial best_at;
    while (!queue.empty()) {
      Monomial u = queue.front();
      queue.pop_front();
      if (dist[u] >= best_cost) break;
      if (auto s = starts.find(u); s != starts.end()) {
        for (std::size_t l : s->second) {
          std::size_t cost = dist[u] + plan_of(l).size();
          if (cost < best_cost) best_cost = cost, best_leaf = l, best_at = u;
        }
      }
      if (auto a = adj.find(u); a != adj.end())
        for (const auto& [w, l] : a->second)
          if (!dist.count(w)) {
            dist[w] = dist[u] + 1;
            parent.emplace(w, std::make_pair(u, l));
            queue.push_back(w);
          }
    }
    if (best_cost == SIZE_MAX)
      throw Error(Errc::NotARefutation, "no axiom-product path reaches " + target.to_string());
    std::vector<PlanStep> p = plan_of(best_leaf);
    for (Monomial u = best_at; u != target;) {
      const auto& [next, l] = parent.at(u);
      p.push_back({PlanStep::Kind::Combine, l, 0});
      u = next;
    }
    return p;
  }

  Monomial apply(Monomial cur, const PlanStep& s) const {
    switch (s.kind) {
      case PlanStep::Kind::Start: return mono(s.line);
      case PlanStep::Kind::Mult: return cur.with(s.var);
      case PlanStep::Kind::Combine: {
        const auto& t = d_.lines[s.line].poly.terms();
        return t[0].first == cur ? t[1].first : t[0].first;
      }
    }
    return cur;
  }

  /// Drops the stretch between two visits of the same monomial.
  std::vector<PlanStep> contract(const std::vector<PlanStep>& plan) const {
    std::vector<PlanStep> out;
    std::vector<Monomial> mons;
    std::unordered_map<Monomial, std::size_t> pos;
    for (const auto& s : plan) {
      Monomial m = apply(mons.empty() ? Monomial::one() : mons.back(), s);
      if (auto it = pos.find(m); it != pos.end()) {
        for (std::size_t k = it->second + 1; k < mons.size(); ++k) pos.erase(mons[k]);
        out.resize(it->second + 1);
        mons.resize(it->second + 1);
        continue;
      }
      pos.emplace(m, mons.size());
      mons.push_back(m);
      out.push_back(s);
    }
    return out;
  }

  InputMcRefutation<F> emit(const std::vector<PlanStep>& plan) const {
    const std::size_t n = d_.lines.size();
    std::vector<bool> need(n, false);
    std::function<void(std::size_t)> mark = [&](std::size_t l) {
      if (need[l]) return;
      need[l] = true;
      if (d_.lines[l].just.kind == Kind::Mult) mark(d_.lines[l].just.a);
    };
    for (const auto& s : plan)
      if (s.kind != PlanStep::Kind::Mult) mark(s.line);

    InputMcRefutation<F> r;
    auto& out = r.derivation;
    out.system = ProofSystem::MC;
    std::vector<std::size_t> remap(n, SIZE_MAX);
    for (std::size_t i = 0; i < n; ++i) {
      if (!need[i]) continue;
      auto j = d_.lines[i].just;
      if (j.kind == Kind::Mult) j.a = remap[j.a];
      remap[i] = out.add(d_.lines[i].poly, j);
    }
    std::size_t cur = remap[plan.front().line];
    r.backbone.push_back(cur);
    for (std::size_t k = 1; k < plan.size(); ++k) {
      const auto& s = plan[k];
      const auto& cp = out.lines[cur].poly;
      if (s.kind == PlanStep::Kind::Mult) {
        cur = out.add(cp.times_var(s.var), Justification<F>::mult(cur, s.var));
      } else {
        const auto& [u, c] = cp.terms()[0];
        const auto& e = d_.lines[s.line].poly;
        const auto& t = e.terms();
        const bool first = t[0].first == u;
        const Element& a_cur = first ? t[0].second : t[1].second;
        const Element& a_other = first ? t[1].second : t[0].second;
        Element alpha = f_.neg(f_.div(a_cur, f_.mul(a_other, c)));
        Element beta = f_.inv(a_other);
        auto poly = Polynomial<F>::linear_combination(alpha, cp, beta, e);
        cur = out.add(std::move(poly), Justification<F>::lincomb(cur, remap[s.line], alpha, beta));
      }
      r.backbone.push_back(cur);
    }
    if (!out.lines[cur].poly.is_one())
      throw Error(Errc::NotARefutation, "backbone ends at " + out.lines[cur].poly.to_string());
    return r;
  }

  const PolySystem<F>& sys_;
  const Derivation<F>& d_;
  F f_;
  std::vector<bool> product_;
  std::vector<bool> leaf_;
  std::vector<Combo> combo_;
  std::map<std::size_t, std::vector<PlanStep>> plans_;
};

}  // namespace detail

/// Turns an MC (or dynamic NS) refutation of a Horn system into an input MC
/// refutation of no larger degree. Every line is tracked as a combination of
/// axiom-products and multiplied derived monomials; the backbone is read off
/// a path through the monomial graph of the final line's combination, with
/// each multiplied derived monomial expanded the same way, and repeated
/// monomials are cut out.
template <Field F>
InputMcRefutation<F> normalize_to_input(const PolySystem<F>& sys, const Derivation<F>& d) {
  if (!is_horn_system(sys)) throw Error(Errc::NotHorn, "axioms are not Horn-shaped");
  if (d.system == ProofSystem::PC) throw Error(Errc::InvalidParam, "expected an MC or NS derivation");
  try {
    detail::Normalizer<F> n(sys, d);
    return n.run();
  } catch (const Error& e) {
    if (e.code() == Errc::NotARefutation) throw;
    throw Error(Errc::NotARefutation, e.what(), e.index());
  }
}

}  // namespace pebcalc
