#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pebcalc/polynomial.hpp"

namespace pebcalc {

/// Total order on monomials used for pivoting. The default is the graded
/// order. A "promoted" order additionally ranks every monomial of degree
/// `promote_degree` that avoids `promote_avoid` above everything else; it is
/// used to split a span into the part whose top-degree terms all contain a
/// given variable.
struct MonomialOrder {
  int promote_degree = -1;
  Monomial promote_avoid;

  using Key = std::pair<std::uint32_t, std::uint64_t>;

  Key key(Monomial m) const {
    std::uint32_t rank = static_cast<std::uint32_t>(m.degree());
    if (is_promoted(m)) rank |= 1u << 8;
    return {rank, m.bits()};
  }
  bool is_promoted(Monomial m) const {
    return promote_degree >= 0 && m.degree() == promote_degree && (m & promote_avoid).is_one();
  }
};

/// Incrementally row-reduced basis of a space of polynomials of degree at most
/// `degree_bound`, viewed as coordinate vectors over the monomial basis.
/// Rows are normalized to leading coefficient 1 and have pairwise distinct
/// leading monomials. With `Track`, every row remembers which combination of
/// inserted generators produced it, so membership can return a certificate.
template <Field F, bool Track = false>
class SpanBasis {
 public:
  using Element = typename F::Element;
  using Key = MonomialOrder::Key;
  using Combination = std::vector<std::pair<std::size_t, Element>>;

  SpanBasis(F field, int degree_bound, MonomialOrder order = {})
      : field_(std::move(field)), degree_bound_(degree_bound), order_(order) {}

  const F& field() const { return field_; }
  int degree_bound() const { return degree_bound_; }
  std::size_t dimension() const { return rows_.size(); }
  std::size_t generators() const { return next_generator_; }

  /// Reduces `p` and adds the remainder as a new row. Returns true iff the
  /// span grew. The generator is numbered by insertion order.
  bool insert(const Polynomial<F>& p) {
    check(p);
    std::size_t id = next_generator_++;
    Accumulator acc = load(p);
    std::map<std::size_t, Element> combo;
    if constexpr (Track) combo.emplace(id, field_.one());
    Row remainder = reduce_into(acc, combo);
    if (remainder.terms.empty()) return false;
    Element lead_inv = field_.inv(remainder.terms.front().second);
    for (auto& [k, c] : remainder.terms) c = field_.mul(c, lead_inv);
    if constexpr (Track) {
      for (auto& [g, c] : combo)
        if (!field_.is_zero(c)) remainder.combo.emplace_back(g, field_.mul(c, lead_inv));
    }
    pivots_.emplace(remainder.terms.front().first.second, rows_.size());
    rows_.push_back(std::move(remainder));
    return true;
  }

  bool member(const Polynomial<F>& p) const {
    if (p.is_zero()) return true;
    if (p.degree() > degree_bound_) return false;
    Accumulator acc = load(p);
    std::map<std::size_t, Element> unused;
    return reduce_into<false>(acc, unused).terms.empty();
  }

  /// Coefficients c with sum c_g * generator_g == p, if p lies in the span.
  std::optional<std::vector<std::pair<std::size_t, Element>>> express(const Polynomial<F>& p) const
    requires Track
  {
    check(p);
    Accumulator acc = load(p);
    std::map<std::size_t, Element> used;  // row index -> multiplier
    Row r = reduce_into<true, true>(acc, used);
    if (!r.terms.empty()) return std::nullopt;
    std::map<std::size_t, Element> gens;
    for (const auto& [row, mult] : used)
      for (const auto& [g, c] : rows_[row].combo) add_to(gens, g, field_.mul(mult, c));
    std::vector<std::pair<std::size_t, Element>> out;
    for (auto& [g, c] : gens)
      if (!field_.is_zero(c)) out.emplace_back(g, c);
    return out;
  }

  /// Remainder of `p` modulo the span.
  Polynomial<F> reduce(const Polynomial<F>& p) const {
    check(p);
    Accumulator acc = load(p);
    std::map<std::size_t, Element> unused;
    return to_polynomial(reduce_into<false>(acc, unused));
  }

  std::vector<Polynomial<F>> rows() const {
    std::vector<Polynomial<F>> out;
    out.reserve(rows_.size());
    for (const auto& r : rows_) out.push_back(to_polynomial(r));
    return out;
  }

  /// Rows whose leading monomial is not promoted by the basis order.
  std::vector<Polynomial<F>> rows_with_unpromoted_pivot() const {
    std::vector<Polynomial<F>> out;
    for (const auto& r : rows_)
      if (!order_.is_promoted(Monomial(r.terms.front().first.second))) out.push_back(to_polynomial(r));
    return out;
  }

 private:
  struct Row {
    std::vector<std::pair<Key, Element>> terms;  // descending keys
    Combination combo;
  };
  using Accumulator = std::map<Key, Element, std::greater<Key>>;

  void check(const Polynomial<F>& p) const {
    if (!(p.field() == field_)) throw Error(Errc::FieldMismatch, "polynomial field differs from basis field");
    if (p.degree() > degree_bound_)
      throw Error(Errc::DegreeExceeded,
                  "degree " + std::to_string(p.degree()) + " above bound " + std::to_string(degree_bound_));
  }

  Accumulator load(const Polynomial<F>& p) const {
    Accumulator acc;
    for (const auto& [m, c] : p.terms()) acc.emplace(order_.key(m), c);
    return acc;
  }

  void add_to(std::map<std::size_t, Element>& m, std::size_t k, const Element& v) const {
    auto [it, inserted] = m.try_emplace(k, v);
    if (!inserted) it->second = field_.add(it->second, v);
  }

  /// Eliminates pivots from `acc` in decreasing key order. When `TrackGen`
  /// (insert path), `combo` accumulates generator multipliers; when
  /// `TrackRows`, it accumulates the multiplier applied to each row.
  template <bool TrackGen = Track, bool TrackRows = false>
  Row reduce_into(Accumulator& acc, std::map<std::size_t, Element>& combo) const {
    Row out;
    while (!acc.empty()) {
      auto top = acc.begin();
      auto piv = pivots_.find(top->first.second);
      if (piv == pivots_.end()) {
        out.terms.emplace_back(top->first, std::move(top->second));
        acc.erase(top);
        continue;
      }
      const Row& row = rows_[piv->second];
      Element c = top->second;
      acc.erase(top);
      for (std::size_t i = 1; i < row.terms.size(); ++i) {
        const auto& [k, e] = row.terms[i];
        auto [it, inserted] = acc.try_emplace(k, field_.neg(field_.mul(c, e)));
        if (!inserted) {
          it->second = field_.sub(it->second, field_.mul(c, e));
          if (field_.is_zero(it->second)) acc.erase(it);
        }
      }
      if constexpr (TrackRows) add_to(combo, piv->second, c);
      if constexpr (TrackGen && !TrackRows) {
        for (const auto& [g, e] : row.combo) add_to(combo, g, field_.neg(field_.mul(c, e)));
      }
    }
    return out;
  }

  Polynomial<F> to_polynomial(const Row& r) const {
    std::vector<typename Polynomial<F>::Term> terms;
    terms.reserve(r.terms.size());
    for (const auto& [k, c] : r.terms) terms.emplace_back(Monomial(k.second), c);
    return Polynomial<F>::from_terms(field_, std::move(terms));
  }

  F field_;
  int degree_bound_;
  MonomialOrder order_;
  std::vector<Row> rows_;
  std::unordered_map<std::uint64_t, std::size_t> pivots_;
  std::size_t next_generator_ = 0;
};

/// Exact solution c of sum_i c_i * columns[i] == target, or nullopt. The
/// solution is the one found by eliminating the columns in order.
template <Field F>
std::optional<std::vector<typename F::Element>> solve_linear(const std::vector<Polynomial<F>>& columns,
                                                             const Polynomial<F>& target) {
  const F& field = target.field();
  int bound = target.degree();
  for (const auto& c : columns) {
    c.check_same_field(target);
    bound = std::max(bound, c.degree());
  }
  SpanBasis<F, true> basis(field, bound);
  for (const auto& c : columns) basis.insert(c);
  auto expr = basis.express(target);
  if (!expr) return std::nullopt;
  std::vector<typename F::Element> out(columns.size(), field.zero());
  for (auto& [g, c] : *expr) out[g] = c;
  return out;
}

}  // namespace pebcalc
