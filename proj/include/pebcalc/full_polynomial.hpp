#pragma once

#include <map>
#include <string>
#include <vector>

#include "pebcalc/polynomial.hpp"

namespace pebcalc {

/// Polynomial over the full (non-multilinear) ring. Only the explicit
/// Nullstellensatz check needs it, so it favours clarity over speed.
template <Field F>
class FullPolynomial {
 public:
  using Element = typename F::Element;
  /// Sorted (variable, exponent) pairs with positive exponents.
  using Exponents = std::vector<std::pair<Var, unsigned>>;

  explicit FullPolynomial(F field = F{}) : field_(std::move(field)) {}

  static FullPolynomial constant(const F& f, const Element& c) {
    FullPolynomial p(f);
    p.add_term({}, c);
    return p;
  }
  static FullPolynomial from_multilinear(const Polynomial<F>& q) {
    FullPolynomial p(q.field());
    for (const auto& [m, c] : q.terms()) {
      Exponents e;
      for (Var v : m.vars()) e.emplace_back(v, 1u);
      p.add_term(std::move(e), c);
    }
    return p;
  }
  /// x_i^2 - x_i
  static FullPolynomial boolean_axiom(const F& f, Var i) {
    FullPolynomial p(f);
    p.add_term({{i, 2u}}, f.one());
    p.add_term({{i, 1u}}, f.neg(f.one()));
    return p;
  }

  const F& field() const { return field_; }
  const std::map<Exponents, Element>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  std::size_t degree() const {
    std::size_t d = 0;
    for (const auto& [e, c] : terms_) {
      std::size_t t = 0;
      for (const auto& [v, k] : e) t += k;
      d = std::max(d, t);
    }
    return d;
  }

  void add_term(Exponents e, const Element& c) {
    if (field_.is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(std::move(e), c);
    if (!inserted) {
      it->second = field_.add(it->second, c);
      if (field_.is_zero(it->second)) terms_.erase(it);
    }
  }

  FullPolynomial operator+(const FullPolynomial& q) const {
    FullPolynomial r = *this;
    for (const auto& [e, c] : q.terms_) r.add_term(e, c);
    return r;
  }
  FullPolynomial operator-() const {
    FullPolynomial r(field_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, field_.neg(c));
    return r;
  }
  FullPolynomial operator-(const FullPolynomial& q) const { return *this + (-q); }
  FullPolynomial operator*(const FullPolynomial& q) const {
    FullPolynomial r(field_);
    for (const auto& [e1, c1] : terms_)
      for (const auto& [e2, c2] : q.terms_) r.add_term(multiply(e1, e2), field_.mul(c1, c2));
    return r;
  }

  /// Rewrites *this as sum_i q_i (x_i^2 - x_i) + r with r multilinear, adding
  /// the q_i into `quotients` and leaving r in *this.
  void split_boolean(std::map<Var, FullPolynomial>& quotients) {
    while (true) {
      auto it = std::find_if(terms_.begin(), terms_.end(), [](const auto& kv) {
        return std::any_of(kv.first.begin(), kv.first.end(), [](const auto& vk) { return vk.second >= 2; });
      });
      if (it == terms_.end()) return;
      Exponents e = it->first;
      Element c = it->second;
      auto pos = std::find_if(e.begin(), e.end(), [](const auto& vk) { return vk.second >= 2; });
      const Var i = pos->first;
      // c * rest * x_i^k = c * rest * x_i^(k-2) * (x_i^2 - x_i) + c * rest * x_i^(k-1)
      Exponents quotient = e;
      auto qpos = quotient.begin() + (pos - e.begin());
      if (qpos->second == 2) quotient.erase(qpos);
      else qpos->second -= 2;
      auto [qi, ignored] = quotients.try_emplace(i, FullPolynomial(field_));
      qi->second.add_term(quotient, c);
      FullPolynomial shifted(field_);
      shifted.add_term(quotient, c);
      *this = *this - shifted * boolean_axiom(field_, i);
    }
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [e, c] : terms_) {
      if (!s.empty()) s += " + ";
      s += field_.to_string(c);
      for (const auto& [v, k] : e) s += "*x" + std::to_string(v) + (k > 1 ? "^" + std::to_string(k) : "");
    }
    return s;
  }

  friend bool operator==(const FullPolynomial& a, const FullPolynomial& b) {
    return a.field_ == b.field_ && a.terms_ == b.terms_;
  }

 private:
  static Exponents multiply(const Exponents& a, const Exponents& b) {
    Exponents out;
    auto i = a.begin(), j = b.begin();
    while (i != a.end() || j != b.end()) {
      if (j == b.end() || (i != a.end() && i->first < j->first)) out.push_back(*i++);
      else if (i == a.end() || j->first < i->first) out.push_back(*j++);
      else out.emplace_back(i->first, i->second + j->second), ++i, ++j;
    }
    return out;
  }

  F field_;
  std::map<Exponents, Element> terms_;
};

}  // namespace pebcalc
