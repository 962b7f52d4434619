#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "pebcalc/field.hpp"
#include "pebcalc/monomial.hpp"

namespace pebcalc {

/// A multilinear polynomial over F. Terms are kept sorted by GradedLess with
/// no zero coefficients, so structural equality is polynomial equality.
template <Field F>
class Polynomial {
 public:
  using Element = typename F::Element;
  using Term = std::pair<Monomial, Element>;

  explicit Polynomial(F field = F{}) : field_(std::move(field)) {}

  static Polynomial constant(const F& field, const Element& c) {
    Polynomial p(field);
    if (!field.is_zero(c)) p.terms_.emplace_back(Monomial::one(), c);
    return p;
  }
  static Polynomial one(const F& field) { return constant(field, field.one()); }
  static Polynomial monomial(const F& field, Monomial m, const Element& c) {
    Polynomial p(field);
    if (!field.is_zero(c)) p.terms_.emplace_back(m, c);
    return p;
  }
  static Polynomial monomial(const F& field, Monomial m) { return monomial(field, m, field.one()); }

  /// Builds a polynomial from arbitrary terms: collects duplicates, drops zeros.
  static Polynomial from_terms(const F& field, std::vector<Term> terms) {
    Polynomial p(field);
    p.terms_ = std::move(terms);
    p.canonicalize();
    return p;
  }

  const F& field() const { return field_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_one() const { return terms_.size() == 1 && terms_[0].first.is_one() && field_.is_one(terms_[0].second); }

  /// Degree of the zero polynomial is reported as 0.
  int degree() const { return terms_.empty() ? 0 : terms_.back().first.degree(); }

  /// A single term (scalar multiple of one monomial).
  bool is_monomial_shaped() const { return terms_.size() == 1; }

  Monomial support() const {
    Monomial s;
    for (const auto& [m, c] : terms_) s = s * m;
    return s;
  }

  Element coefficient(Monomial m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term& t, Monomial k) { return GradedLess{}(t.first, k); });
    return it != terms_.end() && it->first == m ? it->second : field_.zero();
  }

  /// Evaluates at the 0/1 point whose true coordinates are the bits of `ones`.
  Element evaluate(Monomial ones) const {
    Element acc = field_.zero();
    for (const auto& [m, c] : terms_)
      if (m.divides(ones)) acc = field_.add(acc, c);
    return acc;
  }

  Polynomial scaled(const Element& a) const {
    if (field_.is_zero(a)) return Polynomial(field_);
    Polynomial r(field_);
    r.terms_.reserve(terms_.size());
    for (const auto& [m, c] : terms_) r.terms_.emplace_back(m, field_.mul(a, c));
    return r;
  }

  /// alpha * p + beta * q.
  static Polynomial linear_combination(const Element& alpha, const Polynomial& p, const Element& beta,
                                       const Polynomial& q) {
    p.check_same_field(q);
    const F& f = p.field_;
    Polynomial r(f);
    r.terms_.reserve(p.terms_.size() + q.terms_.size());
    auto i = p.terms_.begin(), j = q.terms_.begin();
    GradedLess less;
    while (i != p.terms_.end() || j != q.terms_.end()) {
      if (j == q.terms_.end() || (i != p.terms_.end() && less(i->first, j->first))) {
        r.push_nonzero(i->first, f.mul(alpha, i->second));
        ++i;
      } else if (i == p.terms_.end() || less(j->first, i->first)) {
        r.push_nonzero(j->first, f.mul(beta, j->second));
        ++j;
      } else {
        r.push_nonzero(i->first, f.add(f.mul(alpha, i->second), f.mul(beta, j->second)));
        ++i, ++j;
      }
    }
    return r;
  }

  Polynomial operator+(const Polynomial& q) const { return linear_combination(field_.one(), *this, field_.one(), q); }
  Polynomial operator-(const Polynomial& q) const {
    return linear_combination(field_.one(), *this, field_.neg(field_.one()), q);
  }
  Polynomial operator-() const { return scaled(field_.neg(field_.one())); }

  Polynomial times(Monomial u) const {
    Polynomial r(field_);
    r.terms_.reserve(terms_.size());
    for (const auto& [m, c] : terms_) r.terms_.emplace_back(m * u, c);
    r.canonicalize();
    return r;
  }
  Polynomial times_var(Var x) const { return times(Monomial().with(x)); }

  Polynomial operator*(const Polynomial& q) const {
    check_same_field(q);
    std::vector<Term> out;
    out.reserve(terms_.size() * q.terms_.size());
    for (const auto& [m1, c1] : terms_)
      for (const auto& [m2, c2] : q.terms_) out.emplace_back(m1 * m2, field_.mul(c1, c2));
    return from_terms(field_, std::move(out));
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      if (!s.empty()) s += " + ";
      std::string c = field_.to_string(it->second);
      if (it->first.is_one()) s += c;
      else if (field_.is_one(it->second)) s += it->first.to_string();
      else s += c + "*" + it->first.to_string();
    }
    return s;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.field_ == b.field_ && a.terms_ == b.terms_;
  }

  void check_same_field(const Polynomial& q) const {
    if (!(field_ == q.field_))
      throw Error(Errc::FieldMismatch, field_.spec().to_string() + " vs " + q.field_.spec().to_string());
  }

 private:
  void push_nonzero(Monomial m, Element c) {
    if (!field_.is_zero(c)) terms_.emplace_back(m, std::move(c));
  }

  void canonicalize() {
    std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) { return GradedLess{}(a.first, b.first); });
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
      if (!out.empty() && out.back().first == t.first) out.back().second = field_.add(out.back().second, t.second);
      else out.push_back(std::move(t));
    }
    std::erase_if(out, [this](const Term& t) { return field_.is_zero(t.second); });
    terms_ = std::move(out);
  }

  F field_;
  std::vector<Term> terms_;
};

}  // namespace pebcalc
