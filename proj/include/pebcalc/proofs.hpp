#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "pebcalc/formula.hpp"
#include "pebcalc/full_polynomial.hpp"

namespace pebcalc {

/// NS here is the dynamic reading of Nullstellensatz: multiplication only
/// applies to axiom-products.
enum class ProofSystem { NS, MC, PC };

inline std::string_view to_string(ProofSystem s) {
  switch (s) {
    case ProofSystem::NS: return "ns";
    case ProofSystem::MC: return "mc";
    case ProofSystem::PC: return "pc";
  }
  return "?";
}

inline ProofSystem parse_proof_system(std::string_view s) {
  if (s == "ns" || s == "NS") return ProofSystem::NS;
  if (s == "mc" || s == "MC") return ProofSystem::MC;
  if (s == "pc" || s == "PC") return ProofSystem::PC;
  throw Error(Errc::InvalidParam, "unknown proof system '" + std::string(s) + "'");
}

/// Degree, size (monomials counted with repetitions) and, for configurational
/// proofs, variable space. `alt_size` carries the second size convention:
/// for derivations the count including axiom downloads, for NS certificates
/// the total number of monomials in the multipliers g_j.
struct Measures {
  std::size_t degree = 0;
  std::size_t size = 0;
  std::size_t alt_size = 0;
  std::optional<std::size_t> vspace;

  friend bool operator==(const Measures&, const Measures&) = default;
};

template <Field F>
struct Justification {
  enum class Kind { Axiom, LinComb, Mult };
  using Element = typename F::Element;

  Kind kind = Kind::Axiom;
  std::size_t a = 0;  // axiom index for Axiom, premise otherwise
  std::size_t b = 0;
  Element alpha{};
  Element beta{};
  Var var = 0;

  static Justification axiom(std::size_t j) { return {Kind::Axiom, j, 0, {}, {}, 0}; }
  static Justification lincomb(std::size_t a, std::size_t b, Element alpha, Element beta) {
    return {Kind::LinComb, a, b, std::move(alpha), std::move(beta), 0};
  }
  static Justification mult(std::size_t a, Var x) { return {Kind::Mult, a, 0, {}, {}, x}; }

  friend bool operator==(const Justification&, const Justification&) = default;
};

template <Field F>
struct DerivationLine {
  Polynomial<F> poly;
  Justification<F> just;

  friend bool operator==(const DerivationLine&, const DerivationLine&) = default;
};

template <Field F>
struct Derivation {
  ProofSystem system = ProofSystem::MC;
  std::vector<DerivationLine<F>> lines;

  std::size_t add(Polynomial<F> poly, Justification<F> just) {
    lines.push_back({std::move(poly), std::move(just)});
    return lines.size() - 1;
  }
  friend bool operator==(const Derivation&, const Derivation&) = default;
};

template <Field F>
struct InputMcRefutation {
  Derivation<F> derivation;
  std::vector<std::size_t> backbone;
};

template <Field F>
struct NsCertificate {
  std::map<std::size_t, Polynomial<F>> g;
  std::optional<std::map<Var, FullPolynomial<F>>> h;
};

enum class NsMode { Multilinear, Explicit };

/// Side condition of the MC multiplication rule. A premise qualifies when it
/// is an axiom-product (tracked structurally) or a single term; accepting a
/// scalar times a monomial is the one interpretive choice, and this is the
/// only place that makes it.
template <Field F>
bool mc_mult_premise_ok(const Polynomial<F>& premise, bool is_axiom_product) {
  return is_axiom_product || premise.is_monomial_shaped();
}

namespace detail {

template <Field F>
std::size_t derived_size(const Polynomial<F>& p) {
  return p.size();
}

template <Field F>
void check_field(const PolySystem<F>& sys, const Polynomial<F>& p, std::size_t where) {
  if (!(p.field() == sys.field))
    throw Error(Errc::FieldMismatch, "item " + std::to_string(where) + " is over " + p.field().spec().to_string(), where);
}

/// Recomputes one inference from live premises; shared by line-based and
/// configurational verification.
template <Field F>
Polynomial<F> recompute(const PolySystem<F>& sys, ProofSystem system, const Justification<F>& j,
                        const Polynomial<F>* pa, bool pa_product, const Polynomial<F>* pb, std::size_t where,
                        bool& out_product) {
  using Kind = typename Justification<F>::Kind;
  switch (j.kind) {
    case Kind::Axiom:
      if (j.a >= sys.axioms.size())
        throw Error(Errc::BadJustification, "line " + std::to_string(where) + ": no axiom " + std::to_string(j.a), where);
      out_product = true;
      return sys.axioms[j.a];
    case Kind::LinComb:
      out_product = false;
      return Polynomial<F>::linear_combination(j.alpha, *pa, j.beta, *pb);
    case Kind::Mult:
      if (j.var >= sys.num_vars)
        throw Error(Errc::BadJustification, "line " + std::to_string(where) + ": unknown variable", where);
      if (system == ProofSystem::MC && !mc_mult_premise_ok(*pa, pa_product))
        throw Error(Errc::McMultViolation,
                    "line " + std::to_string(where) + ": premise is neither a monomial nor an axiom-product", where);
      if (system == ProofSystem::NS && !pa_product)
        throw Error(Errc::McMultViolation, "line " + std::to_string(where) + ": NS multiplies axiom-products only",
                    where);
      out_product = pa_product;
      return pa->times_var(j.var);
  }
  throw Error(Errc::BadJustification, "unknown rule", where);
}

}  // namespace detail

/// Replays a line-based MC/PC/NS derivation. Size counts the monomials of
/// every inferred line; axiom downloads only enter `alt_size`.
template <Field F>
Measures verify_derivation(const PolySystem<F>& sys, const Derivation<F>& d, std::vector<bool>* product_flags = nullptr) {
  using Kind = typename Justification<F>::Kind;
  Measures m;
  std::vector<bool> product(d.lines.size(), false);
  for (std::size_t i = 0; i < d.lines.size(); ++i) {
    const auto& line = d.lines[i];
    detail::check_field(sys, line.poly, i);
    const auto& j = line.just;
    if (j.kind != Kind::Axiom) {
      if (j.a >= i || (j.kind == Kind::LinComb && j.b >= i))
        throw Error(Errc::BadJustification, "line " + std::to_string(i) + " refers to a later line", i);
    }
    const Polynomial<F>* pa = j.kind == Kind::Axiom ? nullptr : &d.lines[j.a].poly;
    const Polynomial<F>* pb = j.kind == Kind::LinComb ? &d.lines[j.b].poly : nullptr;
    bool is_product = false;
    Polynomial<F> expect = detail::recompute(sys, d.system, j, pa, pa ? bool(product[j.a]) : false, pb, i, is_product);
    if (!(expect == line.poly))
      throw Error(Errc::BadJustification,
                  "line " + std::to_string(i) + " is " + line.poly.to_string() + " but its rule gives " + expect.to_string(), i);
    product[i] = is_product;
    m.degree = std::max<std::size_t>(m.degree, static_cast<std::size_t>(line.poly.degree()));
    m.alt_size += line.poly.size();
    if (j.kind != Kind::Axiom) m.size += line.poly.size();
  }
  if (d.lines.empty() || !d.lines.back().poly.is_one())
    throw Error(Errc::LastLineNotOne, "the last line must be the constant 1");
  if (product_flags) *product_flags = std::move(product);
  return m;
}

/// Checks the backbone structure on top of verify_derivation: M_0 is a
/// monomial-shaped axiom-product, each M_i follows from M_{i-1} by a
/// multiplication or by a linear combination with an axiom-product, M_t = 1,
/// backbone monomials are pairwise distinct, and every other line is an
/// axiom-product.
template <Field F>
Measures check_input_refutation(const PolySystem<F>& sys, const InputMcRefutation<F>& r) {
  using Kind = typename Justification<F>::Kind;
  const auto& d = r.derivation;
  const auto& bb = r.backbone;
  auto broken = [](std::size_t idx, const std::string& why) {
    return Error(Errc::BackboneBroken, "backbone entry " + std::to_string(idx) + ": " + why, idx);
  };
  if (d.system != ProofSystem::MC) throw broken(0, "input refutations are MC derivations");
  std::vector<bool> product;
  Measures m = verify_derivation(sys, d, &product);
  if (bb.empty()) throw broken(0, "empty backbone");
  if (bb.back() + 1 != d.lines.size()) throw broken(bb.size() - 1, "backbone must end at the last line");
  std::vector<bool> on_backbone(d.lines.size(), false);
  std::unordered_set<Monomial> seen;
  for (std::size_t k = 0; k < bb.size(); ++k) {
    std::size_t li = bb[k];
    if (li >= d.lines.size()) throw broken(k, "index out of range");
    if (k > 0 && li <= bb[k - 1]) throw broken(k, "indices must increase");
    const auto& poly = d.lines[li].poly;
    if (!poly.is_monomial_shaped()) throw broken(k, "line " + std::to_string(li) + " is not a monomial");
    if (!seen.insert(poly.terms()[0].first).second) throw broken(k, "repeated monomial " + poly.to_string());
    on_backbone[li] = true;
    const auto& j = d.lines[li].just;
    if (k == 0) {
      if (!product[li]) throw broken(k, "M_0 must be an axiom-product");
      continue;
    }
    const std::size_t prev = bb[k - 1];
    if (j.kind == Kind::Mult) {
      if (j.a != prev) throw broken(k, "multiplication must apply to the previous backbone monomial");
    } else if (j.kind == Kind::LinComb) {
      const bool ok = (j.a == prev && j.b != prev && product[j.b]) || (j.b == prev && j.a != prev && product[j.a]);
      if (!ok) throw broken(k, "linear combination must pair the previous backbone monomial with an axiom-product");
    } else {
      throw broken(k, "only M_0 may be an axiom line");
    }
  }
  if (!d.lines.back().poly.is_one()) throw broken(bb.size() - 1, "backbone must end at 1");
  for (std::size_t i = 0; i < d.lines.size(); ++i)
    if (!on_backbone[i] && !product[i])
      throw Error(Errc::BackboneBroken, "line " + std::to_string(i) + " is neither backbone nor axiom-product", i);
  return m;
}

/// Checks sum_j g_j p_j (+ sum_i h_i (x_i^2 - x_i) in explicit mode) == 1.
template <Field F>
Measures verify_ns(const PolySystem<F>& sys, const NsCertificate<F>& cert, NsMode mode = NsMode::Multilinear) {
  Measures m;
  const F& f = sys.field;
  for (const auto& [j, g] : cert.g) {
    if (j >= sys.axioms.size()) throw Error(Errc::IndexOutOfRange, "no axiom " + std::to_string(j), j);
    detail::check_field(sys, g, j);
  }
  if (mode == NsMode::Multilinear) {
    Polynomial<F> sum(f);
    for (const auto& [j, g] : cert.g) {
      Polynomial<F> prod = g * sys.axioms[j];
      m.degree = std::max<std::size_t>(m.degree, static_cast<std::size_t>(prod.degree()));
      m.size += prod.size();
      m.alt_size += g.size();
      sum = sum + prod;
    }
    if (!sum.is_one())
      throw Error(Errc::NotARefutation, "sum of g_j * p_j is " + sum.to_string() + "; residual " +
                                            (sum - Polynomial<F>::one(f)).to_string());
    return m;
  }
  FullPolynomial<F> sum(f);
  for (const auto& [j, g] : cert.g) {
    FullPolynomial<F> prod = FullPolynomial<F>::from_multilinear(g) * FullPolynomial<F>::from_multilinear(sys.axioms[j]);
    m.degree = std::max(m.degree, prod.degree());
    m.size += prod.size();
    m.alt_size += g.size();
    sum = sum + prod;
  }
  if (cert.h) {
    for (const auto& [i, h] : *cert.h) {
      if (!(h.field() == f)) throw Error(Errc::FieldMismatch, "h_" + std::to_string(i) + " field differs", i);
      if (i >= sys.num_vars) throw Error(Errc::IndexOutOfRange, "no variable " + std::to_string(i), i);
      FullPolynomial<F> prod = h * FullPolynomial<F>::boolean_axiom(f, i);
      if (!prod.is_zero()) m.degree = std::max(m.degree, prod.degree());
      m.size += prod.size();
      sum = sum + prod;
    }
  }
  FullPolynomial<F> one = FullPolynomial<F>::constant(f, f.one());
  if (!(sum == one))
    throw Error(Errc::NotARefutation, "explicit identity fails; residual " + (sum - one).to_string());
  return m;
}

/// Fills in the Boolean-axiom multipliers h_i so that a multilinear-mode
/// certificate also satisfies the identity over the full polynomial ring.
template <Field F>
NsCertificate<F> lift_to_explicit(const PolySystem<F>& sys, NsCertificate<F> cert) {
  const F& f = sys.field;
  FullPolynomial<F> rest(f);
  for (const auto& [j, g] : cert.g)
    rest = rest + FullPolynomial<F>::from_multilinear(g) * FullPolynomial<F>::from_multilinear(sys.axioms.at(j));
  rest = rest - FullPolynomial<F>::constant(f, f.one());
  std::map<Var, FullPolynomial<F>> q;
  rest.split_boolean(q);  // rest == sum q_i (x_i^2 - x_i) + multilinear remainder
  if (!rest.is_zero()) throw Error(Errc::NotARefutation, "certificate residual " + rest.to_string());
  std::map<Var, FullPolynomial<F>> h;
  for (auto& [i, qi] : q) h.emplace(i, -qi);
  cert.h = std::move(h);
  return cert;
}

/// Memory-configuration proof: each step downloads an axiom, erases an item
/// or infers a new item from live ones. Items are named by the index of the
/// step that created them.
template <Field F>
struct ConfStep {
  enum class Kind { Download, Erase, Infer };

  Kind kind = Kind::Download;
  std::size_t axiom = 0;  // Download
  std::size_t item = 0;   // Erase
  Justification<F> just;  // Infer (premises are item ids)
  Polynomial<F> poly;     // Download, Infer
};

template <Field F>
struct ConfigurationalProof {
  ProofSystem system = ProofSystem::MC;
  std::vector<ConfStep<F>> steps;
};

/// Lays a derivation out as a configurational proof, erasing every item right
/// after the inference that uses it last. Lines that are never used (other
/// than the final one) are erased immediately.
template <Field F>
ConfigurationalProof<F> to_configurational(const Derivation<F>& d) {
  using Kind = typename Justification<F>::Kind;
  using SKind = typename ConfStep<F>::Kind;
  const std::size_t n = d.lines.size();
  std::vector<std::size_t> last_use(n, SIZE_MAX);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& j = d.lines[i].just;
    if (j.kind == Kind::Axiom) continue;
    last_use[j.a] = i;
    if (j.kind == Kind::LinComb) last_use[j.b] = i;
  }
  ConfigurationalProof<F> out{d.system, {}};
  std::vector<std::size_t> item_of(n, 0);
  auto erase = [&](std::size_t line) {
    ConfStep<F> s{SKind::Erase, 0, item_of[line], {}, Polynomial<F>(d.lines[line].poly.field())};
    out.steps.push_back(std::move(s));
  };
  for (std::size_t i = 0; i < n; ++i) {
    const auto& line = d.lines[i];
    ConfStep<F> s;
    s.poly = line.poly;
    if (line.just.kind == Kind::Axiom) {
      s.kind = SKind::Download;
      s.axiom = line.just.a;
    } else {
      s.kind = SKind::Infer;
      s.just = line.just;
      s.just.a = item_of[line.just.a];
      if (line.just.kind == Kind::LinComb) s.just.b = item_of[line.just.b];
    }
    item_of[i] = out.steps.size();
    out.steps.push_back(std::move(s));
    if (line.just.kind != Kind::Axiom) {
      if (last_use[line.just.a] == i) erase(line.just.a);
      if (line.just.kind == Kind::LinComb && line.just.b != line.just.a && last_use[line.just.b] == i)
        erase(line.just.b);
    }
    if (last_use[i] == SIZE_MAX && i + 1 != n) erase(i);
  }
  return out;
}

/// Replays a configurational proof; returns degree, size and exact variable
/// space (largest number of distinct variables over all configurations).
template <Field F>
Measures verify_configurational(const PolySystem<F>& sys, const ConfigurationalProof<F>& c) {
  using Kind = typename Justification<F>::Kind;
  using SKind = typename ConfStep<F>::Kind;
  struct Item {
    const Polynomial<F>* poly;
    bool product;
  };
  std::map<std::size_t, Item> live;
  Measures m;
  m.vspace = 0;
  auto dead = [](std::size_t step, std::size_t item) {
    return Error(Errc::DeadPremise, "step " + std::to_string(step) + " uses item " + std::to_string(item) + " which is not live", step);
  };
  for (std::size_t i = 0; i < c.steps.size(); ++i) {
    const auto& s = c.steps[i];
    switch (s.kind) {
      case SKind::Download: {
        detail::check_field(sys, s.poly, i);
        if (s.axiom >= sys.axioms.size() || !(sys.axioms[s.axiom] == s.poly))
          throw Error(Errc::BadJustification, "step " + std::to_string(i) + " downloads a polynomial that is not axiom " + std::to_string(s.axiom), i);
        live.emplace(i, Item{&s.poly, true});
        m.alt_size += s.poly.size();
        m.degree = std::max<std::size_t>(m.degree, static_cast<std::size_t>(s.poly.degree()));
        break;
      }
      case SKind::Erase:
        if (!live.erase(s.item)) throw dead(i, s.item);
        break;
      case SKind::Infer: {
        detail::check_field(sys, s.poly, i);
        if (s.just.kind == Kind::Axiom)
          throw Error(Errc::BadJustification, "step " + std::to_string(i) + ": axioms enter by download", i);
        auto a = live.find(s.just.a);
        if (a == live.end()) throw dead(i, s.just.a);
        const Polynomial<F>* pb = nullptr;
        if (s.just.kind == Kind::LinComb) {
          auto b = live.find(s.just.b);
          if (b == live.end()) throw dead(i, s.just.b);
          pb = b->second.poly;
        }
        bool product = false;
        Polynomial<F> expect = detail::recompute(sys, c.system, s.just, a->second.poly, a->second.product, pb, i, product);
        if (!(expect == s.poly))
          throw Error(Errc::BadJustification, "step " + std::to_string(i) + " infers " + s.poly.to_string() + " but its rule gives " + expect.to_string(), i);
        live.emplace(i, Item{&s.poly, product});
        m.size += s.poly.size();
        m.alt_size += s.poly.size();
        m.degree = std::max<std::size_t>(m.degree, static_cast<std::size_t>(s.poly.degree()));
        break;
      }
    }
    Monomial vars;
    for (const auto& [id, item] : live) vars = vars * item.poly->support();
    m.vspace = std::max<std::size_t>(*m.vspace, static_cast<std::size_t>(vars.degree()));
  }
  bool has_one = std::any_of(live.begin(), live.end(), [](const auto& kv) { return kv.second.poly->is_one(); });
  if (!has_one) throw Error(Errc::LastConfigNot1, "final configuration does not contain 1");
  return m;
}

}  // namespace pebcalc
