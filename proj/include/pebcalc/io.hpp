#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "pebcalc/pebbling.hpp"
#include "pebcalc/proofs.hpp"

namespace pebcalc {

using Json = nlohmann::json;

namespace detail {

inline Error schema(const std::string& what) { return Error(Errc::ParseError, what); }

inline const Json& field_of(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw schema(std::string("missing key '") + key + "'");
  return j.at(key);
}

template <class T>
T get_as(const Json& j, const char* key) {
  try {
    return field_of(j, key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw schema(std::string("bad value for '") + key + "': " + e.what());
  }
}

template <Field F>
typename F::Element coeff_from_json(const Json& j, const F& f) {
  if (j.is_string()) return f.parse(j.get<std::string>());
  if (j.is_number_integer()) return f.from_int(j.get<std::int64_t>());
  throw schema("coefficient must be a string or an integer");
}

}  // namespace detail

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::ParseError, "cannot open '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(Errc::ParseError, e.what());
  }
}

// ---- polynomials --------------------------------------------------------

template <Field F>
Json to_json(const Polynomial<F>& p) {
  Json out = Json::array();
  for (const auto& [m, c] : p.terms()) out.push_back(Json::array({p.field().to_string(c), m.vars()}));
  return out;
}

template <Field F>
Polynomial<F> poly_from_json(const Json& j, const F& f) {
  if (!j.is_array()) throw detail::schema("polynomial must be an array of [coeff, [vars]] terms");
  std::vector<typename Polynomial<F>::Term> terms;
  for (const auto& t : j) {
    if (!t.is_array() || t.size() != 2 || !t[1].is_array()) throw detail::schema("bad polynomial term " + t.dump());
    Monomial m;
    for (const auto& v : t[1]) {
      if (!v.is_number_unsigned()) throw detail::schema("variable ids are non-negative integers");
      m = m.with(v.get<Var>());
    }
    terms.emplace_back(m, detail::coeff_from_json(t[0], f));
  }
  return Polynomial<F>::from_terms(f, std::move(terms));
}

/// Full-ring polynomials repeat a variable once per power: x0^2 is [0, 0].
template <Field F>
Json to_json(const FullPolynomial<F>& p) {
  Json out = Json::array();
  for (const auto& [e, c] : p.terms()) {
    Json vars = Json::array();
    for (const auto& [v, k] : e)
      for (unsigned i = 0; i < k; ++i) vars.push_back(v);
    out.push_back(Json::array({p.field().to_string(c), vars}));
  }
  return out;
}

template <Field F>
FullPolynomial<F> full_poly_from_json(const Json& j, const F& f) {
  if (!j.is_array()) throw detail::schema("polynomial must be an array of terms");
  FullPolynomial<F> p(f);
  for (const auto& t : j) {
    if (!t.is_array() || t.size() != 2 || !t[1].is_array()) throw detail::schema("bad polynomial term " + t.dump());
    std::map<Var, unsigned> exps;
    for (const auto& v : t[1]) ++exps[v.get<Var>()];
    typename FullPolynomial<F>::Exponents e(exps.begin(), exps.end());
    p.add_term(std::move(e), detail::coeff_from_json(t[0], f));
  }
  return p;
}

// ---- systems -------------------------------------------------------------

template <Field F>
Json to_json(const PolySystem<F>& sys) {
  Json axioms = Json::array();
  for (const auto& p : sys.axioms) axioms.push_back(to_json(p));
  return {{"num_vars", sys.num_vars}, {"field", sys.field.spec().to_string()}, {"axioms", axioms}};
}

inline FieldSpec field_spec_of(const Json& j) {
  if (j.is_object() && j.contains("field")) return FieldSpec::parse(detail::get_as<std::string>(j, "field"));
  return FieldSpec::prime(kDefaultPrime);
}

template <Field F>
PolySystem<F> system_from_json(const Json& j, const F& f) {
  PolySystem<F> sys{f, detail::get_as<Var>(j, "num_vars"), {}};
  if (sys.num_vars > kMaxVars) throw Error(Errc::TooManyVariables, std::to_string(sys.num_vars) + " variables");
  for (const auto& a : detail::field_of(j, "axioms")) {
    auto p = poly_from_json(a, f);
    if (!p.support().divides(all_vars(sys.num_vars))) throw Error(Errc::IndexOutOfRange, "axiom uses an undeclared variable");
    sys.axioms.push_back(std::move(p));
  }
  return sys;
}

// ---- strategies ----------------------------------------------------------

inline Json to_json(const PebblingStrategy& s) {
  Json moves = Json::array();
  for (const auto& m : s.moves)
    moves.push_back({{"action", m.action == Action::Place ? "place" : "remove"},
                     {"color", m.color == Color::Black ? "black" : "white"},
                     {"vertex", m.vertex}});
  return {{"variant", std::string(to_string(s.variant))}, {"moves", moves}};
}

inline PebblingStrategy strategy_from_json(const Json& j) {
  PebblingStrategy s{parse_variant(detail::get_as<std::string>(j, "variant")), {}};
  for (const auto& m : detail::field_of(j, "moves")) {
    const auto action = detail::get_as<std::string>(m, "action");
    const auto color = m.contains("color") ? detail::get_as<std::string>(m, "color") : std::string("black");
    Move mv;
    if (action == "place") mv.action = Action::Place;
    else if (action == "remove") mv.action = Action::Remove;
    else throw detail::schema("unknown action '" + action + "'");
    if (color == "black") mv.color = Color::Black;
    else if (color == "white") mv.color = Color::White;
    else throw detail::schema("unknown color '" + color + "'");
    mv.vertex = detail::get_as<Vertex>(m, "vertex");
    s.moves.push_back(mv);
  }
  return s;
}

// ---- derivations ---------------------------------------------------------

template <Field F>
Json to_json(const Justification<F>& j, const F& f) {
  using Kind = typename Justification<F>::Kind;
  switch (j.kind) {
    case Kind::Axiom: return {{"rule", "axiom"}, {"axiom", j.a}};
    case Kind::LinComb:
      return {{"rule", "lincomb"}, {"a", j.a}, {"b", j.b}, {"alpha", f.to_string(j.alpha)}, {"beta", f.to_string(j.beta)}};
    case Kind::Mult: return {{"rule", "mult"}, {"premise", j.a}, {"var", j.var}};
  }
  return {};
}

template <Field F>
Justification<F> justification_from_json(const Json& j, const F& f) {
  const auto rule = detail::get_as<std::string>(j, "rule");
  if (rule == "axiom") return Justification<F>::axiom(detail::get_as<std::size_t>(j, "axiom"));
  if (rule == "lincomb")
    return Justification<F>::lincomb(detail::get_as<std::size_t>(j, "a"), detail::get_as<std::size_t>(j, "b"),
                                     detail::coeff_from_json(detail::field_of(j, "alpha"), f),
                                     detail::coeff_from_json(detail::field_of(j, "beta"), f));
  if (rule == "mult") return Justification<F>::mult(detail::get_as<std::size_t>(j, "premise"), detail::get_as<Var>(j, "var"));
  throw detail::schema("unknown rule '" + rule + "'");
}

template <Field F>
Json to_json(const Derivation<F>& d, const F& f) {
  Json lines = Json::array();
  for (const auto& l : d.lines) lines.push_back({{"poly", to_json(l.poly)}, {"just", to_json(l.just, f)}});
  return {{"system", std::string(to_string(d.system))}, {"field", f.spec().to_string()}, {"lines", lines}};
}

template <Field F>
Derivation<F> derivation_from_json(const Json& j, const F& f) {
  Derivation<F> d;
  d.system = parse_proof_system(detail::get_as<std::string>(j, "system"));
  for (const auto& l : detail::field_of(j, "lines"))
    d.lines.push_back({poly_from_json(detail::field_of(l, "poly"), f), justification_from_json(detail::field_of(l, "just"), f)});
  return d;
}

template <Field F>
Json to_json(const InputMcRefutation<F>& r, const F& f) {
  Json j = to_json(r.derivation, f);
  j["backbone"] = r.backbone;
  return j;
}

template <Field F>
InputMcRefutation<F> input_refutation_from_json(const Json& j, const F& f) {
  InputMcRefutation<F> r{derivation_from_json(j, f), {}};
  if (j.contains("backbone")) r.backbone = detail::get_as<std::vector<std::size_t>>(j, "backbone");
  return r;
}

// ---- certificates --------------------------------------------------------

template <Field F>
Json to_json(const NsCertificate<F>& c, const F& f) {
  Json g = Json::object();
  for (const auto& [j, p] : c.g) g[std::to_string(j)] = to_json(p);
  Json out = {{"field", f.spec().to_string()}, {"g", g}};
  if (c.h) {
    Json h = Json::object();
    for (const auto& [i, p] : *c.h) h[std::to_string(i)] = to_json(p);
    out["h"] = h;
  }
  return out;
}

namespace detail {

inline std::size_t key_index(const std::string& k) {
  auto v = parse_uint(k);
  if (!v) throw schema("object keys must be indices, got '" + k + "'");
  return static_cast<std::size_t>(*v);
}

}  // namespace detail

template <Field F>
NsCertificate<F> certificate_from_json(const Json& j, const F& f) {
  NsCertificate<F> c;
  for (const auto& [k, p] : detail::field_of(j, "g").items()) c.g.emplace(detail::key_index(k), poly_from_json(p, f));
  if (j.contains("h")) {
    std::map<Var, FullPolynomial<F>> h;
    for (const auto& [k, p] : j.at("h").items())
      h.emplace(static_cast<Var>(detail::key_index(k)), full_poly_from_json(p, f));
    c.h = std::move(h);
  }
  return c;
}

template <Field F>
Json to_json(const ConfigurationalProof<F>& c, const F& f) {
  using SKind = typename ConfStep<F>::Kind;
  Json steps = Json::array();
  for (const auto& s : c.steps) {
    switch (s.kind) {
      case SKind::Download: steps.push_back({{"op", "download"}, {"axiom", s.axiom}, {"poly", to_json(s.poly)}}); break;
      case SKind::Erase: steps.push_back({{"op", "erase"}, {"item", s.item}}); break;
      case SKind::Infer: steps.push_back({{"op", "infer"}, {"just", to_json(s.just, f)}, {"poly", to_json(s.poly)}}); break;
    }
  }
  return {{"system", std::string(to_string(c.system))}, {"field", f.spec().to_string()}, {"steps", steps}};
}

template <Field F>
ConfigurationalProof<F> configurational_from_json(const Json& j, const F& f) {
  using SKind = typename ConfStep<F>::Kind;
  ConfigurationalProof<F> c;
  c.system = parse_proof_system(detail::get_as<std::string>(j, "system"));
  for (const auto& s : detail::field_of(j, "steps")) {
    const auto op = detail::get_as<std::string>(s, "op");
    ConfStep<F> step;
    step.poly = Polynomial<F>(f);
    if (op == "download") {
      step.kind = SKind::Download;
      step.axiom = detail::get_as<std::size_t>(s, "axiom");
      step.poly = poly_from_json(detail::field_of(s, "poly"), f);
    } else if (op == "erase") {
      step.kind = SKind::Erase;
      step.item = detail::get_as<std::size_t>(s, "item");
    } else if (op == "infer") {
      step.kind = SKind::Infer;
      step.just = justification_from_json(detail::field_of(s, "just"), f);
      step.poly = poly_from_json(detail::field_of(s, "poly"), f);
    } else {
      throw detail::schema("unknown step op '" + op + "'");
    }
    c.steps.push_back(std::move(step));
  }
  return c;
}

inline Json to_json(const Measures& m) {
  Json j = {{"degree", m.degree}, {"size", m.size}, {"alt_size", m.alt_size}};
  if (m.vspace) j["vspace"] = *m.vspace;
  return j;
}

}  // namespace pebcalc
