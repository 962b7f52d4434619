#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "pebcalc/pebcalc.hpp"

using namespace pebcalc;

namespace {

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::string field;
  std::uint64_t seed = 0;
  Vertex cap_n = kDefaultCapN;
  bool json = false;
  bool tsv = false;
  std::optional<Vertex> target;
  bool ns_style_size = false;
};

Globals g;

int exit_code_of(Errc e) {
  switch (e) {
    case Errc::IllegalMove:
    case Errc::UnknownVertex:
    case Errc::DoesNotTouchSink:
    case Errc::DoesNotEndEmpty:
    case Errc::DegreeExceeded:
    case Errc::NotARefutation:
    case Errc::BadJustification:
    case Errc::McMultViolation:
    case Errc::LastLineNotOne:
    case Errc::BackboneBroken:
    case Errc::DeadPremise:
    case Errc::LastConfigNot1:
    case Errc::NotInputRefutation:
    case Errc::WrongSystem:
    case Errc::NotHorn:
    case Errc::SinkNeverPebbled:
      return 1;
    default:
      return 2;
  }
}

void write_out(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::ParseError, "cannot write '" + path + "'");
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Dag load_graph(const std::string& path) { return parse_graph(read_file(path)); }

Json load_json(const std::string& path) { return parse_json(read_file(path)); }

/// --field wins; otherwise the field recorded in the file; otherwise the default prime.
FieldSpec field_for(const Json* doc) {
  if (!g.field.empty()) return FieldSpec::parse(g.field);
  if (doc) return field_spec_of(*doc);
  return FieldSpec::prime(kDefaultPrime);
}

template <Field F>
void check_field(const Json& doc, const F& f) {
  if (doc.is_object() && doc.contains("field") && field_spec_of(doc) != f.spec())
    throw Error(Errc::FieldMismatch, "document is over " + field_spec_of(doc).to_string() + ", expected " + f.spec().to_string());
}

SearchLimits limits() { return SearchLimits{g.cap_n, std::min<Vertex>(g.cap_n, 16)}; }

Json measures_json(const Measures& m) {
  Json j = to_json(m);
  if (g.ns_style_size) std::swap(j["size"], j["alt_size"]);
  return j;
}

std::string measures_text(const Measures& m) {
  auto j = measures_json(m);
  std::ostringstream s;
  s << "valid degree=" << m.degree << " size=" << j["size"] << " alt_size=" << j["alt_size"];
  if (m.vspace) s << " vspace=" << *m.vspace;
  return s.str();
}

std::string show_optional(std::optional<int> v) { return v ? std::to_string(*v) : "-"; }

// ---- graph ----------------------------------------------------------------

void add_graph(CLI::App& app) {
  auto* graph = app.add_subcommand("graph", "Generate and inspect DAGs")->require_subcommand(1);

  auto* gen = graph->add_subcommand("gen", "Generate a standard graph");
  static std::string kind = "path", out;
  static Vertex param = 4;
  static double p = 0.3;
  gen->add_option("--kind", kind, "path|pyramid|binary_tree|random")->capture_default_str();
  gen->add_option("-n,--param", param, "size parameter: vertices or height")->capture_default_str();
  gen->add_option("--p", p, "edge probability for random graphs")->capture_default_str();
  gen->add_option("-o,--out", out, "output file");
  gen->callback([] { write_out(out, render_graph(generate(parse_graph_kind(kind), param, p, g.seed))); });

  auto* show = graph->add_subcommand("show", "Print a summary of a graph file");
  static std::string file;
  show->add_option("--graph", file)->required();
  show->callback([] {
    Dag d = load_graph(file);
    Json sinks = Json::array();
    for (Vertex s : d.sinks()) sinks.push_back(s);
    if (g.json) {
      Json edges = Json::array();
      for (Vertex v = 0; v < d.size(); ++v)
        for (Vertex u : d.preds(v)) edges.push_back({u, v});
      write_out("", dump({{"vertices", d.size()}, {"edges", edges}, {"sinks", sinks}}));
      return;
    }
    std::ostringstream s;
    s << "vertices " << d.size() << "\nedges " << d.edge_count() << "\nsinks " << sinks.dump() << "\n";
    s << render_graph(d);
    write_out("", s.str());
  });
}

// ---- peb ------------------------------------------------------------------

void add_peb(CLI::App& app) {
  auto* peb = app.add_subcommand("peb", "Pebble game search and validation")->require_subcommand(1);
  static std::string graph_file, variant = "black", witness_file, strategy_file;
  static std::size_t space = 0;

  auto* price = peb->add_subcommand("price", "Minimal number of pebbles");
  price->add_option("--graph", graph_file)->required();
  price->add_option("--variant", variant, "black|white|bw|reversible")->capture_default_str();
  price->add_option("--witness", witness_file, "write an optimal strategy here");
  price->callback([] {
    Dag d = load_graph(graph_file);
    auto r = pebbling_price_with_witness(d, parse_variant(variant), g.target, limits());
    if (!witness_file.empty()) write_out(witness_file, dump(to_json(r.witness)));
    write_out("", g.json ? dump({{"price", r.price}, {"witness", to_json(r.witness)}}) : std::to_string(r.price));
  });

  auto* time = peb->add_subcommand("time", "Minimal time within a space bound");
  time->add_option("--graph", graph_file)->required();
  time->add_option("--variant", variant)->capture_default_str();
  time->add_option("--space", space)->required();
  time->add_option("--witness", witness_file);
  time->callback([] {
    Dag d = load_graph(graph_file);
    auto s = min_time_strategy(d, parse_variant(variant), space, g.target, limits());
    if (!s) {
      write_out("", g.json ? dump({{"feasible", false}}) : "infeasible");
      throw CLI::RuntimeError(1);
    }
    auto m = validate_strategy(d, *s, g.target);
    if (!witness_file.empty()) write_out(witness_file, dump(to_json(*s)));
    write_out("", g.json ? dump({{"feasible", true}, {"time", m.time}, {"space", m.space}}) : std::to_string(m.time));
  });

  auto* frontier = peb->add_subcommand("frontier", "Time-space tradeoff frontier");
  frontier->add_option("--graph", graph_file)->required();
  frontier->add_option("--variant", variant)->capture_default_str();
  frontier->callback([] {
    auto f = tradeoff_frontier(load_graph(graph_file), parse_variant(variant), g.target, limits());
    if (g.json) {
      Json out = Json::array();
      for (const auto& p : f) out.push_back({{"space", p.space}, {"min_time", p.min_time}});
      write_out("", dump(out));
      return;
    }
    std::ostringstream s;
    s << "space\tmin_time\n";
    for (const auto& p : f) s << p.space << '\t' << p.min_time << '\n';
    write_out("", s.str());
  });

  auto* validate = peb->add_subcommand("validate", "Replay a strategy");
  validate->add_option("--graph", graph_file)->required();
  validate->add_option("--strategy", strategy_file)->required();
  validate->callback([] {
    auto m = validate_strategy(load_graph(graph_file), strategy_from_json(load_json(strategy_file)), g.target);
    write_out("", g.json ? dump({{"valid", true}, {"time", m.time}, {"space", m.space}})
                         : "valid time=" + std::to_string(m.time) + " space=" + std::to_string(m.space));
  });
}

// ---- formula --------------------------------------------------------------

void add_formula(CLI::App& app) {
  auto* formula = app.add_subcommand("formula", "Pebbling formulas and their encoding")->require_subcommand(1);
  static std::string graph_file, cnf_file, out;

  auto* gen = formula->add_subcommand("gen", "Pebbling formula in DIMACS form");
  gen->add_option("--graph", graph_file)->required();
  gen->add_option("-o,--out", out);
  gen->callback([] { write_out(out, render_dimacs(pebbling_formula(load_graph(graph_file)))); });

  auto* enc = formula->add_subcommand("encode", "Polynomial system of a CNF or of Peb(G)");
  auto* gopt = enc->add_option("--graph", graph_file);
  enc->add_option("--cnf", cnf_file, "DIMACS file")->excludes(gopt);
  enc->add_option("-o,--out", out);
  enc->callback([] {
    if (graph_file.empty() == cnf_file.empty()) throw Usage("encode needs exactly one of --graph, --cnf");
    CnfFormula f = graph_file.empty() ? parse_dimacs(read_file(cnf_file)) : pebbling_formula(load_graph(graph_file));
    with_field(field_for(nullptr), [&](const auto& fld) { write_out(out, dump(to_json(encode(f, fld)))); });
  });
}

// ---- translate ------------------------------------------------------------

void add_translate(CLI::App& app) {
  auto* tr = app.add_subcommand("translate", "Strategy and proof translations")->require_subcommand(1);
  static std::string graph_file, strategy_file, proof_file, system_file, out;

  auto* b2m = tr->add_subcommand("black2mc", "Black strategy to input MC refutation of Peb(G)");
  b2m->add_option("--graph", graph_file)->required();
  b2m->add_option("--strategy", strategy_file)->required();
  b2m->add_option("-o,--out", out);
  b2m->callback([] {
    Dag d = load_graph(graph_file);
    auto s = strategy_from_json(load_json(strategy_file));
    with_field(field_for(nullptr), [&](const auto& f) { write_out(out, dump(to_json(black_to_mc(d, s, f), f))); });
  });

  auto* m2p = tr->add_subcommand("mc2peb", "Input MC refutation to black strategy");
  m2p->add_option("--graph", graph_file)->required();
  m2p->add_option("--proof", proof_file)->required();
  m2p->add_option("-o,--out", out);
  m2p->callback([] {
    Dag d = load_graph(graph_file);
    Json doc = load_json(proof_file);
    with_field(field_for(&doc), [&](const auto& f) {
      write_out(out, dump(to_json(mc_to_pebbling(d, input_refutation_from_json(doc, f)))));
    });
  });

  auto* r2n = tr->add_subcommand("rev2ns", "Reversible strategy to NS certificate of Peb(G)");
  r2n->add_option("--graph", graph_file)->required();
  r2n->add_option("--strategy", strategy_file)->required();
  r2n->add_option("-o,--out", out);
  r2n->callback([] {
    Dag d = load_graph(graph_file);
    auto s = strategy_from_json(load_json(strategy_file));
    with_field(field_for(nullptr), [&](const auto& f) { write_out(out, dump(to_json(rev_to_ns(d, s, f), f))); });
  });

  auto* norm = tr->add_subcommand("normalize", "MC refutation of a Horn system to input form");
  norm->add_option("--system", system_file)->required();
  norm->add_option("--proof", proof_file)->required();
  norm->add_option("-o,--out", out);
  norm->callback([] {
    Json sdoc = load_json(system_file), pdoc = load_json(proof_file);
    with_field(field_for(&sdoc), [&](const auto& f) {
      check_field(pdoc, f);
      auto sys = system_from_json(sdoc, f);
      write_out(out, dump(to_json(normalize_to_input(sys, derivation_from_json(pdoc, f)), f)));
    });
  });
}

// ---- verify ---------------------------------------------------------------

void add_verify(CLI::App& app) {
  auto* verify = app.add_subcommand("verify", "Check proofs against a polynomial system")->require_subcommand(1);
  static std::string system_file, proof_file;
  static bool explicit_mode = false, input_form = false;

  auto emit = [](const Measures& m) { write_out("", g.json ? dump(measures_json(m)) : measures_text(m)); };

  auto* ns = verify->add_subcommand("ns", "Nullstellensatz certificate");
  ns->add_option("--system", system_file)->required();
  ns->add_option("--proof", proof_file)->required();
  ns->add_flag("--explicit", explicit_mode, "check over the full ring with Boolean-axiom multipliers");
  ns->callback([emit] {
    Json sdoc = load_json(system_file), pdoc = load_json(proof_file);
    with_field(field_for(&sdoc), [&](const auto& f) {
      check_field(pdoc, f);
      emit(verify_ns(system_from_json(sdoc, f), certificate_from_json(pdoc, f),
                     explicit_mode ? NsMode::Explicit : NsMode::Multilinear));
    });
  });

  for (auto system : {ProofSystem::MC, ProofSystem::PC}) {
    const bool mc = system == ProofSystem::MC;
    auto* sub = verify->add_subcommand(mc ? "mc" : "pc", mc ? "Monomial-calculus derivation" : "Polynomial-calculus derivation");
    sub->add_option("--system", system_file)->required();
    sub->add_option("--proof", proof_file)->required();
    if (mc) sub->add_flag("--input", input_form, "also check the input-refutation backbone");
    sub->callback([emit, system] {
      Json sdoc = load_json(system_file), pdoc = load_json(proof_file);
      with_field(field_for(&sdoc), [&](const auto& f) {
        check_field(pdoc, f);
        auto sys = system_from_json(sdoc, f);
        auto r = input_refutation_from_json(pdoc, f);
        r.derivation.system = system;
        emit(input_form && system == ProofSystem::MC ? check_input_refutation(sys, r) : verify_derivation(sys, r.derivation));
      });
    });
  }

  auto* conf = verify->add_subcommand("conf", "Configurational proof with variable space");
  conf->add_option("--system", system_file)->required();
  conf->add_option("--proof", proof_file, "configurational proof, or a derivation to convert")->required();
  conf->callback([emit] {
    Json sdoc = load_json(system_file), pdoc = load_json(proof_file);
    with_field(field_for(&sdoc), [&](const auto& f) {
      check_field(pdoc, f);
      auto sys = system_from_json(sdoc, f);
      auto c = pdoc.contains("steps") ? configurational_from_json(pdoc, f)
                                      : to_configurational(derivation_from_json(pdoc, f));
      emit(verify_configurational(sys, c));
    });
  });
}

// ---- decide ---------------------------------------------------------------

void add_decide(CLI::App& app) {
  auto* decide = app.add_subcommand("decide", "Bounded-degree refutability");
  static std::string system_name = "mc", input_file, cert_out;
  static std::optional<int> degree;
  static bool min_deg = false;
  static int max_degree = -1;
  static std::uint64_t cap = kDefaultDimensionCap;
  decide->add_option("--system", system_name, "ns|mc|pc")->capture_default_str();
  decide->add_option("--input", input_file, "polynomial system JSON")->required();
  auto* dopt = decide->add_option("--degree", degree);
  auto* mopt = decide->add_flag("--min-degree", min_deg);
  dopt->excludes(mopt);
  decide->add_option("--max-degree", max_degree, "upper end of the --min-degree scan (default n + 1)");
  decide->add_option("--dimension-cap", cap)->capture_default_str();
  decide->add_option("--certificate", cert_out, "write the NS certificate found at --degree");
  decide->callback([] {
    if (!degree && !min_deg) throw Usage("decide needs --degree or --min-degree");
    Json sdoc = load_json(input_file);
    const ProofSystem ps = parse_proof_system(system_name);
    const DecideOptions opt{cap};
    with_field(field_for(&sdoc), [&](const auto& f) {
      auto sys = system_from_json(sdoc, f);
      if (min_deg) {
        const int top = max_degree >= 0 ? max_degree : static_cast<int>(sys.num_vars) + 1;
        auto d = min_degree(sys, ps, top, opt);
        write_out("", g.json ? dump({{"min_degree", d ? Json(*d) : Json(nullptr)}}) : show_optional(d));
        if (!d) throw CLI::RuntimeError(1);
        return;
      }
      bool ok;
      if (ps == ProofSystem::NS) {
        auto c = ns_feasible(sys, *degree, opt);
        ok = c.has_value();
        if (c && !cert_out.empty()) write_out(cert_out, dump(to_json(*c, f)));
      } else {
        ok = feasible(sys, ps, *degree, opt);
      }
      write_out("", g.json ? dump({{"feasible", ok}, {"degree", *degree}}) : (ok ? "feasible" : "infeasible"));
      if (!ok) throw CLI::RuntimeError(1);
    });
  });
}

// ---- report ---------------------------------------------------------------

void add_report(CLI::App& app) {
  auto* report = app.add_subcommand("report", "Tables over a graph corpus")->require_subcommand(1);
  static CorpusSpec spec;
  auto add_corpus = [](CLI::App* sub) {
    sub->add_option("--nmax", spec.nmax, "all single-sink DAGs up to this size")->capture_default_str();
    sub->add_option("--path-max", spec.path_max)->capture_default_str();
    sub->add_option("--pyramid-max", spec.pyramid_max)->capture_default_str();
    sub->add_option("--tree-max", spec.tree_max)->capture_default_str();
  };

  auto* eq = report->add_subcommand("equalities", "Prices next to minimal refutation degrees");
  add_corpus(eq);
  eq->callback([] {
    bool all = true;
    Json rows = Json::array();
    if (!g.json) std::cout << "graph\tbw\tblack\trev\tpc_deg\tmc_deg\tns_deg\tmc==black\tns==rev\n";
    with_field(field_for(nullptr), [&](const auto& f) {
      for (const auto& e : build_corpus(spec)) {
        auto r = price_report(e.dag, f, limits());
        all = all && r.mc_matches_black() && r.ns_matches_rev();
        if (g.json) {
          rows.push_back({{"graph", e.name}, {"bw", r.bw}, {"black", r.black}, {"rev", r.rev},
                          {"pc_deg", r.pc_deg ? Json(*r.pc_deg) : Json(nullptr)},
                          {"mc_deg", r.mc_deg ? Json(*r.mc_deg) : Json(nullptr)},
                          {"ns_deg", r.ns_deg ? Json(*r.ns_deg) : Json(nullptr)},
                          {"mc==black", r.mc_matches_black()}, {"ns==rev", r.ns_matches_rev()}});
          continue;
        }
        std::cout << e.name << '\t' << r.bw << '\t' << r.black << '\t' << r.rev << '\t' << show_optional(r.pc_deg)
                  << '\t' << show_optional(r.mc_deg) << '\t' << show_optional(r.ns_deg) << '\t'
                  << (r.mc_matches_black() ? "true" : "false") << '\t' << (r.ns_matches_rev() ? "true" : "false")
                  << '\n'
                  << std::flush;
      }
    });
    if (g.json) write_out("", dump(rows));
    if (!all) throw CLI::RuntimeError(1);
  });

  auto* tr = report->add_subcommand("tradeoff", "Time-space frontiers over the corpus");
  add_corpus(tr);
  static std::string variant = "black";
  tr->add_option("--variant", variant)->capture_default_str();
  tr->callback([] {
    const auto v = parse_variant(variant);
    Json rows = Json::array();
    if (!g.json) std::cout << "graph\tspace\tmin_time\n";
    for (const auto& e : build_corpus(spec)) {
      for (const auto& p : tradeoff_frontier(e.dag, v, std::nullopt, limits())) {
        if (g.json) rows.push_back({{"graph", e.name}, {"space", p.space}, {"min_time", p.min_time}});
        else std::cout << e.name << '\t' << p.space << '\t' << p.min_time << '\n';
      }
    }
    if (g.json) write_out("", dump(rows));
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pebcalc: pebbling games and algebraic proof systems"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--field", g.field, "rational | prime:P (default prime:65521)");
  app.add_option("--seed", g.seed, "seed for random generation")->capture_default_str();
  app.add_option("--cap-n", g.cap_n, "largest graph the game search accepts")->capture_default_str();
  auto* json = app.add_flag("--json", g.json, "JSON output");
  app.add_flag("--tsv", g.tsv, "tab-separated output (default for tables)")->excludes(json);
  app.add_option("--target", g.target, "target vertex for multi-sink graphs");
  app.add_flag("--ns-style-size", g.ns_style_size, "report the alternative size convention as size");

  add_graph(app);
  add_peb(app);
  add_formula(app);
  add_translate(app);
  add_verify(app);
  add_decide(app);
  add_report(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::RuntimeError& e) {
    return e.get_exit_code();
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const Usage& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << e.what();
    if (e.index()) std::cerr << " (at " << *e.index() << ")";
    std::cerr << '\n';
    return exit_code_of(e.code());
  }
  return 0;
}
