// thinspan command-line interface: validate kernel files, compose and check
// spans, verify the bicategorical structure, interpret λ-terms, and run the
// randomized suites.  Exit codes: 0 success, 1 check failure, 2 input error.
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "thinspan/bang.hpp"
#include "thinspan/harness.hpp"
#include "thinspan/json_io.hpp"
#include "thinspan/stlc.hpp"

using namespace thinspan;

namespace {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

nlohmann::json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

std::string load_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

PairingFunction pairing_by_name(const std::string& name) {
  if (name == "cantor") return cantor_pairing();
  if (name == "shift") return shift_pairing();
  throw InputError("unknown pairing '" + name + "' (cantor | shift)");
}

int report_outcome(const CertReport& rep, bool json) {
  if (json) {
    nlohmann::json out{{"pass", rep.pass},
                       {"checked", rep.checked},
                       {"failures", rep.failures}};
    std::cout << out.dump() << "\n";
  } else {
    for (const auto& c : rep.checked) std::cout << "ok   " << c << "\n";
    for (const auto& f : rep.failures) std::cout << "FAIL " << f << "\n";
    std::cout << (rep.pass ? "pass" : "fail") << " (" << rep.checked.size()
              << " checks, " << rep.failures.size() << " failures)\n";
  }
  return rep.pass ? 0 : 1;
}

Gpd booleans() { return FiniteGroupoid::discrete_gpd(2, {"tt", "ff"}); }

int cmd_interpret(const std::string& path, int max_index,
                  const std::string& pairing, const std::string& format) {
  InterpConfig cfg;
  cfg.trunc = TruncationConfig{max_index};
  cfg.pairing = pairing_by_name(pairing);
  Term term = parse_term(load_text(path));
  Ty ty = typecheck(term);
  Denotation den = interpret(term, {}, cfg);
  std::vector<Point> pts = enumerate_points(den.hom);

  bool arrow = ty.kind == Ty::K::Arrow;
  std::optional<ArrowObject> abo;
  if (arrow)
    abo.emplace(arrow_object(type_denotation(ty.args[0], cfg.trunc),
                             type_denotation(ty.args[1], cfg.trunc),
                             cfg.trunc));
  if (format == "json") {
    nlohmann::json out = nlohmann::json::array();
    for (const Point& p : pts) {
      nlohmann::json ctx = nlohmann::json::array();
      for (auto [i, v] : p.context.entries)
        ctx.push_back({{"index", i},
                       {"value", den.hom.fsrc.base->obj_label(v)}});
      nlohmann::json entry{{"witness_id", p.support},
                           {"context", {{"entries", ctx}}}};
      if (arrow) {
        auto [fa_obj, b] = abo->arrow.prod.obj_pair(p.output);
        nlohmann::json args = nlohmann::json::array();
        for (auto [i, v] : abo->fa.obj_at(fa_obj).entries)
          args.push_back({{"index", i},
                          {"value", abo->fa.base->obj_label(v)}});
        entry["output"] = {{"arguments", args},
                           {"result", abo->arrow.prod.pr.dst()->obj_label(b)}};
      } else {
        entry["output"] = den.hom.dst().base()->obj_label(p.output);
      }
      out.push_back(std::move(entry));
    }
    std::cout << out.dump() << "\n";
  } else {
    for (const Point& p : pts) {
      if (arrow) {
        auto [fa_obj, b] = abo->arrow.prod.obj_pair(p.output);
        std::string line = "[";
        bool first = true;
        for (auto [i, v] : abo->fa.obj_at(fa_obj).entries) {
          if (!first) line += ", ";
          first = false;
          line += std::to_string(i) + "\xc2\xb7" + abo->fa.base->obj_label(v);
        }
        line += "] \xe2\x8a\xb8 " + abo->arrow.prod.pr.dst()->obj_label(b);
        std::cout << line << "\n";
      } else {
        std::cout << show_point(den.hom, p) << "\n";
      }
    }
    std::cout << pts.size() << " point" << (pts.size() == 1 ? "" : "s")
              << "\n";
  }
  return 0;
}

int cmd_bicat_verify(bool json) {
  ThinGroupoid tb = ThinGroupoid::ground(booleans());
  ThinHom id = identity_hom(tb);
  Gpd two = FiniteGroupoid::discrete_gpd(2);
  const Gpd& b = tb.base();
  Span diag(two, GFunctor(two, b, {0, 1}, {b->identity(0), b->identity(1)}),
            GFunctor(two, b, {0, 1}, {b->identity(0), b->identity(1)}));
  Span swap(two, GFunctor(two, b, {0, 1}, {b->identity(0), b->identity(1)}),
            GFunctor(two, b, {1, 0}, {b->identity(1), b->identity(0)}));
  ThinHom hd = make_thin_hom(tb, tb, diag);
  ThinHom hs = make_thin_hom(tb, tb, swap);
  std::vector<BicatInstance> instances{
      {tb, tb, tb, tb, tb, id, id, id, id},
      {tb, tb, tb, tb, tb, hd, hs, hd, id},
      {tb, tb, tb, tb, tb, hs, hs, hs, hs},
  };
  return report_outcome(verify_bicategory_laws(instances), json);
}

int cmd_bang_verify(int max_index, const std::string& pairing, bool json) {
  PairingFunction p = pairing_by_name(pairing);
  CertReport rep = verify_pseudomonad(FiniteGroupoid::terminal(),
                                      TruncationConfig{max_index}, p);
  SpanInstance inst{ThinGroupoid::ground(FiniteGroupoid::terminal()),
                    ThinGroupoid::ground(FiniteGroupoid::terminal()),
                    Span::identity_span(FiniteGroupoid::terminal())};
  CertReport rep2 =
      verify_pseudocomonad_instances({inst}, TruncationConfig{2}, p);
  for (const auto& c : rep2.checked) rep.checked.push_back(c);
  for (const auto& f : rep2.failures) rep.fail(f);
  return report_outcome(rep, json);
}

int cmd_cc_ev(int max_index, bool json) {
  Evaluation ev = evaluation(ThinGroupoid::ground(booleans()),
                             ThinGroupoid::ground(booleans()),
                             TruncationConfig{max_index});
  if (json) {
    nlohmann::json out{{"support_objects",
                        ev.hom.span().support->object_count()},
                       {"certificate_pass", ev.hom.hom.certificate.pass}};
    std::cout << out.dump() << "\n";
  } else {
    std::cout << "evaluation (Bool => Bool) & Bool -> Bool: "
              << ev.hom.span().support->object_count()
              << " support objects, certificate "
              << (ev.hom.hom.certificate.pass ? "pass" : "fail") << "\n";
  }
  return ev.hom.hom.certificate.pass ? 0 : 1;
}

int cmd_cc_curry(int max_index, bool json) {
  ThinGroupoid gb = ThinGroupoid::ground(booleans());
  ClosureContext cx = closure_context(terminal_object(), gb, gb,
                                      TruncationConfig{max_index});
  Projections prj = projections(cx.ga, cx.cfg);
  KleisliHom curried = curry(prj.pr, cx);
  KleisliHom back = uncurry(curried, cx);
  bool round = span_iso_search(back.span(), prj.pr.span()).has_value();
  if (json) {
    nlohmann::json out{{"curried_support",
                        curried.span().support->object_count()},
                       {"round_trip_iso", round}};
    std::cout << out.dump() << "\n";
  } else {
    std::cout << "curry(pr : T & Bool -> Bool): "
              << curried.span().support->object_count()
              << " support objects; uncurry round trip "
              << (round ? "isomorphic" : "NOT isomorphic") << "\n";
  }
  return round ? 0 : 1;
}

int cmd_cc_adjequiv(int max_index, bool json) {
  ThinGroupoid gb = ThinGroupoid::ground(booleans());
  ClosureContext cx = closure_context(terminal_object(), gb, gb,
                                      TruncationConfig{max_index});
  Projections prj = projections(cx.ga, cx.cfg);
  CertReport rep =
      verify_closure_adjequiv(cx, {curry(prj.pr, cx)}, {prj.pr});
  WithObject w = with_product(gb, gb);
  InterpConfig icfg;
  icfg.trunc = TruncationConfig{max_index};
  ProductInstance inst{interpret(parse_term("tt"), {}, icfg).hom,
                       interpret(parse_term("ff"), {}, icfg).hom};
  CertReport rep2 = verify_product_adjequiv(terminal_object(), w, {inst},
                                            TruncationConfig{max_index});
  for (const auto& c : rep2.checked) rep.checked.push_back(c);
  for (const auto& f : rep2.failures) rep.fail(f);
  return report_outcome(rep, json);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"thinspan: an executable model of thin spans of groupoids"};
  app.require_subcommand(1);

  // gpd validate
  auto* gpd_cmd = app.add_subcommand("gpd", "groupoid kernel operations");
  gpd_cmd->require_subcommand(1);
  std::string gpd_file;
  auto* gpd_validate = gpd_cmd->add_subcommand("validate", "validate a groupoid file");
  gpd_validate->add_option("file", gpd_file)->required();

  // span compose | bipullback | solve
  auto* span_cmd = app.add_subcommand("span", "span calculus");
  span_cmd->require_subcommand(1);
  std::string span_s, span_t, cospan_file;
  auto* span_compose = span_cmd->add_subcommand("compose", "compose two span files");
  span_compose->add_option("s", span_s)->required();
  span_compose->add_option("t", span_t)->required();
  auto* span_bipb = span_cmd->add_subcommand("bipullback", "decide bipullback for a cospan file");
  span_bipb->add_option("file", cospan_file)->required();
  auto* span_solve = span_cmd->add_subcommand("solve", "solve a reindexing problem");
  std::string solve_file;
  int solve_s = 0, solve_t = 0, solve_theta = 0;
  span_solve->add_option("file", solve_file)->required();
  span_solve->add_option("--s", solve_s)->required();
  span_solve->add_option("--t", solve_t)->required();
  span_solve->add_option("--theta", solve_theta)->required();

  auto* bicat_cmd = app.add_subcommand("bicat", "bicategory checks");
  bicat_cmd->require_subcommand(1);
  auto* bicat_verify = bicat_cmd->add_subcommand("verify", "verify the bicategory laws on a curated set");

  auto* bang_cmd = app.add_subcommand("bang", "pseudocomonad checks");
  bang_cmd->require_subcommand(1);
  auto* bang_verify = bang_cmd->add_subcommand("verify", "verify pseudomonad coherence and instances");

  auto* cc_cmd = app.add_subcommand("cc", "cartesian-closed structure");
  cc_cmd->require_subcommand(1);
  auto* cc_ev = cc_cmd->add_subcommand("ev", "build and certify evaluation");
  auto* cc_curry = cc_cmd->add_subcommand("curry", "curry a projection and round-trip it");
  auto* cc_adj = cc_cmd->add_subcommand("verify-adjequiv", "verify the closure and product adjoint equivalences");

  std::string interp_file, pairing = "cantor", format = "table";
  auto* interp = app.add_subcommand("interpret", "interpret a λ-term file");
  interp->add_option("file", interp_file)->required();

  auto* suite_cmd = app.add_subcommand("suite", "randomized suites");
  suite_cmd->require_subcommand(1);
  auto* suite_run = suite_cmd->add_subcommand("run", "run a named suite");
  std::string suite_name;
  suite_run->add_option("name", suite_name)->required();

  int max_index = 4;
  std::uint64_t seed = 1;
  int count = 100;
  bool json = false;
  for (CLI::App* c : {gpd_validate, span_compose, span_bipb, span_solve,
                      bicat_verify, bang_verify, cc_ev, cc_curry, cc_adj,
                      interp, suite_run}) {
    c->add_option("--max-index", max_index, "truncation bound N");
    c->add_option("--pairing", pairing, "cantor | shift");
    c->add_option("--seed", seed, "generator seed");
    c->add_option("--count", count, "instance count");
    c->add_flag("--json", json, "machine-readable output");
  }
  interp->add_option("--format", format, "json | table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*gpd_validate) {
      Gpd g = groupoid_from_json(load_json(gpd_file));
      if (json)
        std::cout << nlohmann::json{{"valid", true},
                                    {"objects", g->object_count()},
                                    {"morphisms", g->morphism_count()}}
                         .dump()
                  << "\n";
      else
        std::cout << "valid groupoid: " << g->object_count() << " objects, "
                  << g->morphism_count() << " morphisms\n";
      return 0;
    }
    if (*span_compose) {
      ComposedSpan c = compose_spans(span_from_json(load_json(span_s)),
                                     span_from_json(load_json(span_t)));
      std::cout << span_to_json(c.span).dump() << "\n";
      return 0;
    }
    if (*span_bipb) {
      nlohmann::json j = load_json(cospan_file);
      Cospan c(functor_from_json(j.at("f")), functor_from_json(j.at("g")));
      bool ok = is_bipullback(c);
      if (json)
        std::cout << nlohmann::json{{"bipullback", ok}}.dump() << "\n";
      else
        std::cout << (ok ? "bipullback" : "not a bipullback") << "\n";
      return ok ? 0 : 1;
    }
    if (*span_solve) {
      nlohmann::json j = load_json(solve_file);
      Cospan c(functor_from_json(j.at("f")), functor_from_json(j.at("g")));
      auto sols = solve_reindexing(c, {solve_s, solve_t, solve_theta});
      nlohmann::json out = nlohmann::json::array();
      for (const auto& sol : sols)
        out.push_back({{"phi", sol.phi}, {"psi", sol.psi}});
      std::cout << out.dump() << "\n";
      return 0;
    }
    if (*bicat_verify) return cmd_bicat_verify(json);
    if (*bang_verify) return cmd_bang_verify(max_index, pairing, json);
    if (*cc_ev) return cmd_cc_ev(max_index, json);
    if (*cc_curry) return cmd_cc_curry(max_index, json);
    if (*cc_adj) return cmd_cc_adjequiv(max_index, json);
    if (*interp) {
      if (format != "json" && format != "table")
        throw InputError("unknown format '" + format + "' (json | table)");
      return cmd_interpret(interp_file, max_index, pairing, format);
    }
    if (*suite_run) {
      auto names = suite_names();
      if (std::find(names.begin(), names.end(), suite_name) == names.end())
        throw InputError("unknown suite '" + suite_name + "'");
      GenConfig cfg;
      cfg.seed = seed;
      cfg.instance_count = count;
      SuiteResult r = run_suite(suite_name, cfg);
      if (json)
        std::cout << suite_result_to_json(r).dump() << "\n";
      else
        std::cout << r.name << ": " << (r.pass ? "pass" : "fail") << " ("
                  << r.instances << " instances, " << r.checked
                  << " checked, " << r.failed << " failed)\n";
      return r.pass ? 0 : 1;
    }
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const TypeError& e) {
    std::cerr << "type error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const GroupoidError& e) {
    std::cerr << "check failure: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
