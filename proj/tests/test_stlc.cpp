#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>

#include "thinspan/stlc.hpp"

using namespace thinspan;

namespace {

// Decode a closed Bool -> Bool point: the output lives in the arrow base
// !B x B; return the argument family entries and the result value.
using ArrowPoint = std::pair<std::vector<std::pair<int, Obj>>, Obj>;

ArrowPoint decode_arrow_point(const ArrowObject& ab, Obj out) {
  auto [fa_obj, b] = ab.arrow.prod.obj_pair(out);
  return {ab.fa.obj_at(fa_obj).entries, b};
}

std::set<ArrowPoint> arrow_points(const KleisliHom& h, const ArrowObject& ab) {
  std::set<ArrowPoint> out;
  for (const Point& p : enumerate_points(h)) {
    REQUIRE(p.context.entries.empty());
    out.insert(decode_arrow_point(ab, p.output));
  }
  return out;
}

}  // namespace

TEST_CASE("parsing and type checking") {
  Term t = parse_term("fun x : Bool . if x then x else (if x then ff else tt)");
  CHECK(t.kind == Term::K::Lam);
  CHECK(typecheck(t) == Ty::arrow(Ty::boolean(), Ty::boolean()));

  CHECK(typecheck(parse_term("tt")) == Ty::boolean());
  CHECK(typecheck(parse_term("unit")) == Ty::unit());
  CHECK(typecheck(parse_term("fst (tt, ff)")) == Ty::boolean());
  CHECK(typecheck(parse_term("(snd (tt, ff), fst (tt, ff))")) ==
        Ty::prod(Ty::boolean(), Ty::boolean()));
  CHECK(typecheck(parse_term("(fun x : Bool . x) tt")) == Ty::boolean());
  CHECK(typecheck(parse_term("fun f : Bool -> Bool . f")) ==
        Ty::arrow(Ty::arrow(Ty::boolean(), Ty::boolean()),
                  Ty::arrow(Ty::boolean(), Ty::boolean())));

  CHECK_THROWS_AS((void)typecheck(parse_term("fun x : Bool . x x")),
                  TypeError);
  CHECK_THROWS_AS((void)typecheck(parse_term("if tt then tt else unit")),
                  TypeError);
  CHECK_THROWS_AS((void)typecheck(parse_term("y")), TypeError);
  CHECK_THROWS_AS((void)parse_term("if tt then"), ParseError);
  CHECK_THROWS_AS((void)parse_term("fun x Bool . x"), ParseError);
  CHECK_THROWS_AS((void)parse_term("tt )"), ParseError);

  // λ and backslash spellings parse to the same tree shape.
  CHECK(parse_term("\\x : Bool . x").kind == Term::K::Lam);
  CHECK(parse_term("\xce\xbbx : Bool . x").kind == Term::K::Lam);
}

TEST_CASE("constants and choice") {
  InterpConfig cfg;
  Denotation tt = interpret(parse_term("tt"), {}, cfg);
  auto pts = enumerate_points(tt.hom);
  REQUIRE(pts.size() == 1);
  CHECK(pts[0].context.entries.empty());
  CHECK(pts[0].output == 0);
  CHECK(show_point(tt.hom, pts[0]) == "[] \xe2\x8a\xb8 tt");

  Denotation u = interpret(parse_term("unit"), {}, cfg);
  CHECK(enumerate_points(u.hom).size() == 1);

  Denotation ch = interpret(parse_term("choice"), {}, cfg);
  auto cpts = enumerate_points(ch.hom);
  REQUIRE(cpts.size() == 2);
  std::set<Obj> outs{cpts[0].output, cpts[1].output};
  CHECK(outs == std::set<Obj>{0, 1});
  CHECK(cpts[0].context.entries.empty());
  CHECK(cpts[1].context.entries.empty());
}

TEST_CASE("conditional over choice") {
  InterpConfig cfg;
  cfg.trunc = TruncationConfig{2};
  Denotation d = interpret(parse_term("if choice then tt else tt"), {}, cfg);
  auto pts = enumerate_points(d.hom);
  REQUIRE(pts.size() == 2);
  for (const Point& p : pts) {
    CHECK(p.context.entries.empty());
    CHECK(p.output == 0);  // tt
  }
}

TEST_CASE("variables and projections under a context") {
  InterpConfig cfg;
  cfg.trunc = TruncationConfig{2};
  TyContext ctx{{"x", Ty::boolean()}, {"y", Ty::boolean()}};
  SemCtx sc = sem_context(ctx, cfg.trunc);
  Denotation dy = interpret(parse_term("y"), ctx, cfg);
  Denotation dx = interpret(parse_term("x"), ctx, cfg);

  // Every point of a variable denotation reads back the variable's value:
  // the split context family has one entry for that variable, none elsewhere.
  for (const Point& p : enumerate_points(dy.hom)) {
    auto parts = split_context(sc, p.context);
    REQUIRE(parts.size() == 2);
    if (parts[1].entries.size() == 1 && parts[0].entries.empty())
      CHECK(parts[1].entries[0].second == p.output);
  }
  bool seen_singleton = false;
  for (const Point& p : enumerate_points(dx.hom)) {
    auto parts = split_context(sc, p.context);
    if (parts[0].entries.size() == 1 && parts[1].entries.empty()) {
      CHECK(parts[0].entries[0].second == p.output);
      seen_singleton = true;
    }
  }
  CHECK(seen_singleton);
}

TEST_CASE("the boolean twist: four witness points") {
  InterpConfig cfg;
  cfg.trunc = TruncationConfig{2};
  Denotation d = interpret(parse_term(
      "fun x : Bool . if x then x else (if x then ff else tt)"), {}, cfg);
  CHECK(d.ty == Ty::arrow(Ty::boolean(), Ty::boolean()));

  ArrowObject ab = arrow_object(type_denotation(Ty::boolean(), cfg.trunc),
                                type_denotation(Ty::boolean(), cfg.trunc),
                                cfg.trunc);
  auto pts = arrow_points(d.hom, ab);
  // tt = 0, ff = 1.  Two calls to the argument in every run: the then-branch
  // re-reads x, and the else-branch's inner conditional re-reads it too.
  std::set<ArrowPoint> want{
      {{{0, 0}, {1, 0}}, 0},  // [0·tt, 1·tt] ⊸ tt
      {{{0, 1}, {1, 1}}, 0},  // [0·ff, 1·ff] ⊸ tt
      {{{0, 0}, {1, 1}}, 1},  // [0·tt, 1·ff] ⊸ ff
      {{{0, 1}, {1, 0}}, 1},  // [0·ff, 1·tt] ⊸ ff
  };
  CHECK(pts == want);

  // Identities-only support.
  const Span& s = d.hom.span();
  CHECK(s.support->morphism_count() == s.support->object_count());
}

TEST_CASE("beta-invariance up to span isomorphism") {
  InterpConfig cfg;
  cfg.trunc = TruncationConfig{2};
  Denotation lhs = interpret(parse_term("(fun x : Bool . x) tt"), {}, cfg);
  Denotation rhs = interpret(parse_term("tt"), {}, cfg);
  auto iso = span_iso_search(lhs.hom.span(), rhs.hom.span());
  CHECK(iso.has_value());
}

TEST_CASE("pairing and interleaving independence") {
  InterpConfig a;
  a.trunc = TruncationConfig{2};
  InterpConfig b;
  b.trunc = TruncationConfig{2};
  b.pairing = shift_pairing();
  b.il = odd_even_interleaving();
  Term t = parse_term("if choice then tt else (fun x : Bool . x) ff");
  Denotation da = interpret(t, {}, a);
  Denotation db = interpret(t, {}, b);
  CHECK(span_iso_search(da.hom.span(), db.hom.span()).has_value());
}

TEST_CASE("truncation monotonicity of witness points") {
  Term t = parse_term("fun x : Bool . if x then x else (if x then ff else tt)");
  InterpConfig c2, c3;
  c2.trunc = TruncationConfig{2};
  c3.trunc = TruncationConfig{3};
  ArrowObject ab2 = arrow_object(type_denotation(Ty::boolean(), c2.trunc),
                                 type_denotation(Ty::boolean(), c2.trunc),
                                 c2.trunc);
  ArrowObject ab3 = arrow_object(type_denotation(Ty::boolean(), c3.trunc),
                                 type_denotation(Ty::boolean(), c3.trunc),
                                 c3.trunc);
  auto p2 = arrow_points(interpret(t, {}, c2).hom, ab2);
  auto p3 = arrow_points(interpret(t, {}, c3).hom, ab3);
  CHECK(std::includes(p3.begin(), p3.end(), p2.begin(), p2.end()));
}
