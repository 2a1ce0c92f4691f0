#include "thinspan/stlc.hpp"

#include <algorithm>
#include <cctype>

namespace thinspan {

// ---------------------------------------------------------------------------
// Types

std::string Ty::show() const {
  switch (kind) {
    case K::Bool: return "Bool";
    case K::Unit: return "Unit";
    case K::Arrow: {
      std::string a = args[0].show();
      if (args[0].kind == K::Arrow) a = "(" + a + ")";
      return a + " -> " + args[1].show();
    }
    case K::Prod: {
      auto paren = [](const Ty& t) {
        std::string s = t.show();
        return t.kind == K::Arrow || t.kind == K::Prod ? "(" + s + ")" : s;
      };
      return paren(args[0]) + " * " + paren(args[1]);
    }
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Parser

namespace {

struct Lexer {
  const std::string& text;
  size_t pos = 0;

  void skip() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  }
  bool starts(const std::string& s) const {
    return text.compare(pos, s.size(), s) == 0;
  }
  // next token as (kind, spelling); kinds: id, sym, end
  std::pair<std::string, std::string> peek() {
    skip();
    if (pos >= text.size()) return {"end", ""};
    char c = text[pos];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t e = pos;
      while (e < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[e])) || text[e] == '_'))
        ++e;
      return {"id", text.substr(pos, e - pos)};
    }
    if (starts("->")) return {"sym", "->"};
    if (starts("\xce\xbb")) return {"sym", "fun"};  // λ
    if (c == '\\') return {"sym", "fun"};
    return {"sym", std::string(1, c)};
  }
  std::string next() {
    auto [k, s] = peek();
    if (k == "id")
      pos += s.size();
    else if (s == "->")
      pos += 2;
    else if (s == "fun" && starts("\xce\xbb"))
      pos += 2;
    else if (s == "fun" && text[pos] == '\\')
      pos += 1;
    else
      pos += s.size();
    return s;
  }
  void expect(const std::string& s) {
    auto [k, got] = peek();
    if (got != s)
      throw ParseError("expected '" + s + "', found '" +
                           (got.empty() ? "end of input" : got) + "'",
                       static_cast<int>(pos));
    next();
  }
  bool eat(const std::string& s) {
    auto [k, got] = peek();
    if (got != s) return false;
    next();
    return true;
  }
};

bool is_keyword(const std::string& s) {
  static const char* kw[] = {"fun",  "if",   "then", "else",   "tt",  "ff",
                             "unit", "choice", "fst", "snd",  "Bool", "Unit"};
  for (const char* k : kw)
    if (s == k) return true;
  return false;
}

Ty parse_type(Lexer& lx);

Ty parse_type_atom(Lexer& lx) {
  auto [k, s] = lx.peek();
  if (s == "Bool") {
    lx.next();
    return Ty::boolean();
  }
  if (s == "Unit") {
    lx.next();
    return Ty::unit();
  }
  if (s == "(") {
    lx.next();
    Ty t = parse_type(lx);
    lx.expect(")");
    return t;
  }
  throw ParseError("expected a type, found '" + s + "'",
                   static_cast<int>(lx.pos));
}

Ty parse_type_prod(Lexer& lx) {
  Ty t = parse_type_atom(lx);
  while (lx.eat("*")) t = Ty::prod(std::move(t), parse_type_atom(lx));
  return t;
}

Ty parse_type(Lexer& lx) {
  Ty t = parse_type_prod(lx);
  if (lx.eat("->")) return Ty::arrow(std::move(t), parse_type(lx));
  return t;
}

Term parse_expr(Lexer& lx);

Term parse_atom(Lexer& lx) {
  auto [k, s] = lx.peek();
  if (s == "tt" || s == "ff" || s == "unit" || s == "choice") {
    lx.next();
    Term t;
    t.kind = s == "tt"     ? Term::K::Tt
             : s == "ff"   ? Term::K::Ff
             : s == "unit" ? Term::K::UnitVal
                           : Term::K::Choice;
    return t;
  }
  if (s == "fst" || s == "snd") {
    lx.next();
    Term t;
    t.kind = s == "fst" ? Term::K::Fst : Term::K::Snd;
    t.kids.push_back(parse_atom(lx));
    return t;
  }
  if (k == "id" && !is_keyword(s)) {
    lx.next();
    Term t;
    t.kind = Term::K::Var;
    t.var = s;
    return t;
  }
  if (s == "(") {
    lx.next();
    Term t = parse_expr(lx);
    if (lx.eat(",")) {
      Term p;
      p.kind = Term::K::Pair;
      p.kids.push_back(std::move(t));
      p.kids.push_back(parse_expr(lx));
      lx.expect(")");
      return p;
    }
    lx.expect(")");
    return t;
  }
  throw ParseError("expected a term, found '" +
                       (s.empty() ? "end of input" : s) + "'",
                   static_cast<int>(lx.pos));
}

Term parse_expr(Lexer& lx) {
  auto [k, s] = lx.peek();
  if (s == "fun") {
    lx.next();
    auto [vk, name] = lx.peek();
    if (vk != "id" || is_keyword(name))
      throw ParseError("expected a variable name after 'fun'",
                       static_cast<int>(lx.pos));
    lx.next();
    lx.expect(":");
    Ty ann = parse_type(lx);
    lx.expect(".");
    Term t;
    t.kind = Term::K::Lam;
    t.var = name;
    t.ann = std::move(ann);
    t.kids.push_back(parse_expr(lx));
    return t;
  }
  if (s == "if") {
    lx.next();
    Term t;
    t.kind = Term::K::If;
    t.kids.push_back(parse_expr(lx));
    lx.expect("then");
    t.kids.push_back(parse_expr(lx));
    lx.expect("else");
    t.kids.push_back(parse_expr(lx));
    return t;
  }
  Term t = parse_atom(lx);
  while (true) {
    auto [ak, as] = lx.peek();
    bool arg = (ak == "id" && !is_keyword(as)) || as == "(" || as == "tt" ||
               as == "ff" || as == "unit" || as == "choice" || as == "fst" ||
               as == "snd";
    if (!arg) break;
    Term app;
    app.kind = Term::K::App;
    app.kids.push_back(std::move(t));
    app.kids.push_back(parse_atom(lx));
    t = std::move(app);
  }
  return t;
}

}  // namespace

Term parse_term(const std::string& text) {
  Lexer lx{text};
  Term t = parse_expr(lx);
  auto [k, s] = lx.peek();
  if (k != "end")
    throw ParseError("trailing input '" + s + "'", static_cast<int>(lx.pos));
  return t;
}

// ---------------------------------------------------------------------------
// Type checking

Ty typecheck(const Term& t, const TyContext& ctx) {
  switch (t.kind) {
    case Term::K::Var:
      for (auto it = ctx.rbegin(); it != ctx.rend(); ++it)
        if (it->first == t.var) return it->second;
      throw TypeError("unbound variable '" + t.var + "'");
    case Term::K::Tt:
    case Term::K::Ff:
    case Term::K::Choice:
      return Ty::boolean();
    case Term::K::UnitVal:
      return Ty::unit();
    case Term::K::Lam: {
      TyContext ext = ctx;
      ext.push_back({t.var, t.ann});
      return Ty::arrow(t.ann, typecheck(t.kids[0], ext));
    }
    case Term::K::App: {
      Ty f = typecheck(t.kids[0], ctx);
      Ty a = typecheck(t.kids[1], ctx);
      if (f.kind != Ty::K::Arrow)
        throw TypeError("expected a function, found " + f.show());
      if (f.args[0] != a)
        throw TypeError("argument type mismatch: expected " + f.args[0].show() +
                        ", found " + a.show());
      return f.args[1];
    }
    case Term::K::If: {
      Ty c = typecheck(t.kids[0], ctx);
      if (c.kind != Ty::K::Bool)
        throw TypeError("if-condition must be Bool, found " + c.show());
      Ty a = typecheck(t.kids[1], ctx);
      Ty b = typecheck(t.kids[2], ctx);
      if (a != b)
        throw TypeError("if-branches disagree: " + a.show() + " vs " +
                        b.show());
      return a;
    }
    case Term::K::Pair:
      return Ty::prod(typecheck(t.kids[0], ctx), typecheck(t.kids[1], ctx));
    case Term::K::Fst:
    case Term::K::Snd: {
      Ty p = typecheck(t.kids[0], ctx);
      if (p.kind != Ty::K::Prod)
        throw TypeError("expected a pair, found " + p.show());
      return p.args[t.kind == Term::K::Fst ? 0 : 1];
    }
  }
  throw TypeError("malformed term");
}

// ---------------------------------------------------------------------------
// Denotations

ThinGroupoid type_denotation(const Ty& t, const TruncationConfig& cfg) {
  switch (t.kind) {
    case Ty::K::Bool:
      return ThinGroupoid::ground(FiniteGroupoid::discrete_gpd(2, {"tt", "ff"}));
    case Ty::K::Unit:
      return ThinGroupoid::ground(FiniteGroupoid::terminal());
    case Ty::K::Prod:
      return with_product(type_denotation(t.args[0], cfg),
                          type_denotation(t.args[1], cfg))
          .combined;
    case Ty::K::Arrow:
      return arrow_object(type_denotation(t.args[0], cfg),
                          type_denotation(t.args[1], cfg), cfg)
          .arrow.gpd;
  }
  throw TypeError("malformed type");
}

SemCtx sem_context(const TyContext& ctx, const TruncationConfig& cfg) {
  SemCtx sc{ctx, terminal_object(), {}};
  for (const auto& [name, ty] : ctx) {
    WithObject w = with_product(sc.gpd, type_denotation(ty, cfg));
    sc.gpd = w.combined;
    sc.steps.push_back(std::move(w));
  }
  return sc;
}

namespace {

KleisliHom const_hom(const SemCtx& sc, const ThinGroupoid& den, Obj pt,
                     const InterpConfig& cfg) {
  FamGpd fg = fam(sc.gpd.base(), cfg.trunc);
  Gpd sup = FiniteGroupoid::terminal();
  Span s(sup, GFunctor::constant(sup, fg.gpd, fg.obj_of(FamObject{})),
         GFunctor::constant(sup, den.base(), pt));
  return make_kleisli_hom(sc.gpd, den, std::move(s), std::move(fg), cfg.trunc);
}

KleisliHom choice_hom(const SemCtx& sc, const ThinGroupoid& den,
                      const InterpConfig& cfg) {
  FamGpd fg = fam(sc.gpd.base(), cfg.trunc);
  Gpd sup = FiniteGroupoid::discrete_gpd(2, {"tt", "ff"});
  Obj empty = fg.obj_of(FamObject{});
  GFunctor left(sup, fg.gpd, {empty, empty},
                {fg.gpd->identity(empty), fg.gpd->identity(empty)});
  GFunctor right(sup, den.base(), {0, 1},
                 {den.base()->identity(0), den.base()->identity(1)});
  Span s(sup, std::move(left), std::move(right));
  return make_kleisli_hom(sc.gpd, den, std::move(s), std::move(fg), cfg.trunc);
}

// The conditional primitive 𝔹 & (A & A) → A: support A + A (then-copies with
// condition tt, else-copies with ff), displayed to [0·condition, 1·branch].
KleisliHom cond_hom(const ThinGroupoid& den, const WithObject& waa,
                    const WithObject& wc, const InterpConfig& cfg) {
  FamGpd fg = fam(wc.coprod.gpd, cfg.trunc);
  CoproductGpd sup = coproduct(den.base(), den.base());
  const Gpd& base = wc.coprod.gpd;
  std::vector<Obj> lom(sup.gpd->object_count()), rom(sup.gpd->object_count());
  for (Obj x = 0; x < sup.gpd->object_count(); ++x) {
    auto [br, v] = sup.obj_case(x);
    Obj cv = wc.coprod.inl.on_obj(br == 0 ? 0 : 1);
    Obj bv = wc.coprod.inr.on_obj(br ? waa.coprod.inr.on_obj(v)
                                     : waa.coprod.inl.on_obj(v));
    lom[x] = fg.obj_of(fam_obj({{0, cv}, {1, bv}}));
    if (lom[x] < 0) throw GroupoidError("cond: displayed family missing");
    rom[x] = v;
  }
  std::vector<Mor> lmm(sup.gpd->morphism_count()), rmm(sup.gpd->morphism_count());
  for (Mor m = 0; m < sup.gpd->morphism_count(); ++m) {
    auto [br, am] = sup.mor_case(m);
    Obj xs = sup.gpd->src(m), xd = sup.gpd->dst(m);
    Obj cv = wc.coprod.inl.on_obj(br == 0 ? 0 : 1);
    Mor cm = base->identity(cv);
    Mor bm = wc.coprod.inr.on_mor(br ? waa.coprod.inr.on_mor(am)
                                     : waa.coprod.inl.on_mor(am));
    lmm[m] = fg.mor_of(lom[xs], lom[xd], {0, 1}, {cm, bm});
    if (lmm[m] < 0) throw GroupoidError("cond: displayed morphism missing");
    rmm[m] = am;
  }
  Span s(sup.gpd, GFunctor(sup.gpd, fg.gpd, std::move(lom), std::move(lmm)),
         GFunctor(sup.gpd, den.base(), std::move(rom), std::move(rmm)));
  return make_kleisli_hom(wc.combined, den, std::move(s), std::move(fg),
                          cfg.trunc);
}

KleisliHom var_hom(const SemCtx& sc, size_t k, const InterpConfig& cfg) {
  const size_t m = sc.vars.size();
  const WithObject& w = sc.steps[m - 1];
  Projections prj = projections(w, cfg.trunc);
  if (k == m - 1) return prj.pr;
  SemCtx prefix{TyContext(sc.vars.begin(), sc.vars.end() - 1),
                m >= 2 ? sc.steps[m - 2].combined : terminal_object(),
                std::vector<WithObject>(sc.steps.begin(), sc.steps.end() - 1)};
  return kleisli_compose(prj.pl, var_hom(prefix, k, cfg), cfg.pairing);
}

}  // namespace

Denotation interpret(const Term& t, const TyContext& ctx,
                     const InterpConfig& cfg) {
  Ty ty = typecheck(t, ctx);
  SemCtx sc = sem_context(ctx, cfg.trunc);
  switch (t.kind) {
    case Term::K::Var: {
      size_t k = ctx.size();
      for (size_t i = ctx.size(); i-- > 0;)
        if (ctx[i].first == t.var) {
          k = i;
          break;
        }
      return {ty, var_hom(sc, k, cfg)};
    }
    case Term::K::Tt:
      return {ty, const_hom(sc, type_denotation(ty, cfg.trunc), 0, cfg)};
    case Term::K::Ff:
      return {ty, const_hom(sc, type_denotation(ty, cfg.trunc), 1, cfg)};
    case Term::K::UnitVal:
      return {ty, const_hom(sc, type_denotation(ty, cfg.trunc), 0, cfg)};
    case Term::K::Choice:
      return {ty, choice_hom(sc, type_denotation(ty, cfg.trunc), cfg)};
    case Term::K::If: {
      Denotation c = interpret(t.kids[0], ctx, cfg);
      Denotation a = interpret(t.kids[1], ctx, cfg);
      Denotation b = interpret(t.kids[2], ctx, cfg);
      ThinGroupoid den = type_denotation(ty, cfg.trunc);
      WithObject waa = with_product(den, den);
      WithObject wc =
          with_product(type_denotation(Ty::boolean(), cfg.trunc), waa.combined);
      KleisliHom inner = pairing(a.hom, b.hom, waa);
      KleisliHom outer = pairing(c.hom, inner, wc);
      KleisliHom cond = cond_hom(den, waa, wc, cfg);
      return {ty, kleisli_compose(outer, cond, cfg.pairing)};
    }
    case Term::K::Pair: {
      Denotation a = interpret(t.kids[0], ctx, cfg);
      Denotation b = interpret(t.kids[1], ctx, cfg);
      WithObject w = with_product(type_denotation(ty.args[0], cfg.trunc),
                                  type_denotation(ty.args[1], cfg.trunc));
      return {ty, pairing(a.hom, b.hom, w)};
    }
    case Term::K::Fst:
    case Term::K::Snd: {
      Denotation p = interpret(t.kids[0], ctx, cfg);
      WithObject w = with_product(type_denotation(p.ty.args[0], cfg.trunc),
                                  type_denotation(p.ty.args[1], cfg.trunc));
      Projections prj = projections(w, cfg.trunc);
      return {ty, kleisli_compose(
                      p.hom, t.kind == Term::K::Fst ? prj.pl : prj.pr,
                      cfg.pairing)};
    }
    case Term::K::Lam: {
      if (!ctx.empty())
        throw GroupoidError(
            "interpret: λ-abstraction under a non-empty context exceeds the "
            "fragment budget; lift the definition to top level");
      ThinGroupoid denA = type_denotation(t.ann, cfg.trunc);
      ThinGroupoid denB = type_denotation(ty.args[1], cfg.trunc);
      ClosureContext cx =
          closure_context(terminal_object(), denA, denB, cfg.trunc, cfg.il);
      Denotation body = interpret(t.kids[0], {{t.var, t.ann}}, cfg);
      return {ty, curry(body.hom, cx)};
    }
    case Term::K::App: {
      Denotation f = interpret(t.kids[0], ctx, cfg);
      Denotation a = interpret(t.kids[1], ctx, cfg);
      Evaluation ev = evaluation(type_denotation(f.ty.args[0], cfg.trunc),
                                 type_denotation(f.ty.args[1], cfg.trunc),
                                 cfg.trunc, cfg.il);
      KleisliHom paired = pairing(f.hom, a.hom, ev.withab);
      return {ty, kleisli_compose(paired, ev.hom, cfg.pairing)};
    }
  }
  throw TypeError("malformed term");
}

// ---------------------------------------------------------------------------
// Witness points

std::vector<Point> enumerate_points(const KleisliHom& h) {
  std::vector<Point> out;
  const Span& s = h.span();
  for (Obj u = 0; u < s.support->object_count(); ++u)
    out.push_back(
        {u, h.fsrc.obj_at(s.left.on_obj(u)), s.right.on_obj(u)});
  return out;
}

std::vector<FamObject> split_context(const SemCtx& sc, const FamObject& x) {
  std::vector<FamObject> out(sc.vars.size());
  for (const auto& [i, v0] : x.entries) {
    Obj v = v0;
    size_t j = sc.vars.size();
    while (j-- > 0) {
      auto [tag, inner] = sc.steps[j].coprod.obj_case(v);
      if (tag == 1) {
        out[j].entries.push_back({i, inner});
        break;
      }
      v = inner;
    }
  }
  return out;
}

std::string show_point(const KleisliHom& h, const Point& p) {
  std::string s = "[";
  const Gpd& base = h.fsrc.base;
  for (size_t k = 0; k < p.context.entries.size(); ++k) {
    if (k) s += ", ";
    s += std::to_string(p.context.entries[k].first) + "\xc2\xb7" +
         base->obj_label(p.context.entries[k].second);
  }
  s += "] \xe2\x8a\xb8 " + h.dst().base()->obj_label(p.output);
  return s;
}

}  // namespace thinspan
