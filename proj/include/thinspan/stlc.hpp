#pragma once
// Simply-typed λ-calculus front end: parser, type checker, and elaborator
// into certified Kleisli homs, plus witness-point enumeration.
//
// Surface syntax:
//   types  T ::= Bool | Unit | T -> T | T * T | (T)
//   terms  M ::= x | fun x : T . M | M M | tt | ff | unit | choice
//              | if M then M else M | (M, M) | fst M | snd M | (M)
//
// Contexts denote right-growing with-products: ⟦·⟧ = ⊤ and
// ⟦Γ, x:A⟧ = ⟦Γ⟧ & ⟦A⟧, so the innermost binder is the right component.
// λ-abstraction is interpreted by currying and is only available for closed
// abstractions (context ⊤): the Seely product tables over a non-trivial Γ
// exceed the desk-scale fragment budget.

#include <string>
#include <vector>

#include "thinspan/cc.hpp"

namespace thinspan {

// ---------------------------------------------------------------------------
// Syntax

struct Ty {
  enum class K { Bool, Unit, Arrow, Prod };
  K kind = K::Bool;
  std::vector<Ty> args;  // two entries for Arrow / Prod

  static Ty boolean() { return {K::Bool, {}}; }
  static Ty unit() { return {K::Unit, {}}; }
  static Ty arrow(Ty a, Ty b) { return {K::Arrow, {std::move(a), std::move(b)}}; }
  static Ty prod(Ty a, Ty b) { return {K::Prod, {std::move(a), std::move(b)}}; }

  friend bool operator==(const Ty& a, const Ty& b) {
    return a.kind == b.kind && a.args == b.args;
  }
  friend bool operator!=(const Ty& a, const Ty& b) { return !(a == b); }
  std::string show() const;
};

struct Term {
  enum class K {
    Var, Lam, App, Tt, Ff, UnitVal, Choice, If, Pair, Fst, Snd
  };
  K kind = K::Tt;
  std::string var;          // Var, Lam
  Ty ann;                   // Lam annotation
  std::vector<Term> kids;
};

struct ParseError : GroupoidError {
  int pos;
  ParseError(const std::string& what, int p)
      : GroupoidError(what + " (at offset " + std::to_string(p) + ")"),
        pos(p) {}
};
struct TypeError : GroupoidError {
  using GroupoidError::GroupoidError;
};

Term parse_term(const std::string& text);

using TyContext = std::vector<std::pair<std::string, Ty>>;
Ty typecheck(const Term& t, const TyContext& ctx = {});

// ---------------------------------------------------------------------------
// Denotations

struct InterpConfig {
  TruncationConfig trunc{4};
  PairingFunction pairing = cantor_pairing();
  InterleavingBijection il = even_odd_interleaving();
};

// ⟦Bool⟧ = discrete {tt, ff}; ⟦Unit⟧ = one object; ⟦A→B⟧ = !⟦A⟧ ⅋ ⟦B⟧;
// ⟦A*B⟧ = ⟦A⟧ & ⟦B⟧.  Deterministic, so separately computed denotations of
// the same type agree structurally.
ThinGroupoid type_denotation(const Ty& t, const TruncationConfig& cfg);

// The semantic context: the chain of with-products building ⟦Γ⟧.
struct SemCtx {
  TyContext vars;
  ThinGroupoid gpd;               // ⟦Γ⟧ (⊤ when empty)
  std::vector<WithObject> steps;  // steps[k]: ⟦x_0..x_k⟧ = prefix & ⟦x_k⟧
};
SemCtx sem_context(const TyContext& ctx, const TruncationConfig& cfg);

struct Denotation {
  Ty ty;
  KleisliHom hom;  // ⟦Γ⟧ → ⟦ty⟧
};
Denotation interpret(const Term& t, const TyContext& ctx,
                     const InterpConfig& cfg);

// ---------------------------------------------------------------------------
// Witness points

// One point per support object: the displayed context family and output.
struct Point {
  Obj support = -1;
  FamObject context;  // family over the context base
  Obj output = -1;
};
std::vector<Point> enumerate_points(const KleisliHom& h);

// Split a context family into per-variable families (outermost first),
// following the with-product chain; entries keep their copy indices.
std::vector<FamObject> split_context(const SemCtx& sc, const FamObject& x);

// Render a point in bracket notation: "[0·tt, 1·ff] ⊸ tt".
std::string show_point(const KleisliHom& h, const Point& p);

}  // namespace thinspan
