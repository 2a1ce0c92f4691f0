#pragma once
// Prestrategies and spans over finite groupoids; pullback composition; the
// bipullback decision procedure (pointwise reindexing criterion) and an
// independent pseudocone-factorization oracle; weak/strong span morphisms.

#include <optional>

#include <json.hpp>

#include "thinspan/gpd.hpp"

namespace thinspan {

// A support groupoid displayed into a base: (S, ∂).
struct Prestrategy {
  Gpd support;
  GFunctor display;  // support → base

  Prestrategy() = default;
  Prestrategy(Gpd s, GFunctor d) : support(std::move(s)), display(std::move(d)) {
    if (!same_gpd(support, display.src()))
      throw GroupoidError("prestrategy display must start at the support");
  }
  const Gpd& base() const { return display.dst(); }
};

// A span A ← S → B, stored in two-legged form.  The equivalent prestrategy on
// product(A, B) is derived on demand (to_product_prestrategy).
struct Span {
  Gpd support;
  GFunctor left;   // support → A
  GFunctor right;  // support → B

  Span() = default;
  Span(Gpd s, GFunctor l, GFunctor r)
      : support(std::move(s)), left(std::move(l)), right(std::move(r)) {
    if (!same_gpd(support, left.src()) || !same_gpd(support, right.src()))
      throw GroupoidError("span displays must start at the support");
  }
  const Gpd& left_base() const { return left.dst(); }
  const Gpd& right_base() const { return right.dst(); }

  static Span identity_span(const Gpd& a);
};

// The two views of one value: a span as a prestrategy on the product, and
// back.  from_product_prestrategy(to_product_prestrategy(S)) == S.
Prestrategy to_product_prestrategy(const Span& s, const ProductGpd& ab);
Span from_product_prestrategy(const Prestrategy& p, const ProductGpd& ab);

// A cospan f : S → B ← T : g of displays.
struct Cospan {
  GFunctor f, g;
  Cospan(GFunctor f_, GFunctor g_) : f(std::move(f_)), g(std::move(g_)) {
    if (!same_gpd(f.dst(), g.dst()))
      throw GroupoidError("cospan legs must share their codomain");
  }
};

struct PullbackGpd {
  Gpd gpd;
  GFunctor pl, pr;  // to the two feet of the cospan
  std::vector<std::pair<Obj, Obj>> obj_pairs;
  std::vector<std::pair<Mor, Mor>> mor_pairs;
  // -1 when the pair does not land in the pullback
  Obj obj_of(Obj s, Obj t) const;
  Mor mor_of(Mor f, Mor g) const;

 private:
  friend PullbackGpd pullback(const Cospan&);
  std::unordered_map<std::uint64_t, Obj> obj_ids_;
  std::unordered_map<std::uint64_t, Mor> mor_ids_;
};

// Strict pullback: objects (s, t) with f(s) = g(t), morphisms (φ, ψ) with
// f(φ) = g(ψ), both in lexicographic order.
PullbackGpd pullback(const Cospan& c);

struct ComposedSpan {
  Span span;
  PullbackGpd pb;  // support structure: pairs over the middle base
};

// T ⊙ S for S : A ⊸ B and T : B ⊸ C; support is the pullback of
// (∂^S_B, ∂^T_B), with ∂^{T⊙S}_A = ∂^S_A ∘ pl and ∂^{T⊙S}_C = ∂^T_C ∘ pr.
ComposedSpan compose_spans(const Span& s, const Span& t);

// T@S: the application of a span to a prestrategy on its left base.
Prestrategy apply(const Span& t, const Prestrategy& s);

Span dual_span(const Span& s);

// A reindexing problem for the cospan f : S → B ← T : g — a pair of objects
// together with a base symmetry θ : f(s) ≅ g(t).
struct ReindexingProblem {
  Obj s, t;
  Mor theta;
};

// A solution: φ : s → s′ in S and ψ : t′ → t in T with f(s′) = g(t′) and
// g(ψ) ∘ f(φ) = θ.  (The lemma's displayed formula transposes f and g; the
// endpoints force this reading.)
struct ReindexingSolution {
  Mor phi, psi;
  friend bool operator==(const ReindexingSolution& a, const ReindexingSolution& b) {
    return a.phi == b.phi && a.psi == b.psi;
  }
};

// Complete solution list in lexicographic (phi, psi) order.
std::vector<ReindexingSolution> solve_reindexing(const Cospan& c,
                                                 const ReindexingProblem& p);

// All reindexing problems of the cospan (every object pair, every connecting
// base symmetry), in lexicographic (s, t, theta) order.
std::vector<ReindexingProblem> all_reindexing_problems(const Cospan& c);

// Pointwise criterion: the pullback is a bipullback iff every reindexing
// problem has at least one solution.
bool is_bipullback(const Cospan& c);

// Independent oracle: pseudocone factorization through the strict pullback,
// checked by exhaustive search over (h, α, β) for every pseudocone with a
// vertex among the probes.  Probes must include the terminal groupoid.
bool is_bipullback_oracle(const Cospan& c, const std::vector<Gpd>& probes);

// Strict 2-pullback check (unique cone factorization) against the probes
// {terminal, walking iso}.  Expected true for every computed pullback.
bool check_2pullback(const Cospan& c);

// A weak morphism of spans over a fixed boundary: a support functor together
// with natural isos filling both display triangles.  Strong when both fills
// are identities.
struct WeakMorphism {
  Span src, dst;
  GFunctor support_functor;            // F : src.support → dst.support
  NatIso fill_left;                    // ∂^S_A ⇒ ∂^{S′}_A ∘ F
  NatIso fill_right;                   // ∂^S_B ⇒ ∂^{S′}_B ∘ F

  WeakMorphism(Span src_, Span dst_, GFunctor f, NatIso fl, NatIso fr);
  static WeakMorphism identity(const Span& s);
  static WeakMorphism strong(Span src, Span dst, GFunctor f);
};

bool is_strong(const WeakMorphism& w);
bool is_invertible(const WeakMorphism& w);  // support functor bijective
WeakMorphism weak_morphism_vcompose(const WeakMorphism& g, const WeakMorphism& f);
WeakMorphism weak_morphism_inverse(const WeakMorphism& w);  // requires invertible
bool weak_morphism_equal(const WeakMorphism& a, const WeakMorphism& b);

// Exhaustive search for an invertible weak morphism S → S′ (a span
// isomorphism); returns the lexicographically first one found, or nothing.
std::optional<WeakMorphism> span_iso_search(const Span& s, const Span& sp);

// JSON: a span file embeds its two display functors.
nlohmann::json span_to_json(const Span& s);
Span span_from_json(const nlohmann::json& j);

}  // namespace thinspan
