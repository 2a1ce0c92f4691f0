#pragma once
// The Kleisli bicategory over the ! comonad: Kleisli homs and composition,
// the terminal object, the with-product with projections and pairing, the
// Seely equivalence and its coherence cell, evaluation, currying and
// uncurrying, and instance-level adjoint-equivalence verification.
//
// Every hom carries the !-fragment it is read over.  Small bases use the full
// family groupoid at the configured truncation; large bases (function spaces)
// use shape-curated fragments, constructed explicitly and documented at the
// call site.  All equivalences are verified on those explicit domains.

#include "thinspan/bang.hpp"
#include "thinspan/bicat.hpp"

namespace thinspan {

// ---------------------------------------------------------------------------
// Structural helpers on product and coproduct groupoids

// [F, G] : X + Y → Z for F : X → Z, G : Y → Z.
GFunctor copair_functor(const CoproductGpd& c, const GFunctor& f,
                        const GFunctor& g);
// ⟨F, G⟩ : X → A × B for F : X → A, G : X → B.
GFunctor pair_functor(const GFunctor& f, const GFunctor& g,
                      const ProductGpd& p);
// Componentwise polarities: (A + B)_- = A_- + B_-, (A × B)_- = A_- × B_-.
PolarizedGroupoid coproduct_polarity(const PolarizedGroupoid& a,
                                     const PolarizedGroupoid& b,
                                     const CoproductGpd& c);
PolarizedGroupoid product_polarity(const PolarizedGroupoid& a,
                                   const PolarizedGroupoid& b,
                                   const ProductGpd& p);
// Coproduct of prestrategies (coproduct support, case-wise display).
Prestrategy prestrategy_coproduct(const Prestrategy& s, const Prestrategy& t,
                                  const CoproductGpd& ab);

// ---------------------------------------------------------------------------
// Kleisli homs

// A morphism A → B of the Kleisli bicategory: a certified span !A ⊸ B,
// together with the fragment of !A it is read over.
struct KleisliHom {
  ThinGroupoid src;       // A
  FamGpd fsrc;            // the !A fragment
  ThinGroupoid bang_src;  // thin structure on the fragment
  ThinHom hom;            // certified span !A ⊸ B
  TruncationConfig cfg;

  const Span& span() const { return hom.span; }
  const ThinGroupoid& dst() const { return hom.b; }
};

// Certify a span as a Kleisli hom.  The two-argument form materializes the
// full family fragment of the source base (desk-sized bases only); the other
// forms take a prebuilt fragment, or a fragment plus its thin structure
// (letting large-base callers use a canonical-only presentation).
KleisliHom make_kleisli_hom(const ThinGroupoid& a, const ThinGroupoid& b,
                            Span s, const TruncationConfig& cfg);
KleisliHom make_kleisli_hom(const ThinGroupoid& a, const ThinGroupoid& b,
                            Span s, FamGpd fsrc, const TruncationConfig& cfg);
KleisliHom make_kleisli_hom(const ThinGroupoid& a, const ThinGroupoid& b,
                            Span s, FamGpd fsrc, ThinGroupoid bang_src,
                            const TruncationConfig& cfg);

// The identity of Thin_! is the dereliction !A ⊸ A.
KleisliHom kleisli_identity(const ThinGroupoid& a, const TruncationConfig& cfg);

// The 2-cell polarity of a Kleisli hom boundary: (!A polarity, B polarity).
SpanPolarity kleisli_polarity(const KleisliHom& s);

// The depth-2 fragment !!A over a !A fragment: families of members of `fa`
// whose flattening along the pairing stays in range and lands in `fa`.
FamGpd bang_squared(const FamGpd& fa, const PairingFunction& p);

// T ⊙_! S = T ⊙ !S ⊙ μ̌_A, with a fresh certificate over (!A, C).
KleisliHom kleisli_compose(const KleisliHom& s, const KleisliHom& t,
                           const PairingFunction& p = cantor_pairing());

// --- 2-cell plumbing over Kleisli composites ---

// !w : !S ⇒ !S′ between fam_span supports; `fl`/`fr` are the fragments the
// lifted spans display into.
WeakMorphism fam_cell(const WeakMorphism& w, const FamSpan& fs,
                      const FamSpan& ft, const FamGpd& fl, const FamGpd& fr);

// Whisker a positive 2-cell w : S ⇒ S′ (homs A → B) with T : B → C:
// T ⊙_! S ⇒ T ⊙_! S′, matching the spans produced by kleisli_compose.
PositiveWeakMorphism kleisli_whisker_left(const PositiveWeakMorphism& w,
                                          const KleisliHom& s,
                                          const KleisliHom& s2,
                                          const KleisliHom& t,
                                          const PairingFunction& p =
                                              cantor_pairing());
// Whisker w : T ⇒ T′ (homs B → C) with S : A → B on the other side.
PositiveWeakMorphism kleisli_whisker_right(const KleisliHom& s,
                                           const PositiveWeakMorphism& w,
                                           const KleisliHom& t,
                                           const KleisliHom& t2,
                                           const PairingFunction& p =
                                               cantor_pairing());

// ---------------------------------------------------------------------------
// Terminal object

// ⊤ is the empty groupoid; Thin_!(A, ⊤) contains exactly the empty span.
ThinGroupoid terminal_object();
KleisliHom bang_terminal_hom(const ThinGroupoid& a, const TruncationConfig& cfg);

// ---------------------------------------------------------------------------
// With-products

struct WithObject {
  ThinGroupoid left, right;
  ThinGroupoid combined;  // over left.base + right.base
  CoproductGpd coprod;
};
WithObject with_product(const ThinGroupoid& a, const ThinGroupoid& b);

// π̄_l = (η_{A+B} ∘ l̄)ˇ and π̄_r, as certified Kleisli homs A&B → A / → B,
// sharing the !(A&B) fragment and thin structure.
struct Projections {
  FamGpd fab;
  ThinGroupoid bang_with;
  KleisliHom pl, pr;
};
Projections projections(const WithObject& w, const TruncationConfig& cfg);

// ⟨S, T⟩ : Γ → A&B: coproduct support, co-paired displays.
KleisliHom pairing(const KleisliHom& s, const KleisliHom& t,
                   const WithObject& w);

// ⟨wa, wb⟩ on 2-cells: wa : Sa ⇒ Sb, wb : Ta ⇒ Tb (homs out of a shared Γ)
// gives ⟨Sa,Ta⟩ ⇒ ⟨Sb,Tb⟩, matching the spans produced by pairing.
WeakMorphism pairing_cell(const WeakMorphism& wa, const WeakMorphism& wb,
                          const WithObject& w, const FamGpd& fsrc);

// ---------------------------------------------------------------------------
// The Seely equivalence

struct SeelyEquivalence {
  CoproductGpd coprod;  // A + B
  FamGpd fa, fb, fab;   // the !A, !B, !(A&B) fragments the functors run over
  ProductGpd prod;      // !A × !B
  SubgroupoidInclusion dom_s;  // part of !A × !B where interleaving is in range
  std::vector<Obj> dom_s_of;   // prod object id → dom_s id, -1 outside
  GFunctor s;                  // dom_s → !(A&B)
  GFunctor sbar;               // !(A&B) fragment → !A × !B
  NatIso unit = NatIso::identity_iso(GFunctor());  // inclusion ⇒ sbar ∘ s
  SubgroupoidInclusion dom_ss;  // part of !(A&B) where s ∘ sbar is defined
  std::vector<Obj> dom_ss_of;
  GFunctor s_sbar;  // dom_ss → !(A&B)
  NatIso counit = NatIso::identity_iso(GFunctor());  // s_sbar ⇒ inclusion
};

// On explicit fragments: fa/fb/fab must be fragments over a.base(), b.base(),
// and their coproduct.  sbar must stay inside fa × fb (throws otherwise).
SeelyEquivalence seely(const ThinGroupoid& a, const ThinGroupoid& b,
                       FamGpd fa, FamGpd fb, FamGpd fab,
                       const InterleavingBijection& il = even_odd_interleaving());
// Full family fragments at the configured truncation (small bases only).
SeelyEquivalence seely(const ThinGroupoid& a, const ThinGroupoid& b,
                       const TruncationConfig& cfg,
                       const InterleavingBijection& il = even_odd_interleaving());
// Shape-curated fragments sized for larger truncations: the side fragments
// hold the families over L plus the families over ι_l(L) (resp. R, ι_r(R)),
// where L, R are the in-range interleaving arguments; the coproduct-side
// fragment holds exactly the interleavings of the in-range pairs.
SeelyEquivalence seely_curated(const ThinGroupoid& a, const ThinGroupoid& b,
                               const TruncationConfig& cfg,
                               const InterleavingBijection& il =
                                   even_odd_interleaving());

// ---------------------------------------------------------------------------
// The Seely coherence cell

// σ_{A,B} : μ ∘ !(copair) ∘ s_{!A,!B} ⇒ s_{A,B} ∘ (μ × μ) on the in-range
// depth-2 pairs; components are pure reindexings
// ⟨ι_l(i), j⟩ ↦ ι_l(⟨i,j⟩), ⟨ι_r(i), j⟩ ↦ ι_r(⟨i,j⟩) with identity entries.
struct SeelyCoherence {
  Slot sa, sb;       // depth-2 in-range slots over the two bases
  ProductGpd prod2;  // sa.top × sb.top
  SubgroupoidInclusion dom;  // pairs where both routes stay in range
  CoproductGpd coprod;
  FamGpd fab;  // target !(A&B) fragment (shape-curated to the two images)
  GFunctor via_seely, via_mu;  // dom → !(A&B)
  NatIso cell = NatIso::identity_iso(GFunctor());  // via_seely ⇒ via_mu
};
SeelyCoherence seely_coherence_cell(const Gpd& a, const Gpd& b,
                                    const TruncationConfig& cfg,
                                    const PairingFunction& p = cantor_pairing(),
                                    const InterleavingBijection& il =
                                        even_odd_interleaving());

// ---------------------------------------------------------------------------
// Function spaces, evaluation, currying

// A ⇒ B = !A ⅋ B, with base !A.base × B.base.
struct ArrowObject {
  FamGpd fa;  // !A
  ThinGroupoid bang_a;
  TensorResult arrow;
};
ArrowObject arrow_object(const ThinGroupoid& a, const ThinGroupoid& b,
                         const TruncationConfig& cfg);

// Evaluation (A⇒B)&A → B: support is the in-range part of !A × B; the left
// display sends ((a_i)_I, b) to the family with the arrow point at ι_l(0) and
// the arguments at ι_r(i).  The !((A⇒B)&A) fragment is shape-curated to
// exactly those index slots (the base is too large for the full family).
struct Evaluation {
  ArrowObject arrow;
  WithObject withab;  // (A⇒B) & A
  FamGpd fsrc;        // curated fragment of !((A⇒B)&A)
  KleisliHom hom;
};
Evaluation evaluation(const ThinGroupoid& a, const ThinGroupoid& b,
                      const TruncationConfig& cfg,
                      const InterleavingBijection& il = even_odd_interleaving());

// Shared data for currying over a fixed (Γ, A, B).
struct ClosureContext {
  ThinGroupoid gamma, a, b;
  TruncationConfig cfg;
  InterleavingBijection il;
  WithObject ga;           // Γ & A
  SeelyEquivalence sely;   // over (Γ, A), full fragments
  ArrowObject ab;          // A ⇒ B
  ThinGroupoid bang_gamma;  // over sely.fa
  ThinGroupoid bang_ga;     // over sely.fab
};
ClosureContext closure_context(const ThinGroupoid& gamma, const ThinGroupoid& a,
                               const ThinGroupoid& b,
                               const TruncationConfig& cfg,
                               const InterleavingBijection& il =
                                   even_odd_interleaving());

// Λ(S) for S : Γ&A → B keeps the support and post-composes the displays with
// sbar; uncurrying post-composes with s on the in-range part of the support.
KleisliHom curry(const KleisliHom& s, const ClosureContext& cx);
KleisliHom uncurry(const KleisliHom& s, const ClosureContext& cx);

// Functorial action on 2-cells (same support functor, transported fills).
WeakMorphism curry_cell(const WeakMorphism& w, const ClosureContext& cx);
WeakMorphism uncurry_cell(const WeakMorphism& w, const ClosureContext& cx);

// The adjunction cells, materialized from the Seely unit/counit:
//   closure_unit(S):   curry(uncurry(S)) ⇒ S   (S : Γ → (A⇒B))
//   closure_counit(T): uncurry(curry(T)) ⇒ T   (T : Γ&A → B)
// Support functor is the in-range inclusion; invertible iff the instance is
// fully in range.
struct ClosureCell {
  KleisliHom round_trip;
  WeakMorphism cell;
};
ClosureCell closure_unit(const KleisliHom& s, const ClosureContext& cx);
ClosureCell closure_counit(const KleisliHom& t, const ClosureContext& cx);

// ---------------------------------------------------------------------------
// Adjoint-equivalence verification (instance-based)

// For each (S : Γ→A, T : Γ→B): the comparison isos ω^A, ω^B, ω̄ exist and
// positivize; both zigzag identities hold as equalities of positivized
// composites; ω^A is natural against the display-preserving automorphisms of
// the first instance.
struct ProductInstance {
  KleisliHom s, t;
};
CertReport verify_product_adjequiv(const ThinGroupoid& gamma,
                                   const WithObject& w,
                                   const std::vector<ProductInstance>& instances,
                                   const TruncationConfig& cfg,
                                   const PairingFunction& p = cantor_pairing());

// For each S : Γ → (A⇒B): unit/counit are positive and invertible, both
// zigzag triangles hold (counit at uncurry(S) equals the uncurried unit, and
// dually), and ev ⊙_! (S & id_A) ≅ uncurry(S); for each T : Γ&A → B the
// counit round trip is an iso.
CertReport verify_closure_adjequiv(const ClosureContext& cx,
                                   const std::vector<KleisliHom>& arrow_homs,
                                   const std::vector<KleisliHom>& with_homs,
                                   const PairingFunction& p = cantor_pairing());

}  // namespace thinspan
