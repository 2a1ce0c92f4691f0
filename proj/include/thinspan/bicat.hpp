#pragma once
// The bicategory of thin spans: certified homs, pullback composition,
// horizontal composition of positive 2-cells (solve the middle reindexing,
// positivize, assert the paved polarity conditions), unitors and associator
// as strong invertible cells, and per-instance coherence verification.

#include "thinspan/polarity.hpp"

namespace thinspan {

// A hom A ⊸ B of the bicategory: a span together with its thin-membership
// certificate.  make_thin_hom runs the certificate and throws when it fails.
struct ThinHom {
  ThinGroupoid a, b;
  Span span;
  CertReport certificate;
};

ThinHom make_thin_hom(const ThinGroupoid& a, const ThinGroupoid& b, Span s);
ThinHom identity_hom(const ThinGroupoid& a);

// T ⊙ S by pullback, with a fresh certificate over (A, C).  Throws on
// boundary mismatch or certificate failure (non-thin inputs).
ThinHom hcompose(const ThinHom& s, const ThinHom& t);

// Horizontal composition of positive 2-cells F : S ⇒ S′ (over A ⊸ B) and
// G : T ⇒ T′ (over B ⊸ C), yielding T⊙S ⇒ T′⊙S′.  Per pullback object the
// middle reindexing problem is solved (lexicographically first solution),
// the resulting weak morphism is positivized, and the positive result is
// asserted to be independent of the solution order.  Errors: an unsolvable
// middle problem (uniformity violation), or a non-unique positivization
// (thinness violation).
PositiveWeakMorphism hcompose_2cells(const PositiveWeakMorphism& f,
                                     const PositiveWeakMorphism& g,
                                     const SpanPolarity& ab,
                                     const SpanPolarity& bc);

enum class CellKind { unitor_left, unitor_right, associator };

// A structural coherence cell: always strong and invertible (checked at
// construction).
struct CoherenceCell {
  CellKind kind;
  WeakMorphism data;
  CoherenceCell(CellKind k, WeakMorphism w);
};

// λ_S : id_B ⊙ S ⇒ S, the pullback projection to the support of S.
CoherenceCell unitor_left(const Span& s, const Gpd& b);
// ρ_S : S ⊙ id_A ⇒ S.
CoherenceCell unitor_right(const Span& s, const Gpd& a);
// α : (U⊙T)⊙S ⇒ U⊙(T⊙S), reassociating pair-of-pairs supports.
CoherenceCell associator(const Span& s, const Span& t, const Span& u);

// Whiskering of a strong cell with a span on either side of the composition
// (compose_spans(inner, outer)): the support functor acts on one pullback
// component and leaves the other fixed.  Requires a strong cell.
WeakMorphism whisker_inner(const WeakMorphism& cell, const Span& outer);
WeakMorphism whisker_outer(const Span& inner, const WeakMorphism& cell);

// A composable quadruple of certified homs A ⊸ B ⊸ C ⊸ D ⊸ E.
struct BicatInstance {
  ThinGroupoid a, b, c, d, e;
  ThinHom s, t, u, v;
};

// Per-instance checks: pentagon and triangle (exact cell equality), unitor
// and associator naturality against generated invertible 2-cells,
// functoriality of horizontal composition on identities, and interchange.
CertReport verify_bicategory_laws(const std::vector<BicatInstance>& instances);

}  // namespace thinspan
