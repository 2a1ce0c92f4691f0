#pragma once
// The ! construction: truncated-Fam pseudomonad data on groupoids (η, μ and
// the modifications α, β, γ), renamings and their span liftings, the lifted
// pseudocomonad cells on spans, and instance-level coherence verification.
//
// Nested families are manipulated through a small tree calculus (Tree for
// objects, MTree for morphisms) and materialized on demand into fragment
// chains ("slots").  Index truncation makes η and μ partial; every check runs
// on an explicitly constructed in-range domain and is exact there.

#include "thinspan/base.hpp"
#include "thinspan/polarity.hpp"

#include <functional>
#include <set>

namespace thinspan {

// ---------------------------------------------------------------------------
// Pairing and interleaving choices

struct PairingFunction {
  std::string name;
  long (*fn)(long, long) = nullptr;
  long pair(long i, long j) const { return fn(i, j); }
};
PairingFunction cantor_pairing();  // ⟨i,j⟩ = (i+j)(i+j+1)/2 + j
PairingFunction shift_pairing();   // ⟨i,j⟩ = 2^i(2j+1) − 1

struct InterleavingBijection {
  std::string name;
  long (*lfn)(long) = nullptr;
  long (*rfn)(long) = nullptr;
  long left(long i) const { return lfn(i); }
  long right(long j) const { return rfn(j); }
};
InterleavingBijection even_odd_interleaving();  // 2i / 2j+1
InterleavingBijection odd_even_interleaving();  // 2i+1 / 2j

// ---------------------------------------------------------------------------
// Nested family trees

// A nested family object over a base groupoid: depth 0 is a bare object,
// depth d ≥ 1 a family of depth-(d−1) trees.
struct Tree {
  int depth = 0;
  Obj leaf = -1;                           // depth 0 only
  std::vector<std::pair<int, Tree>> kids;  // depth ≥ 1; sorted by index

  friend bool operator<(const Tree& a, const Tree& b) {
    if (a.depth != b.depth) return a.depth < b.depth;
    if (a.depth == 0) return a.leaf < b.leaf;
    return a.kids < b.kids;
  }
  friend bool operator==(const Tree& a, const Tree& b) {
    return a.depth == b.depth && a.leaf == b.leaf && a.kids == b.kids;
  }
};

Tree leaf_tree(Obj a);
Tree node_tree(int depth, std::vector<std::pair<int, Tree>> kids);

// μ applied `level` families down: level 0 merges the top two levels along
// the pairing; depth decreases by one.
Tree tree_flatten_at(const Tree& t, int level, const PairingFunction& p);
// η applied `level` families down: level 0 wraps the tree as [0·t]; depth
// increases by one.
Tree tree_eta_at(const Tree& t, int level);
// Every index value produced by any sequence of flattenings stays < N.
bool tree_in_range(const Tree& t, int max_index, const PairingFunction& p);
// All in-range trees of the given depth over the base.
std::vector<Tree> enumerate_in_range_trees(const Gpd& a, int depth,
                                           int max_index,
                                           const PairingFunction& p);

// A nested family morphism between two trees of equal depth: an index
// bijection with componentwise sub-morphisms (depth 0: a base morphism).
struct MTree {
  int depth = 0;
  Mor leaf = -1;
  Tree src, dst;
  std::vector<std::pair<int, int>> idx;  // src index → dst index, sorted
  std::vector<MTree> comps;              // aligned with src entries

  friend bool operator==(const MTree& a, const MTree& b) {
    return a.depth == b.depth && a.leaf == b.leaf && a.src == b.src &&
           a.dst == b.dst && a.idx == b.idx && a.comps == b.comps;
  }
};

MTree mtree_identity(const Gpd& a, const Tree& t);
MTree mtree_compose(const Gpd& a, const MTree& g, const MTree& f);
MTree mtree_inverse(const Gpd& a, const MTree& f);
MTree mtree_flatten_at(const MTree& m, int level, const PairingFunction& p);
MTree mtree_eta_at(const MTree& m, int level);

// The pseudomonad modification components, as pure reindexings (identity
// leaf components — all negative symmetries):
//   α_X : X → μ(η_{!A} X)      (j ↦ ⟨0,j⟩),    X of depth 1
//   β_X : X → μ(!η_A X)        (j ↦ ⟨j,0⟩),    X of depth 1
//   γ_X : μ(μ_! X) → μ(!μ X)   (⟨⟨i,j⟩,k⟩ ↦ ⟨i,⟨j,k⟩⟩),  X of depth 3
MTree alpha_component(const Gpd& a, const Tree& x, const PairingFunction& p);
MTree beta_component(const Gpd& a, const Tree& x, const PairingFunction& p);
MTree gamma_component(const Gpd& a, const Tree& x, const PairingFunction& p);

// ---------------------------------------------------------------------------
// Slots: materialized fragment chains

// A depth-d slot materializes a set of depth-d trees as a chain of fragments
// (level k holds every depth-k subtree of the set), with tree-level
// encode/decode at the top.
struct Slot {
  Gpd base;
  int max_index = 0;
  std::vector<FamGpd> chain;  // chain[0] over base, chain[k] over chain[k-1]

  int depth() const { return static_cast<int>(chain.size()); }
  const FamGpd& top() const { return chain.back(); }
  const Gpd& gpd() const { return chain.back().gpd; }

  Obj encode_obj(const Tree& t) const;  // -1 when absent
  Tree decode_obj(Obj x) const;
  Mor encode_mor(const MTree& m) const;  // -1 when absent
  MTree decode_mor(Mor m) const;
};

Slot make_slot(Gpd base, int max_index, const std::set<Tree>& trees);

// A functor between slot tops defined by a tree map and a morphism-tree map;
// functoriality is certified by the validating GFunctor constructor.
GFunctor slot_functor(const Slot& src, const Slot& dst,
                      const std::function<Tree(const Tree&)>& of,
                      const std::function<MTree(const MTree&)>& mf);
// The tree-identity functor into a larger slot (stands in for identities
// when domain and codomain fragments differ).
GFunctor slot_inclusion(const Slot& src, const Slot& dst);

// ---------------------------------------------------------------------------
// The pseudomonad data on fragments

// η relative to a fragment: a ↦ [0·a]; errors if an image is missing.
GFunctor eta(const Gpd& a, const FamGpd& target);
// μ on a fragment of families over `inner`: flattens along the pairing.
// Errors "index overflow at ⟨i,j⟩ = v" when a pairing leaves the universe,
// or when an image is missing from the target fragment.
GFunctor mu(const FamGpd& outer, const FamGpd& inner, const FamGpd& target,
            const PairingFunction& p);

PolarizedGroupoid fam_polarity(const PolarizedGroupoid& a, const FamGpd& fa);
ThinGroupoid fam_thin(const ThinGroupoid& a, const FamGpd& fa);

// The prestrategy !S on a fragment: support families over S's support whose
// displayed family lands in the target fragment.
struct FamPrestrategy {
  FamGpd support;
  Prestrategy prestrategy;
};
FamPrestrategy fam_prestrategy(const Prestrategy& s, const FamGpd& fa);

// The span !S : !A ⊸ !B, support restricted to families displayed into both
// fragments.
struct FamSpan {
  FamGpd support;
  Span span;
};
FamSpan fam_span(const Span& s, const FamGpd& fa, const FamGpd& fb);

// The three modification natural isomorphisms, materialized on curated
// in-range slots.  Inclusions stand in for identity functors (the domain and
// codomain fragments differ).
struct MonadModifications {
  Slot unit_dom, unit_cod;  // depth 1
  NatIso alpha;             // inc ⇒ μ ∘ η_{!A}
  NatIso beta;              // inc ⇒ μ ∘ !η_A
  Slot assoc_dom;           // depth 3
  Slot assoc_cod;           // depth 1
  NatIso gamma;             // μ ∘ μ_! ⇒ μ ∘ !μ
};
MonadModifications monad_modifications(const Gpd& a, const TruncationConfig& cfg,
                                       const PairingFunction& p);

// ---------------------------------------------------------------------------
// Renamings and liftings

struct Renaming {
  GFunctor functor;  // F : A → B
  CertReport report;
};
// Condition (1) exhaustively (positive symmetries map to positive
// symmetries); conditions (2), (3): every (thin) co-generator of A,
// post-composed with F, stays (thinly) orthogonal to the generators of B.
Renaming check_renaming(const GFunctor& f, const ThinGroupoid& src,
                        const ThinGroupoid& dst);

// The lifting of a certified renaming F : B → A: the span A ← B → B, with a
// thin-membership certificate over (A, B).
struct LiftedSpan {
  Span span;
  CertReport cert;
};
LiftedSpan lift_renaming(const Renaming& f, const ThinGroupoid& a,
                         const ThinGroupoid& b);

// Dereliction !A ⊸ A: the lifting of η_A.
LiftedSpan dereliction(const ThinGroupoid& a, const FamGpd& fa);

// ---------------------------------------------------------------------------
// Lifted pseudocomonad cells on spans

// m_{S,T} : !(T ⊙ S) ⇒ !T ⊙ !S — the strong invertible comparison coming
// from Fam preserving pullbacks, built directly (family of pairs ↦ pair of
// families) and certified invertible.
// η_S : η̌_B ⊙ !S ⇒ S ⊙ η̌_A and μ_S : μ̌_B ⊙ !S ⇒ !!S ⊙ μ̌_A, the
// pseudonaturality cells; both strong, built from cartesianness.
struct ComonadCells {
  WeakMorphism m_cell;
  WeakMorphism eta_cell;
  WeakMorphism mu_cell;
};
ComonadCells comonad_cells(const Span& s, const Span& t,
                           const TruncationConfig& cfg,
                           const PairingFunction& p);

// ---------------------------------------------------------------------------
// Coherence verification

// Modification coherence of (η, μ, α, β, γ) over A: naturality of the three
// modifications (certified on slots), the strict naturality square
// μ ∘ !!μ = !μ ∘ μ_{!!}, the pentagon for γ on the in-range depth-4 trees,
// and the two unit triangles on the in-range depth-2 trees.
CertReport verify_pseudomonad(const Gpd& a, const TruncationConfig& cfg,
                              const PairingFunction& p);

// Instance-level pseudocomonad verification over Thin: for each span
// instance, η and μ are renamings over the instance boundary, their liftings
// are certified thin, the pseudonaturality cells and the comparison m are
// positive/strong invertible cells, and the base-level coherence equations
// hold (the paper reduces the two span-level equations to these by paving).
struct SpanInstance {
  ThinGroupoid a, b;
  Span s;
};
CertReport verify_pseudocomonad_instances(const std::vector<SpanInstance>& spans,
                                          const TruncationConfig& cfg,
                                          const PairingFunction& p);

}  // namespace thinspan
