#pragma once
// Finite groupoid kernel: groupoids with explicit composition tables, functors,
// natural isomorphisms, wide subgroupoids, and the basic (co)limit-free
// constructions (product, coproduct, discrete, terminal, empty, walking iso).
//
// Objects and morphisms are dense integer identifiers; equality is identifier
// equality.  All values are immutable after construction, so they can be shared
// freely (we pass groupoids around as shared_ptr<const FiniteGroupoid>).

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace thinspan {

using Obj = std::int32_t;
using Mor = std::int32_t;

class GroupoidError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Unvalidated groupoid data, as read from JSON or assembled by hand.
// validate_groupoid turns it into a FiniteGroupoid or reports the first
// violated axiom.
struct RawGroupoid {
  struct RawMor {
    Obj src = 0;
    Obj dst = 0;
  };
  int num_objects = 0;
  std::vector<RawMor> morphisms;
  // ((g, f), g∘f) entries; must be total on composable pairs.
  std::vector<std::pair<std::pair<Mor, Mor>, Mor>> compose;
  std::vector<Mor> identities;  // identities[x] = id_x
  std::vector<std::string> obj_labels;  // optional, may be empty
  std::vector<std::string> mor_labels;  // optional, may be empty
};

class FiniteGroupoid;
using Gpd = std::shared_ptr<const FiniteGroupoid>;

class FiniteGroupoid {
 public:
  // Validates the groupoid axioms (totality of composition on composable
  // pairs, associativity, identities, existence of inverses, endpoint
  // consistency).  Throws GroupoidError naming the offending data otherwise.
  // Associativity is re-checked on every composable triple up to a fixed
  // budget; past it (tens of millions of triples, reached only by large
  // internally-generated fragments whose tables are associative by
  // construction) a deterministic stride sample of triples is checked.
  static Gpd validate(const RawGroupoid& raw);

  int object_count() const { return num_objects_; }
  int morphism_count() const { return static_cast<int>(src_.size()); }

  Obj src(Mor m) const { return src_[check_mor(m)]; }
  Obj dst(Mor m) const { return dst_[check_mor(m)]; }
  Mor identity(Obj x) const { return identity_[check_obj(x)]; }
  Mor inverse(Mor m) const { return inverse_[check_mor(m)]; }
  bool is_identity(Mor m) const { return identity_[src(m)] == m; }

  // g ∘ f (f first); throws on endpoint mismatch.
  Mor compose(Mor g, Mor f) const;

  // Morphisms from a to b in ascending id order; empty if none.
  const std::vector<Mor>& hom(Obj a, Obj b) const;

  bool discrete() const;  // only identity morphisms

  const std::string& obj_label(Obj x) const { return obj_labels_[check_obj(x)]; }
  const std::string& mor_label(Mor m) const { return mor_labels_[check_mor(m)]; }

  // --- canned groupoids ---
  static Gpd empty();
  static Gpd terminal();
  static Gpd discrete_gpd(int n, std::vector<std::string> labels = {});
  // One object, cyclic group Z_n: morphism k is the k-th power of the
  // generator (so 0 is the identity).
  static Gpd cyclic(int n);
  // Two objects 0, 1 and a single isomorphism u : 0 → 1 (plus identities and
  // the inverse).  Morphisms: 0 = id_0, 1 = id_1, 2 = u, 3 = u⁻¹.
  static Gpd walking_iso();

  // Structural comparison (same tables).  Used by same_gpd below.
  bool structurally_equal(const FiniteGroupoid& other) const;

 private:
  friend struct GroupoidBuilder;
  FiniteGroupoid() = default;

  Obj check_obj(Obj x) const {
    if (x < 0 || x >= num_objects_) throw GroupoidError("object id out of range");
    return x;
  }
  Mor check_mor(Mor m) const {
    if (m < 0 || m >= static_cast<Mor>(src_.size()))
      throw GroupoidError("morphism id out of range");
    return m;
  }

  int num_objects_ = 0;
  std::vector<Obj> src_, dst_;
  std::vector<Mor> identity_;  // per object
  std::vector<Mor> inverse_;   // per morphism
  // composition stored per middle object: comp_block_[y] is the
  // |out(y)| × |in(y)| table of composites g ∘ f for g leaving and f
  // entering y, indexed by (pos_out_[g], pos_in_[f])
  std::vector<std::vector<Mor>> in_of_, out_of_;  // per object, ascending ids
  std::vector<int> pos_in_, pos_out_;             // per morphism
  std::vector<std::vector<Mor>> comp_block_;
  // hom lists keyed by (a << 32) | b
  std::unordered_map<std::uint64_t, std::vector<Mor>> homs_;
  std::vector<std::string> obj_labels_, mor_labels_;
};

// Builder used by internal constructions that already know their data is
// lawful in shape but still want the full axiom check (belt and braces).
struct GroupoidBuilder {
  RawGroupoid raw;
  Obj add_object(std::string label = "");
  Mor add_morphism(Obj src, Obj dst, std::string label = "");
  void set_identity(Obj x, Mor m);
  void set_compose(Mor g, Mor f, Mor gf);
  Gpd build() const { return FiniteGroupoid::validate(raw); }
};

// True if the two handles denote the same groupoid: pointer equality or
// structural equality of tables.  Constructions return fresh values, so
// boundary checks must accept structurally equal copies.
bool same_gpd(const Gpd& a, const Gpd& b);

class GFunctor {
 public:
  // Validates functoriality (endpoints, identities, composition).
  GFunctor(Gpd src, Gpd dst, std::vector<Obj> object_map,
           std::vector<Mor> morphism_map);

  // The unique functor between empty groupoids; placeholder for aggregate
  // results that are filled in after construction.
  GFunctor() : GFunctor(FiniteGroupoid::empty(), FiniteGroupoid::empty(), {}, {}) {}

  static GFunctor identity_functor(Gpd g);
  // Constant functor at object x of dst (only valid when dst is a groupoid
  // whose hom(x,x) contains id; always true).
  static GFunctor constant(Gpd src, Gpd dst, Obj x);

  const Gpd& src() const { return src_; }
  const Gpd& dst() const { return dst_; }
  Obj on_obj(Obj x) const { return omap_[x]; }
  Mor on_mor(Mor m) const { return mmap_[m]; }
  const std::vector<Obj>& object_map() const { return omap_; }
  const std::vector<Mor>& morphism_map() const { return mmap_; }

  bool is_identity() const;
  bool is_bijective() const;  // bijective on objects and morphisms

  friend bool operator==(const GFunctor& a, const GFunctor& b) {
    return same_gpd(a.src_, b.src_) && same_gpd(a.dst_, b.dst_) &&
           a.omap_ == b.omap_ && a.mmap_ == b.mmap_;
  }

 private:
  Gpd src_, dst_;
  std::vector<Obj> omap_;
  std::vector<Mor> mmap_;
};

// G ∘ F (F first); boundary mismatch throws.
GFunctor functor_compose(const GFunctor& g, const GFunctor& f);

class NatIso {
 public:
  // Validates: F, G parallel; component at x is a morphism F(x) → G(x);
  // naturality squares commute for every morphism of the source.
  NatIso(GFunctor f, GFunctor g, std::vector<Mor> components);

  static NatIso identity_iso(const GFunctor& f);

  const GFunctor& src_functor() const { return f_; }
  const GFunctor& dst_functor() const { return g_; }
  Mor component(Obj x) const { return comp_[x]; }
  const std::vector<Mor>& components() const { return comp_; }

  bool is_identity() const;
  NatIso inverse() const;

  friend bool operator==(const NatIso& a, const NatIso& b) {
    return a.f_ == b.f_ && a.g_ == b.g_ && a.comp_ == b.comp_;
  }

 private:
  GFunctor f_, g_;
  std::vector<Mor> comp_;
};

// β · α : F ⇒ H for α : F ⇒ G, β : G ⇒ H (α first).
NatIso nat_iso_vcompose(const NatIso& beta, const NatIso& alpha);
// Left whiskering H(α) : H∘F ⇒ H∘G for H out of the common codomain.
NatIso whisker(const GFunctor& h, const NatIso& alpha);
// Right whiskering α_H : F∘H ⇒ G∘H for H into the common domain.
NatIso whisker(const NatIso& alpha, const GFunctor& h);

// All natural isomorphisms F ⇒ G, in lexicographic order of their component
// tuples (object 0 first).  Backtracking with incremental naturality pruning.
std::vector<NatIso> enumerate_nat_isos(const GFunctor& f, const GFunctor& g);

// All functors X → Y (use only on small X, Y: exhaustive).  Deterministic
// lexicographic order.
std::vector<GFunctor> enumerate_functors(const Gpd& x, const Gpd& y);
// Only the bijective-on-objects-and-morphisms functors (candidate isos).
std::vector<GFunctor> enumerate_functor_isos(const Gpd& x, const Gpd& y);

struct ProductGpd {
  Gpd gpd;
  GFunctor pl, pr;  // projections
  // pair decoding: object (a, b) has id pair_obj[a][b] etc.
  Obj obj_of(Obj a, Obj b) const { return obj_ids[a * b_objs + b]; }
  Mor mor_of(Mor f, Mor g) const { return mor_ids[f * b_mors + g]; }
  std::pair<Obj, Obj> obj_pair(Obj p) const { return obj_pairs[p]; }
  std::pair<Mor, Mor> mor_pair(Mor m) const { return mor_pairs[m]; }

  int b_objs = 0, b_mors = 0;
  std::vector<Obj> obj_ids;
  std::vector<Mor> mor_ids;
  std::vector<std::pair<Obj, Obj>> obj_pairs;
  std::vector<std::pair<Mor, Mor>> mor_pairs;
};

struct CoproductGpd {
  Gpd gpd;
  GFunctor inl, inr;  // coprojections l̄, r̄
  // tag: 0 = left, 1 = right
  std::pair<int, Obj> obj_case(Obj x) const;
  std::pair<int, Mor> mor_case(Mor m) const;
  int a_objs = 0, a_mors = 0;
};

ProductGpd product(const Gpd& a, const Gpd& b);
CoproductGpd coproduct(const Gpd& a, const Gpd& b);

// A wide subgroupoid: all objects, a subset of morphisms containing the
// identities and closed under composition and inverse.
class WideSubgroupoid {
 public:
  WideSubgroupoid(Gpd ambient, std::vector<bool> member);  // validates

  static WideSubgroupoid identities_only(Gpd ambient);
  static WideSubgroupoid all(Gpd ambient);

  const Gpd& ambient() const { return ambient_; }
  bool contains(Mor m) const { return member_[m]; }
  const std::vector<bool>& members() const { return member_; }

  friend bool operator==(const WideSubgroupoid& a, const WideSubgroupoid& b) {
    return same_gpd(a.ambient_, b.ambient_) && a.member_ == b.member_;
  }

 private:
  Gpd ambient_;
  std::vector<bool> member_;
};

// The subgroupoid as a groupoid in its own right, with the inclusion functor.
struct SubgroupoidInclusion {
  Gpd gpd;
  GFunctor inclusion;
  std::vector<Mor> mor_of_ambient;  // ambient mor id -> sub mor id or -1
};
SubgroupoidInclusion subgroupoid_inclusion(const WideSubgroupoid& w);

// The full subgroupoid of `ambient` on the listed objects (which keep their
// given order), with the inclusion functor.
SubgroupoidInclusion full_subgroupoid(const Gpd& ambient,
                                      const std::vector<Obj>& objects);

}  // namespace thinspan
