#pragma once
// Families indexed by finite subsets of {0..N−1}: the truncated Fam
// construction, materialized either in full or as the full subgroupoid on a
// chosen list of family objects ("fragment").  Fragments are how the higher
// iterates Fam(Fam(...)) stay tractable: every predicate downstream quantifies
// only over the objects actually listed, and full subgroupoids preserve all
// homs between them, so in-range computations are exact.

#include <map>
#include <tuple>

#include "thinspan/gpd.hpp"

namespace thinspan {

struct TruncationConfig {
  int max_index = 4;  // index universe {0..max_index-1}
};

// A family object (a_i)_{i∈I}: entries sorted by index, one per element of I.
struct FamObject {
  std::vector<std::pair<int, Obj>> entries;

  int size() const { return static_cast<int>(entries.size()); }
  std::vector<int> indices() const {
    std::vector<int> out;
    for (auto& [i, a] : entries) out.push_back(i);
    return out;
  }
  friend bool operator<(const FamObject& a, const FamObject& b) {
    return a.entries < b.entries;
  }
  friend bool operator==(const FamObject& a, const FamObject& b) {
    return a.entries == b.entries;
  }
};

// Convenience literal: fam_obj({{0, a}, {2, b}}) = [0·a, 2·b]; sorts and
// rejects duplicate indices.
FamObject fam_obj(std::vector<std::pair<int, Obj>> entries);

// A family morphism (π, (f_k)) between decoded objects: pi[k] is the position
// (in the target's sorted entry list) assigned to the k-th source entry, and
// comps[k] : a_k → b_{pi[k]} is the component in the base.
struct FamMorData {
  std::vector<int> pi;
  std::vector<Mor> comps;
};

// A materialized fragment of Fam(A): the full subgroupoid of the (conceptual)
// truncated family groupoid on the listed objects.  When the list is all
// family objects, this is Fam(A, N) itself.
struct FamGpd {
  Gpd base;  // A
  Gpd gpd;   // the fragment, a groupoid in its own right
  int max_index = 0;
  std::vector<FamObject> objects;  // decode, in object-id order
  std::vector<FamMorData> mor_data;

  Obj obj_of(const FamObject& x) const;  // -1 when not in the fragment
  // -1 when absent (including: either endpoint not in the fragment)
  Mor mor_of(Obj s, Obj d, const std::vector<int>& pi,
             const std::vector<Mor>& comps) const;
  const FamObject& obj_at(Obj x) const { return objects[x]; }
  const FamMorData& mor_at(Mor m) const { return mor_data[m]; }

  std::map<FamObject, Obj> obj_ids;
  std::map<std::tuple<Obj, Obj, std::vector<int>, std::vector<Mor>>, Mor> mor_ids;
};

// Every family object over `a` with index set ⊆ {0..max_index−1}, ordered by
// (index set, entries) lexicographically.
std::vector<FamObject> all_family_objects(const Gpd& a, int max_index);

// The fragment on the given objects: all family morphisms between listed
// objects (bijection × componentwise base morphisms), composition
// componentwise along composed bijections.
FamGpd fam_fragment(Gpd a, int max_index, std::vector<FamObject> objects);

// The whole truncated family groupoid.
FamGpd fam(const Gpd& a, const TruncationConfig& cfg);

// Functorial image Fam(F) : fragment over A → fragment over B, defined by
// applying F to every entry and component.  Errors if an image object or
// morphism is missing from the target fragment.
GFunctor fam_on(const GFunctor& f, const FamGpd& src, const FamGpd& dst);

}  // namespace thinspan
