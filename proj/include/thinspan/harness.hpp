#pragma once
// Randomized property-test harness: generators for small groupoids (disjoint
// unions of group-action blocks: trivial, Z2, Z3), polarized/thin structure,
// cospans, spans, and weak morphisms, plus lemma-keyed suites with JSON
// counterexample bundles.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "thinspan/bicat.hpp"

namespace thinspan {

struct GenConfig {
  int max_objects = 5;
  int max_hom_size = 3;
  std::uint64_t seed = 1;
  int instance_count = 100;
};

using Rng = std::mt19937_64;

// A generated groupoid with its block structure retained, so functors can be
// generated blockwise (a group homomorphism Z_n → Z_k plus base paths).
struct GenGroupoid {
  Gpd gpd;
  struct Block {
    int order;                // vertex group Z_order
    std::vector<Obj> objects;
  };
  std::vector<Block> blocks;
  std::vector<int> owner;  // block index per object
  std::map<std::tuple<Obj, Obj, int>, Mor> morid;
  // morphism id of (a, b, g) for a, b in the same block with group element g
  Mor mor_id(Obj a, Obj b, int g) const { return morid.at({a, b, g}); }
};

GenGroupoid gen_groupoid(Rng& rng, const GenConfig& cfg);

// Blockwise random functor a → b (b must be non-empty).
GFunctor gen_functor(Rng& rng, const GenGroupoid& a, const GenGroupoid& b);

Cospan gen_cospan(Rng& rng, const GenConfig& cfg);

// Per-block polarization: either all morphisms negative (identities positive)
// or the dual; always satisfies the polarized-groupoid axioms.
PolarizedGroupoid gen_polarized(Rng& rng, const GenGroupoid& g);

// A composable pair of spans S : A ⊸ B, T : B ⊸ C over generated thin
// groupoids, with thinness of S, T, and T⊙S recorded.
struct ThinInstance {
  ThinGroupoid a, b, c;
  Span s, t;
  bool s_thin = false, t_thin = false, composite_thin = false;
};
ThinInstance gen_thin_instance(Rng& rng, const GenConfig& cfg);

// A weak endomorphism of a generated span over (A, B): a bijective support
// functor with enumerated display fills.  Empty when the generated span
// admits none beyond what the budget finds.
struct GenWeakMorphism {
  ThinGroupoid a, b;
  Span span;
  WeakMorphism w;
};
std::optional<GenWeakMorphism> gen_weak_morphism(Rng& rng, const GenConfig& cfg);

struct SuiteResult {
  std::string name;
  int instances = 0;  // generated
  int checked = 0;    // non-vacuous (hypotheses held)
  int failed = 0;
  bool pass = true;
  std::vector<nlohmann::json> failures;  // self-contained repro bundles
};

// Suites: carac_pb_bipb, rect_pasting, three_tiles, unique_positive,
// positivization, pcc.  Unknown names raise GroupoidError.
SuiteResult run_suite(const std::string& name, const GenConfig& cfg);
std::vector<std::string> suite_names();

nlohmann::json suite_result_to_json(const SuiteResult& r);

}  // namespace thinspan
