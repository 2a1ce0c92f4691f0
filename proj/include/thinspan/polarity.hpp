#pragma once
// Polarized, uniform, and thin groupoids; uniform/thin orthogonality;
// thinness; negative/positive symmetry factorization; positivization of weak
// morphisms; membership certificates against declared generator lists.
//
// Biorthogonal classes are generator-presented: the library never enumerates
// "all prestrategies".  A passing certificate against the generators is the
// artifact's stand-in for membership in the closed class.

#include "thinspan/span.hpp"

namespace thinspan {

class PreconditionError : public GroupoidError {
 public:
  using GroupoidError::GroupoidError;
};

struct PolarizedGroupoid {
  Gpd base;
  WideSubgroupoid negative;  // A_-
  WideSubgroupoid positive;  // A_+

  PolarizedGroupoid(Gpd b, WideSubgroupoid neg, WideSubgroupoid pos)
      : base(std::move(b)), negative(std::move(neg)), positive(std::move(pos)) {
    if (!same_gpd(base, negative.ambient()) || !same_gpd(base, positive.ambient()))
      throw GroupoidError("polarized groupoid subgroupoids must be wide in base");
  }

  // Discrete polarity: both subgroupoids are identities-only (the polarity of
  // ground types like the booleans).
  static PolarizedGroupoid discrete(Gpd b);
};

bool is_positive(Mor theta, const PolarizedGroupoid& a);
bool is_negative(Mor theta, const PolarizedGroupoid& a);

// positive ∩ negative = identities, and every symmetry factors uniquely as
// positive ∘ negative.  Required for ThinGroupoid; checked lazily.
bool check_polarized_axioms(const PolarizedGroupoid& a, std::string* why = nullptr);

struct UniformGroupoid {
  Gpd base;
  std::vector<Prestrategy> generators;     // G, with U_A = G^⊥⊥
  std::vector<Prestrategy> co_generators;  // witness sample of U_A^⊥
};

struct ThinGroupoid {
  PolarizedGroupoid polarized;
  UniformGroupoid uniform;
  std::vector<Prestrategy> thin_generators;     // must contain (A_-, id)
  std::vector<Prestrategy> thin_co_generators;  // must contain (A_+, id)

  const Gpd& base() const { return polarized.base; }

  // Canonical thin groupoid of a ground type: discrete polarity, generator
  // lists {(A_-, id)} / {(A_+, id)} on both levels, plus (A, id) as a uniform
  // generator.
  static ThinGroupoid ground(Gpd b);
  // Canonical generator lists over an arbitrary polarity.
  static ThinGroupoid from_polarity(PolarizedGroupoid p);
};

// Full invariant check: polarized axioms, generator invariants ((A_-, id) and
// (A_+, id) present, pairwise orthogonality, thinness of thin generators).
// Exhaustive, so meant for desk-sized groupoids; returns a failure description.
bool check_thin_groupoid(const ThinGroupoid& a, std::string* why = nullptr);

bool uniformly_orthogonal(const Prestrategy& s, const Prestrategy& t);

// Precondition: uniformly_orthogonal(s, t); violations raise PreconditionError
// (distinct from a false verdict).  True iff the pullback is discrete.
bool thinly_orthogonal(const Prestrategy& s, const Prestrategy& t);

// Thinness via the definition (positive display image forces identity) and
// via discreteness of the pullback against (A_+, id); both are computed and
// must agree (GroupoidError otherwise).
bool is_thin(const Prestrategy& s, const PolarizedGroupoid& a);
bool is_thin_by_definition(const Prestrategy& s, const PolarizedGroupoid& a);
bool is_thin_by_pullback(const Prestrategy& s, const PolarizedGroupoid& a);

// Unique factorization θ = θ_+ ∘ θ_-; exhaustive search, errors if the count
// differs from one (the input then fails the thin-groupoid axioms).
std::pair<Mor, Mor> factor_symmetry(Mor theta, const PolarizedGroupoid& a);

// The polarity of a span 2-cell boundary A ⊸ B: fills are positive when the
// left components are negative in A (positive in A^⊥) and the right
// components are positive in B.
struct SpanPolarity {
  PolarizedGroupoid left, right;
};

struct PositiveWeakMorphism {
  WeakMorphism underlying;
  PositiveWeakMorphism(WeakMorphism w, const SpanPolarity& pol);
};

bool is_positive_2cell(const WeakMorphism& w, const SpanPolarity& pol);

// The unique positive weak morphism isomorphic to F, with the unique
// connecting 2-cell μ : F ⇒ F_+ (a natural iso of support functors with
// φ_+ = ∂(μ) ∘ φ).  Errors when a per-object search finds zero or multiple
// candidates (input outside the theorem's hypotheses).
std::pair<PositiveWeakMorphism, NatIso> positivize(const WeakMorphism& f,
                                                   const SpanPolarity& pol);

struct CertReport {
  bool pass = true;
  std::vector<std::string> failures;
  std::vector<std::string> checked;  // one line per verified pair
  void fail(std::string msg) {
    pass = false;
    failures.push_back(std::move(msg));
  }
};

// Prop. carac_lin conditions against the declared generators:
//   (1) for every generator S of A, T@S is uniformly orthogonal to every
//       co-generator of B;
//   (2) (T, ∂^T_A) is uniformly orthogonal to every generator of A.
CertReport certify_linear_membership(const Span& t, const UniformGroupoid& a,
                                     const UniformGroupoid& b);

// Prop. carac_lin_thin analogue: additionally, for every thin generator S of
// A, T@S is thin over B and thinly orthogonal to every thin co-generator.
CertReport certify_thin_membership(const Span& t, const ThinGroupoid& a,
                                   const ThinGroupoid& b);

// Constructions.  Tensor and par share their base and generator data (pairs
// of generators / pairs of co-generators — a sound presentation for the
// certificate-level orthogonality this artifact checks); dual exchanges the
// two subgroupoids and the generator/co-generator roles; the linear arrow is
// A ⊸ B = A^⊥ ⅋ B.
struct TensorResult {
  ThinGroupoid gpd;
  ProductGpd prod;  // base decode tables
};
ThinGroupoid build_dual(const ThinGroupoid& a);
TensorResult build_tensor(const ThinGroupoid& a, const ThinGroupoid& b);
TensorResult build_par(const ThinGroupoid& a, const ThinGroupoid& b);
TensorResult build_linear_arrow(const ThinGroupoid& a, const ThinGroupoid& b);

// Product of prestrategies (componentwise display into the product base).
Prestrategy prestrategy_product(const Prestrategy& s, const Prestrategy& t,
                                const ProductGpd& ab);

}  // namespace thinspan
