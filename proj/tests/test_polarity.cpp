#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <tuple>

#include "thinspan/polarity.hpp"

using namespace thinspan;

namespace {

// Hand-rolled Fam(o) with copy indices {0,..,n-1}: objects are subsets of the
// index set (object id = bitmask), morphisms are bijections between equal-size
// subsets.  Same oracle construction as in the span tests, parametric in n.
struct FamO {
  int n = 0;
  Gpd g;
  std::vector<std::tuple<int, int, std::vector<int>>> mors;
  std::map<std::tuple<int, int, std::vector<int>>, Mor> ids;
  Mor mor(int sm, int dm, std::vector<int> perm) const {
    return ids.at({sm, dm, perm});
  }
};

std::vector<int> mask_elems(int m, int n) {
  std::vector<int> out;
  for (int i = 0; i < n; ++i)
    if (m & (1 << i)) out.push_back(i);
  return out;
}

FamO make_famo(int n) {
  FamO fam;
  fam.n = n;
  GroupoidBuilder bld;
  int nmask = 1 << n;
  for (int m = 0; m < nmask; ++m) bld.add_object("mask" + std::to_string(m));
  for (int sm = 0; sm < nmask; ++sm)
    for (int dm = 0; dm < nmask; ++dm) {
      auto se = mask_elems(sm, n), de = mask_elems(dm, n);
      if (se.size() != de.size()) continue;
      std::vector<int> perm = de;
      std::sort(perm.begin(), perm.end());
      do {
        Mor mor = bld.add_morphism(sm, dm);
        fam.mors.push_back({sm, dm, perm});
        fam.ids[{sm, dm, perm}] = mor;
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
  for (int m = 0; m < nmask; ++m)
    bld.set_identity(m, fam.mor(m, m, mask_elems(m, n)));
  for (size_t i = 0; i < fam.mors.size(); ++i)
    for (size_t j = 0; j < fam.mors.size(); ++j) {
      auto& [s1, d1, p1] = fam.mors[i];
      auto& [s2, d2, p2] = fam.mors[j];
      if (d1 != s2) continue;
      auto s2e = mask_elems(s2, n);
      std::vector<int> comp(p1.size());
      for (size_t k = 0; k < p1.size(); ++k) {
        size_t pos = std::find(s2e.begin(), s2e.end(), p1[k]) - s2e.begin();
        comp[k] = p2[pos];
      }
      bld.set_compose(static_cast<Mor>(j), static_cast<Mor>(i),
                      fam.mor(s1, d2, comp));
    }
  fam.g = bld.build();
  return fam;
}

// !o as a thin groupoid: o is discrete, so every Fam symmetry is a pure
// reindexing (negative) and the identity-reindexing symmetries are exactly
// the identities (positive).
ThinGroupoid make_thin_bang_o(const FamO& fam) {
  PolarizedGroupoid pol(fam.g, WideSubgroupoid::all(fam.g),
                        WideSubgroupoid::identities_only(fam.g));
  return ThinGroupoid::from_polarity(pol);
}

// Z2 with every morphism positive: a lawful polarity (unique factorization
// id-then-theta) whose identity prestrategy is not thin.
ThinGroupoid make_all_positive_z2() {
  Gpd z2 = FiniteGroupoid::cyclic(2);
  PolarizedGroupoid pol(z2, WideSubgroupoid::identities_only(z2),
                        WideSubgroupoid::all(z2));
  return ThinGroupoid::from_polarity(pol);
}

Prestrategy point_into(const Gpd& base, Obj x) {
  return Prestrategy(FiniteGroupoid::terminal(),
                     GFunctor::constant(FiniteGroupoid::terminal(), base, x));
}

}  // namespace

TEST_CASE("polarity membership: identities, the !o index swap, and its dual") {
  auto fam = make_famo(2);
  auto bang_o = make_thin_bang_o(fam);
  Mor swap = fam.mor(3, 3, {1, 0});
  CHECK(is_negative(fam.g->identity(3), bang_o.polarized));
  CHECK(is_positive(fam.g->identity(3), bang_o.polarized));
  CHECK(is_negative(swap, bang_o.polarized));
  CHECK_FALSE(is_positive(swap, bang_o.polarized));
  auto dual = build_dual(bang_o);
  CHECK(is_positive(swap, dual.polarized));
  CHECK_FALSE(is_negative(swap, dual.polarized));
}

TEST_CASE("polarized axioms: lawful and unlawful splittings") {
  auto fam = make_famo(2);
  std::string why;
  CHECK(check_polarized_axioms(make_thin_bang_o(fam).polarized, &why));
  CHECK(check_polarized_axioms(make_all_positive_z2().polarized, &why));
  // both subgroupoids all of Z2: the swap is doubly polarized and factors twice
  Gpd z2 = FiniteGroupoid::cyclic(2);
  PolarizedGroupoid bad(z2, WideSubgroupoid::all(z2), WideSubgroupoid::all(z2));
  CHECK_FALSE(check_polarized_axioms(bad, &why));
  CHECK_FALSE(why.empty());
}

TEST_CASE("uniformly_orthogonal: identity vs anything, discrete base, Z2 points") {
  Gpd z2 = FiniteGroupoid::cyclic(2);
  Prestrategy whole(z2, GFunctor::identity_functor(z2));
  Prestrategy pt = point_into(z2, 0);
  CHECK(uniformly_orthogonal(whole, pt));
  CHECK(uniformly_orthogonal(pt, whole));
  CHECK_FALSE(uniformly_orthogonal(pt, pt));

  Gpd d3 = FiniteGroupoid::discrete_gpd(3);
  CHECK(uniformly_orthogonal(point_into(d3, 1), point_into(d3, 1)));
  CHECK(uniformly_orthogonal(point_into(d3, 0), point_into(d3, 2)));

  CHECK_THROWS_AS(uniformly_orthogonal(pt, point_into(d3, 0)), GroupoidError);
}

TEST_CASE("thinly_orthogonal: canonical pair, discrete base, copycat on !o") {
  auto fam = make_famo(2);
  auto bang_o = make_thin_bang_o(fam);
  // (A_-, id) against (A_+, id): pullback forces the reindexing to be trivial
  CHECK(thinly_orthogonal(bang_o.thin_generators[0],
                          bang_o.thin_co_generators[0]));

  Gpd d2 = FiniteGroupoid::discrete_gpd(2);
  CHECK(thinly_orthogonal(point_into(d2, 0), point_into(d2, 0)));

  // copycat against copycat on !o: pullback ≅ !o still has the swap
  Prestrategy cc(fam.g, GFunctor::identity_functor(fam.g));
  CHECK_FALSE(thinly_orthogonal(cc, cc));

  // precondition violations are a distinct signal, not a false verdict
  Gpd z2 = FiniteGroupoid::cyclic(2);
  Prestrategy pt = point_into(z2, 0);
  CHECK_THROWS_AS(thinly_orthogonal(pt, pt), PreconditionError);
}

TEST_CASE("is_thin: discrete support, copycat on !o ⊸ !o, all-positive Z2") {
  Gpd z2 = FiniteGroupoid::cyclic(2);
  PolarizedGroupoid z2pol = make_all_positive_z2().polarized;
  CHECK(is_thin(point_into(z2, 0), z2pol));
  CHECK_FALSE(is_thin(Prestrategy(z2, GFunctor::identity_functor(z2)), z2pol));
  CHECK(is_thin_by_definition(point_into(z2, 0), z2pol));
  CHECK(is_thin_by_pullback(point_into(z2, 0), z2pol));

  auto fam = make_famo(2);
  auto bang_o = make_thin_bang_o(fam);
  auto arrow = build_linear_arrow(bang_o, bang_o);
  // copycat: support !o displayed diagonally; θ⊸θ positive forces θ = id
  std::vector<Obj> om(fam.g->object_count());
  std::vector<Mor> mm(fam.g->morphism_count());
  for (Obj x = 0; x < fam.g->object_count(); ++x)
    om[x] = arrow.prod.obj_of(x, x);
  for (Mor m = 0; m < fam.g->morphism_count(); ++m)
    mm[m] = arrow.prod.mor_of(m, m);
  Prestrategy cc(fam.g, GFunctor(fam.g, arrow.prod.gpd, om, mm));
  CHECK(is_thin(cc, arrow.gpd.polarized));
  // !o itself, all symmetries negative: copycat over !o alone is thin too
  CHECK(is_thin(Prestrategy(fam.g, GFunctor::identity_functor(fam.g)),
                bang_o.polarized));
}

TEST_CASE("factor_symmetry: identity, !o, and the arrow componentwise") {
  auto fam = make_famo(2);
  auto bang_o = make_thin_bang_o(fam);
  Mor id3 = fam.g->identity(3);
  CHECK(factor_symmetry(id3, bang_o.polarized) == std::make_pair(id3, id3));
  // in !o every θ factors as (θ, id): all Fam symmetries are negative
  for (Mor m = 0; m < fam.g->morphism_count(); ++m) {
    auto [tm, tp] = factor_symmetry(m, bang_o.polarized);
    CHECK(tm == m);
    CHECK(fam.g->is_identity(tp));
  }
  // in !o ⊸ !o the factorization is componentwise: θ⊸θ′ = (θ⊸id) ∘ (id⊸θ′)
  auto arrow = build_linear_arrow(bang_o, bang_o);
  Mor swap = fam.mor(3, 3, {1, 0});
  Mor theta = arrow.prod.mor_of(swap, fam.mor(1, 2, {1}));
  auto [tm, tp] = factor_symmetry(theta, arrow.gpd.polarized);
  CHECK(tm == arrow.prod.mor_of(fam.g->identity(3), fam.mor(1, 2, {1})));
  CHECK(tp == arrow.prod.mor_of(swap, fam.g->identity(2)));
  // bijection: every morphism has exactly one factorization (no throw), and
  // distinct morphisms get distinct pairs
  std::map<std::pair<Mor, Mor>, int> seen;
  for (Mor m = 0; m < arrow.prod.gpd->morphism_count(); ++m)
    ++seen[factor_symmetry(m, arrow.gpd.polarized)];
  CHECK(static_cast<int>(seen.size()) == arrow.prod.gpd->morphism_count());
}

TEST_CASE("positivize: the discrete-vs-copycat example on !o ⊸ !o") {
  auto fam = make_famo(2);
  auto bang_o = make_thin_bang_o(fam);
  SpanPolarity pol{bang_o.polarized, bang_o.polarized};
  // S′ = copycat: support !o, both displays the identity
  Span cc(fam.g, GFunctor::identity_functor(fam.g),
          GFunctor::identity_functor(fam.g));
  // S = single point at [1] ⊸ [1]  (mask 2 on both sides)
  Gpd one = FiniteGroupoid::terminal();
  Span s(one, GFunctor::constant(one, fam.g, 2), GFunctor::constant(one, fam.g, 2));
  // F sends the point to [0] ⊸ [0] with both fills the relabelling {1} → {0}
  Mor relabel = fam.mor(2, 1, {0});
  GFunctor f(one, fam.g, {1}, {fam.g->identity(1)});
  WeakMorphism w(s, cc, f, NatIso(s.left, functor_compose(cc.left, f), {relabel}),
                 NatIso(s.right, functor_compose(cc.right, f), {relabel}));
  CHECK_FALSE(is_positive_2cell(w, pol));

  auto [wp, mu] = positivize(w, pol);
  CHECK(wp.underlying.support_functor.on_obj(0) == 2);  // back at [1] ⊸ [1]
  CHECK(is_strong(wp.underlying));                      // identity fills
  CHECK(mu.component(0) == fam.mor(1, 2, {1}));         // relabel⁻¹ in S′
  CHECK(mu.component(0) == fam.g->inverse(relabel));

  // oracle: exhaustively count the positive weak morphisms isomorphic to F
  int count = 0;
  for (const auto& g : enumerate_functors(one, fam.g)) {
    for (const auto& fl : enumerate_nat_isos(s.left, functor_compose(cc.left, g)))
      for (const auto& fr :
           enumerate_nat_isos(s.right, functor_compose(cc.right, g))) {
        WeakMorphism cand(s, cc, g, fl, fr);
        if (!is_positive_2cell(cand, pol)) continue;
        // connected to F by some support-level 2-cell with matching fills
        for (const auto& nu : enumerate_nat_isos(f, g))
          if (fam.g->compose(nu.component(0), relabel) == fl.component(0) &&
              fam.g->compose(nu.component(0), relabel) == fr.component(0))
            ++count;
      }
  }
  CHECK(count == 1);

  // idempotence and triviality on positive inputs
  auto [wp2, mu2] = positivize(wp.underlying, pol);
  CHECK(weak_morphism_equal(wp2.underlying, wp.underlying));
  CHECK(mu2.is_identity());
  auto strong = WeakMorphism::identity(cc);
  auto [sp, smu] = positivize(strong, pol);
  CHECK(weak_morphism_equal(sp.underlying, strong));
  CHECK(smu.is_identity());
}

TEST_CASE("linear membership certificates: identity, composition, Z2 failure") {
  auto fam = make_famo(2);
  auto bang_o = make_thin_bang_o(fam);
  Span id_span = Span::identity_span(fam.g);
  auto rep = certify_linear_membership(id_span, bang_o.uniform, bang_o.uniform);
  CHECK(rep.pass);
  CHECK(rep.failures.empty());
  CHECK_FALSE(rep.checked.empty());

  auto comp = compose_spans(id_span, id_span);
  CHECK(certify_linear_membership(comp.span, bang_o.uniform, bang_o.uniform).pass);

  // the Z2 point-span fails condition (2) against the point generator
  Gpd z2 = FiniteGroupoid::cyclic(2);
  Gpd one = FiniteGroupoid::terminal();
  UniformGroupoid a{z2, {point_into(z2, 0)},
                    {Prestrategy(z2, GFunctor::identity_functor(z2))}};
  UniformGroupoid b{one, {Prestrategy(one, GFunctor::identity_functor(one))},
                    {Prestrategy(one, GFunctor::identity_functor(one))}};
  Span t(one, GFunctor::constant(one, z2, 0), GFunctor::identity_functor(one));
  auto bad = certify_linear_membership(t, a, b);
  CHECK_FALSE(bad.pass);
  REQUIRE_FALSE(bad.failures.empty());
  CHECK(bad.failures.front().find("condition (2)") != std::string::npos);
}

TEST_CASE("thin membership certificates: identity, dereliction, non-thin span") {
  auto fam = make_famo(2);
  auto bang_o = make_thin_bang_o(fam);
  CHECK(certify_thin_membership(Span::identity_span(fam.g), bang_o, bang_o).pass);

  // dereliction !o ⊸ o: two points [0] and [1], each sent to the single move
  Gpd o = FiniteGroupoid::terminal();
  ThinGroupoid thin_o = ThinGroupoid::ground(o);
  Gpd d2 = FiniteGroupoid::discrete_gpd(2);
  GFunctor left(d2, fam.g, {1, 2}, {fam.g->identity(1), fam.g->identity(2)});
  Span der(d2, left, GFunctor::constant(d2, o, 0));
  CHECK(certify_thin_membership(der, bang_o, thin_o).pass);

  // Z2 displayed identically into the all-positive Z2 is not thin
  ThinGroupoid z2pos = make_all_positive_z2();
  ThinGroupoid unit = ThinGroupoid::ground(o);
  Span t(z2pos.base(), GFunctor::constant(z2pos.base(), o, 0),
         GFunctor::identity_functor(z2pos.base()));
  auto rep = certify_thin_membership(t, unit, z2pos);
  CHECK_FALSE(rep.pass);
}

TEST_CASE("thin-groupoid invariant check accepts the constructions") {
  auto fam = make_famo(2);
  auto bang_o = make_thin_bang_o(fam);
  std::string why;
  CHECK(check_thin_groupoid(ThinGroupoid::ground(FiniteGroupoid::discrete_gpd(2)),
                            &why));
  CHECK(check_thin_groupoid(bang_o, &why));
  CHECK(check_thin_groupoid(build_dual(bang_o), &why));
  CHECK(check_thin_groupoid(build_linear_arrow(bang_o, bang_o).gpd, &why));
  CHECK(check_thin_groupoid(make_all_positive_z2(), &why));
}

TEST_CASE("dual is an involution and satisfies De Morgan duality") {
  auto fam = make_famo(2);
  auto a = make_thin_bang_o(fam);
  auto b = ThinGroupoid::ground(FiniteGroupoid::discrete_gpd(2));
  auto dd = build_dual(build_dual(a));
  CHECK(dd.polarized.negative == a.polarized.negative);
  CHECK(dd.polarized.positive == a.polarized.positive);
  CHECK(dd.thin_generators.size() == a.thin_generators.size());

  auto lhs = build_dual(build_tensor(a, b).gpd);
  auto rhs = build_par(build_dual(a), build_dual(b)).gpd;
  CHECK(lhs.polarized.base->structurally_equal(*rhs.polarized.base));
  CHECK(lhs.polarized.negative.members() == rhs.polarized.negative.members());
  CHECK(lhs.polarized.positive.members() == rhs.polarized.positive.members());
}

TEST_CASE("!o ⊸ !o polarity is perm⊸id positive, id⊸perm negative") {
  auto fam = make_famo(2);
  auto bang_o = make_thin_bang_o(fam);
  auto arrow = build_linear_arrow(bang_o, bang_o);
  Mor swap = fam.mor(3, 3, {1, 0});
  Mor id3 = fam.g->identity(3);
  CHECK(is_positive(arrow.prod.mor_of(swap, id3), arrow.gpd.polarized));
  CHECK_FALSE(is_negative(arrow.prod.mor_of(swap, id3), arrow.gpd.polarized));
  CHECK(is_negative(arrow.prod.mor_of(id3, swap), arrow.gpd.polarized));
  CHECK_FALSE(is_positive(arrow.prod.mor_of(id3, swap), arrow.gpd.polarized));
}

TEST_CASE("every doubly polarized symmetry of a thin groupoid is an identity") {
  auto fam = make_famo(2);
  auto arrow = build_linear_arrow(make_thin_bang_o(fam), make_thin_bang_o(fam));
  const auto& g = *arrow.gpd.polarized.base;
  for (Mor m = 0; m < g.morphism_count(); ++m)
    if (is_positive(m, arrow.gpd.polarized) && is_negative(m, arrow.gpd.polarized))
      CHECK(g.is_identity(m));
}
