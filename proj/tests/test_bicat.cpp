#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "thinspan/bang.hpp"
#include "thinspan/bicat.hpp"

using namespace thinspan;

namespace {

Gpd point() { return FiniteGroupoid::discrete_gpd(1, {"*"}); }
Gpd booleans() { return FiniteGroupoid::discrete_gpd(2, {"tt", "ff"}); }

// The span B ← B → B with identity left leg and the given object permutation
// on the right.
Span perm_span(const Gpd& b, std::vector<Obj> image) {
  std::vector<Mor> mm(b->morphism_count());
  for (Mor m = 0; m < b->morphism_count(); ++m)
    mm[m] = b->identity(image[b->src(m)]);
  return Span(b, GFunctor::identity_functor(b),
              GFunctor(b, b, std::move(image), std::move(mm)));
}

// A two-point support sitting over a single base point on both sides: the
// smallest span with a nontrivial display-preserving support automorphism.
Span two_point_span(const Gpd& b, Obj at) {
  Gpd sup = FiniteGroupoid::discrete_gpd(2, {"p", "q"});
  GFunctor to_at = GFunctor::constant(sup, b, at);
  return Span(sup, to_at, to_at);
}

// !o at N = 2, with the thin structure and the sub-span on a chosen object
// list of the family groupoid.
struct BangO {
  Gpd o = point();
  FamGpd fo;
  ThinGroupoid thin;
  BangO() : fo(fam(point(), {2})), thin(fam_thin(ThinGroupoid::ground(o), fo)) {}
  Span sub_span(const std::vector<FamObject>& objs) const {
    std::vector<Obj> ids;
    for (const auto& fob : objs) ids.push_back(fo.obj_of(fob));
    SubgroupoidInclusion sub = full_subgroupoid(fo.gpd, ids);
    return Span(sub.gpd, sub.inclusion, sub.inclusion);
  }
};

// Every weak morphism between two spans over a shared boundary, by exhaustive
// search over support functors and fills.
std::string first_fail(const CertReport& r) {
  return r.failures.empty() ? std::string() : r.failures.front();
}

std::vector<WeakMorphism> all_weak_morphisms(const Span& s, const Span& t) {
  std::vector<WeakMorphism> out;
  for (const GFunctor& h : enumerate_functors(s.support, t.support))
    for (const NatIso& fl :
         enumerate_nat_isos(s.left, functor_compose(t.left, h)))
      for (const NatIso& fr :
           enumerate_nat_isos(s.right, functor_compose(t.right, h)))
        out.push_back(WeakMorphism(s, t, h, fl, fr));
  return out;
}

}  // namespace

TEST_CASE("identity homs carry passing certificates") {
  ThinHom idb = identity_hom(ThinGroupoid::ground(booleans()));
  CHECK(idb.certificate.pass);
  CHECK(idb.span.support->object_count() == 2);
  CHECK(idb.span.left.is_identity());

  ThinHom idt = identity_hom(ThinGroupoid::ground(FiniteGroupoid::empty()));
  CHECK(idt.certificate.pass);
  CHECK(idt.span.support->object_count() == 0);

  BangO bo;
  ThinHom idbang = identity_hom(bo.thin);
  CHECK(idbang.certificate.pass);
  CHECK(idbang.span.support->object_count() == bo.fo.gpd->object_count());
}

TEST_CASE("make_thin_hom rejects non-thin spans and mismatched boundaries") {
  ThinGroupoid b = ThinGroupoid::ground(booleans());
  // walking iso collapsed onto one boolean: the support symmetry displays to
  // an identity (positive) without being one
  Gpd wi = FiniteGroupoid::walking_iso();
  GFunctor collapse = GFunctor::constant(wi, booleans(), 0);
  CHECK_THROWS_AS(make_thin_hom(b, b, Span(wi, collapse, collapse)),
                  GroupoidError);
  // boundary mismatch
  CHECK_THROWS_AS(
      make_thin_hom(ThinGroupoid::ground(point()), b,
                    Span::identity_span(booleans())),
      GroupoidError);
}

TEST_CASE("composition with the identity is trivialized by the unitors") {
  ThinGroupoid b = ThinGroupoid::ground(booleans());
  ThinHom s = make_thin_hom(b, b, perm_span(booleans(), {1, 0}));
  ThinHom comp_l = hcompose(s, identity_hom(b));
  ThinHom comp_r = hcompose(identity_hom(b), s);
  CHECK(comp_l.certificate.pass);
  CHECK(comp_r.certificate.pass);

  CoherenceCell lam = unitor_left(s.span, booleans());
  CHECK(lam.kind == CellKind::unitor_left);
  CHECK(same_gpd(lam.data.src.support, comp_l.span.support));
  CHECK(weak_morphism_equal(lam.data, lam.data));
  CHECK(is_strong(lam.data));
  CHECK(is_invertible(lam.data));
  // invert and cancel
  WeakMorphism round =
      weak_morphism_vcompose(lam.data, weak_morphism_inverse(lam.data));
  CHECK(weak_morphism_equal(round, WeakMorphism::identity(s.span)));

  CoherenceCell rho = unitor_right(s.span, booleans());
  CHECK(rho.kind == CellKind::unitor_right);
  CHECK(same_gpd(rho.data.src.support, comp_r.span.support));

  // on the identity span the two unitors are the same cell
  Span idsp = Span::identity_span(booleans());
  CHECK(weak_morphism_equal(unitor_left(idsp, booleans()).data,
                            unitor_right(idsp, booleans()).data));
}

TEST_CASE("unitors on the dereliction span") {
  BangO bo;
  LiftedSpan der = dereliction(ThinGroupoid::ground(bo.o), bo.fo);
  CHECK(der.cert.pass);
  CoherenceCell lam = unitor_left(der.span, der.span.right_base());
  CoherenceCell rho = unitor_right(der.span, der.span.left_base());
  CHECK(is_invertible(lam.data));
  CHECK(is_invertible(rho.data));
  CHECK(weak_morphism_equal(
      weak_morphism_vcompose(lam.data, weak_morphism_inverse(lam.data)),
      WeakMorphism::identity(der.span)));
}

TEST_CASE("associator on an all-identity triple and the triangle law") {
  Gpd b = booleans();
  Span idsp = Span::identity_span(b);
  CoherenceCell al = associator(idsp, idsp, idsp);
  CHECK(al.kind == CellKind::associator);
  CHECK(is_strong(al.data));
  CHECK(is_invertible(al.data));

  // triangle: ρ_T whiskered with S equals λ_S whiskered with T after the
  // associator, for a non-identity S
  Span s = perm_span(b, {1, 0});
  Span t = two_point_span(b, 0);
  WeakMorphism lhs = whisker_outer(s, unitor_right(t, b).data);
  WeakMorphism rhs = weak_morphism_vcompose(
      whisker_inner(unitor_left(s, b).data, t),
      associator(s, idsp, t).data);
  CHECK(weak_morphism_equal(lhs, rhs));
}

TEST_CASE("horizontal composition of identity 2-cells is the identity") {
  Gpd b = booleans();
  PolarizedGroupoid pb = PolarizedGroupoid::discrete(b);
  SpanPolarity pol{pb, pb};
  Span s = perm_span(b, {1, 0});
  Span t = perm_span(b, {1, 0});
  PositiveWeakMorphism ids(WeakMorphism::identity(s), pol);
  PositiveWeakMorphism idt(WeakMorphism::identity(t), pol);
  PositiveWeakMorphism h = hcompose_2cells(ids, idt, pol, pol);
  CHECK(weak_morphism_equal(h.underlying,
                            WeakMorphism::identity(compose_spans(s, t).span)));
}

TEST_CASE("horizontal composition matches the exhaustive positive oracle") {
  BangO bo;
  SpanPolarity pol{bo.thin.polarized, bo.thin.polarized};
  // singleton families: every positive cell between the composites must fix
  // the support pointwise, so the positive weak morphism is globally unique
  // and brute force finds exactly it
  Span s = bo.sub_span({fam_obj({}), fam_obj({{0, 0}}), fam_obj({{1, 0}})});
  CHECK(certify_thin_membership(s, bo.thin, bo.thin).pass);
  PositiveWeakMorphism ids(WeakMorphism::identity(s), pol);
  PositiveWeakMorphism h = hcompose_2cells(ids, ids, pol, pol);

  Span c = compose_spans(s, s).span;
  std::vector<WeakMorphism> positives;
  for (const WeakMorphism& w : all_weak_morphisms(c, c))
    if (is_positive_2cell(w, pol)) positives.push_back(w);
  REQUIRE(positives.size() == 1);
  CHECK(weak_morphism_equal(h.underlying, positives.front()));
}

TEST_CASE("a non-identity positive 2-cell composes and squares to the identity") {
  BangO bo;
  SpanPolarity pol{bo.thin.polarized, bo.thin.polarized};
  Span s = bo.sub_span({fam_obj({}), fam_obj({{0, 0}, {1, 0}})});
  // the support has the swap symmetry at [0·*,1·*]; filling the left display
  // with it gives a positive non-identity cell S ⇒ S
  Obj pair_obj = 1;  // second listed object of the sub-span support
  Mor swap = -1;
  for (Mor m : s.support->hom(pair_obj, pair_obj))
    if (!s.support->is_identity(m)) swap = m;
  REQUIRE(swap >= 0);
  std::vector<Mor> fl(s.support->object_count());
  for (Obj x = 0; x < s.support->object_count(); ++x)
    fl[x] = x == pair_obj ? s.left.on_mor(swap)
                          : s.left.dst()->identity(s.left.on_obj(x));
  WeakMorphism w(s, s, GFunctor::identity_functor(s.support),
                 NatIso(s.left, s.left, fl), NatIso::identity_iso(s.right));
  REQUIRE(is_positive_2cell(w, pol));
  REQUIRE(!weak_morphism_equal(w, WeakMorphism::identity(s)));
  PositiveWeakMorphism pw(w, pol);
  PositiveWeakMorphism ids(WeakMorphism::identity(s), pol);

  PositiveWeakMorphism hw = hcompose_2cells(ids, pw, pol, pol);
  CHECK(is_positive_2cell(hw.underlying, pol));
  // w ∘ w = id, so by functoriality the composite squares to the identity
  PositiveWeakMorphism hw2(
      weak_morphism_vcompose(hw.underlying, hw.underlying), pol);
  PositiveWeakMorphism hid = hcompose_2cells(ids, ids, pol, pol);
  CHECK(weak_morphism_equal(hw2.underlying, hid.underlying));
}

TEST_CASE("bicategory laws on discrete spans with small supports") {
  Gpd b = booleans();
  ThinGroupoid tb = ThinGroupoid::ground(b);
  // every span over (B, B) with a discrete support of at most two objects
  std::vector<Span> small;
  small.push_back(Span(FiniteGroupoid::empty(),
                       GFunctor(FiniteGroupoid::empty(), b, {}, {}),
                       GFunctor(FiniteGroupoid::empty(), b, {}, {})));
  Gpd one = point();
  for (Obj l = 0; l < 2; ++l)
    for (Obj r = 0; r < 2; ++r)
      small.push_back(Span(one, GFunctor::constant(one, b, l),
                           GFunctor::constant(one, b, r)));
  Gpd two = FiniteGroupoid::discrete_gpd(2, {"p", "q"});
  for (Obj l0 = 0; l0 < 2; ++l0)
    for (Obj l1 = 0; l1 < 2; ++l1)
      for (Obj r0 = 0; r0 < 2; ++r0)
        for (Obj r1 = 0; r1 < 2; ++r1) {
          std::vector<Mor> lm{b->identity(l0), b->identity(l1)};
          std::vector<Mor> rm{b->identity(r0), b->identity(r1)};
          small.push_back(Span(two, GFunctor(two, b, {l0, l1}, lm),
                               GFunctor(two, b, {r0, r1}, rm)));
        }
  REQUIRE(small.size() == 21);

  ThinHom t = make_thin_hom(tb, tb, perm_span(b, {1, 0}));
  ThinHom u = identity_hom(tb);
  ThinHom v = make_thin_hom(tb, tb, two_point_span(b, 1));
  std::vector<BicatInstance> instances;
  for (const Span& sp : small)
    instances.push_back(
        {tb, tb, tb, tb, tb, make_thin_hom(tb, tb, sp), t, u, v});
  CertReport rep = verify_bicategory_laws(instances);
  CHECK_MESSAGE(rep.pass, first_fail(rep));
  CHECK(rep.checked.size() == instances.size() * 5);
}

TEST_CASE("bicategory laws on the copycat family over !o") {
  BangO bo;
  ThinHom cc = identity_hom(bo.thin);
  ThinHom single = make_thin_hom(
      bo.thin, bo.thin,
      bo.sub_span({fam_obj({}), fam_obj({{0, 0}}), fam_obj({{1, 0}})}));
  ThinHom pair = make_thin_hom(
      bo.thin, bo.thin, bo.sub_span({fam_obj({}), fam_obj({{0, 0}, {1, 0}})}));
  std::vector<BicatInstance> instances = {
      {bo.thin, bo.thin, bo.thin, bo.thin, bo.thin, cc, cc, cc, cc},
      {bo.thin, bo.thin, bo.thin, bo.thin, bo.thin, single, cc, pair, single},
      {bo.thin, bo.thin, bo.thin, bo.thin, bo.thin, pair, pair, cc, cc},
  };
  CertReport rep = verify_bicategory_laws(instances);
  CHECK_MESSAGE(rep.pass, first_fail(rep));
}

TEST_CASE("the empty instance list passes vacuously") {
  CertReport rep = verify_bicategory_laws({});
  CHECK(rep.pass);
  REQUIRE(rep.checked.size() == 1);
  CHECK(rep.checked.front().find("vacuous") != std::string::npos);
}

TEST_CASE("naturality of the unitors against a display-preserving swap") {
  Gpd b = booleans();
  Span s = two_point_span(b, 0);
  // the swap of the two support points preserves both displays
  GFunctor swap(s.support, s.support, {1, 0},
                {s.support->identity(1), s.support->identity(0)});
  WeakMorphism w = WeakMorphism::strong(s, s, swap);
  Span idb = Span::identity_span(b);
  WeakMorphism lam = unitor_left(s, b).data;
  CHECK(weak_morphism_equal(
      weak_morphism_vcompose(w, lam),
      weak_morphism_vcompose(lam, whisker_inner(w, idb))));
  WeakMorphism rho = unitor_right(s, b).data;
  CHECK(weak_morphism_equal(
      weak_morphism_vcompose(w, rho),
      weak_morphism_vcompose(rho, whisker_outer(idb, w))));
}
