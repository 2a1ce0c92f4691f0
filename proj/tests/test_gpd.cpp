#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "thinspan/gpd.hpp"
#include "thinspan/json_io.hpp"

using namespace thinspan;

TEST_CASE("validate: Z2 is a valid groupoid") {
  Gpd z2 = FiniteGroupoid::cyclic(2);
  CHECK(z2->object_count() == 1);
  CHECK(z2->morphism_count() == 2);
  CHECK(z2->compose(1, 1) == 0);
  CHECK(z2->inverse(1) == 1);
}

TEST_CASE("validate: walking iso is valid") {
  Gpd wi = FiniteGroupoid::walking_iso();
  CHECK(wi->object_count() == 2);
  CHECK(wi->morphism_count() == 4);
  CHECK(wi->compose(3, 2) == wi->identity(0));
  CHECK(wi->compose(2, 3) == wi->identity(1));
}

TEST_CASE("validate: idempotent non-identity rejected (no inverse)") {
  // one object, morphisms {id, g}, g∘g = g
  RawGroupoid raw;
  raw.num_objects = 1;
  raw.morphisms = {{0, 0}, {0, 0}};
  raw.identities = {0};
  raw.compose = {{{0, 0}, 0}, {{0, 1}, 1}, {{1, 0}, 1}, {{1, 1}, 1}};
  CHECK_THROWS_AS(FiniteGroupoid::validate(raw), GroupoidError);
}

TEST_CASE("validate: missing composite rejected") {
  RawGroupoid raw;
  raw.num_objects = 1;
  raw.morphisms = {{0, 0}, {0, 0}};
  raw.identities = {0};
  raw.compose = {{{0, 0}, 0}, {{0, 1}, 1}, {{1, 0}, 1}};  // (1,1) missing
  CHECK_THROWS_AS(FiniteGroupoid::validate(raw), GroupoidError);
}

TEST_CASE("inverse laws hold on small examples") {
  for (Gpd g : {FiniteGroupoid::cyclic(3), FiniteGroupoid::walking_iso(),
                FiniteGroupoid::discrete_gpd(3)}) {
    for (Mor m = 0; m < g->morphism_count(); ++m) {
      CHECK(g->inverse(g->inverse(m)) == m);
      for (Mor n = 0; n < g->morphism_count(); ++n)
        if (g->dst(m) == g->src(n))
          CHECK(g->inverse(g->compose(n, m)) ==
                g->compose(g->inverse(m), g->inverse(n)));
    }
  }
}

TEST_CASE("product: discrete x discrete") {
  Gpd b = FiniteGroupoid::discrete_gpd(2, {"tt", "ff"});
  auto p = product(b, b);
  CHECK(p.gpd->object_count() == 4);
  CHECK(p.gpd->morphism_count() == 4);
  CHECK(p.gpd->discrete());
}

TEST_CASE("product: Z2 x 1 iso to Z2") {
  auto p = product(FiniteGroupoid::cyclic(2), FiniteGroupoid::terminal());
  CHECK(p.gpd->object_count() == 1);
  CHECK(p.gpd->morphism_count() == 2);
  CHECK(p.gpd->compose(1, 1) == 0);
}

TEST_CASE("product: Z2 x Z2 has one object and four morphisms") {
  auto p = product(FiniteGroupoid::cyclic(2), FiniteGroupoid::cyclic(2));
  CHECK(p.gpd->object_count() == 1);
  CHECK(p.gpd->morphism_count() == 4);
  // Klein four group: every element self-inverse
  for (Mor m = 0; m < 4; ++m) CHECK(p.gpd->inverse(m) == m);
}

TEST_CASE("product universal property on small probes") {
  Gpd a = FiniteGroupoid::cyclic(2);
  Gpd b = FiniteGroupoid::walking_iso();
  auto p = product(a, b);
  for (const Gpd& probe :
       {FiniteGroupoid::terminal(), FiniteGroupoid::walking_iso(),
        FiniteGroupoid::cyclic(2)}) {
    auto fs = enumerate_functors(probe, a);
    auto gs = enumerate_functors(probe, b);
    auto hs = enumerate_functors(probe, p.gpd);
    for (const auto& f : fs)
      for (const auto& g : gs) {
        int count = 0;
        for (const auto& h : hs)
          if (functor_compose(p.pl, h) == f && functor_compose(p.pr, h) == g)
            ++count;
        CHECK(count == 1);
      }
  }
}

TEST_CASE("coproduct: o + o") {
  Gpd o = FiniteGroupoid::terminal();
  auto c = coproduct(o, o);
  CHECK(c.gpd->object_count() == 2);
  CHECK(c.gpd->morphism_count() == 2);
}

TEST_CASE("coproduct: empty + A iso to A") {
  Gpd a = FiniteGroupoid::cyclic(3);
  auto c = coproduct(FiniteGroupoid::empty(), a);
  CHECK(c.gpd->structurally_equal(*a));
}

TEST_CASE("coproduct: bool + Z2") {
  auto c = coproduct(FiniteGroupoid::discrete_gpd(2), FiniteGroupoid::cyclic(2));
  CHECK(c.gpd->object_count() == 3);
  CHECK(c.gpd->morphism_count() == 4);
  // no cross morphisms
  CHECK(c.gpd->hom(0, 2).empty());
  CHECK(c.gpd->hom(2, 0).empty());
}

TEST_CASE("coproduct universal property on small probes") {
  Gpd a = FiniteGroupoid::discrete_gpd(2);
  Gpd b = FiniteGroupoid::cyclic(2);
  auto c = coproduct(a, b);
  for (const Gpd& probe : {FiniteGroupoid::terminal(), FiniteGroupoid::cyclic(2),
                           FiniteGroupoid::discrete_gpd(3)}) {
    auto fs = enumerate_functors(a, probe);
    auto gs = enumerate_functors(b, probe);
    auto hs = enumerate_functors(c.gpd, probe);
    for (const auto& f : fs)
      for (const auto& g : gs) {
        int count = 0;
        for (const auto& h : hs)
          if (functor_compose(h, c.inl) == f && functor_compose(h, c.inr) == g)
            ++count;
        CHECK(count == 1);
      }
  }
}

TEST_CASE("vcompose and whiskering unit laws") {
  Gpd z2 = FiniteGroupoid::cyclic(2);
  GFunctor id = GFunctor::identity_functor(z2);
  NatIso idid = NatIso::identity_iso(id);
  CHECK(nat_iso_vcompose(idid, idid) == idid);
  CHECK(whisker(id, idid) == idid);
  CHECK(whisker(idid, id) == idid);
}

TEST_CASE("interchange over Z2 endofunctors, exhaustively") {
  Gpd z2 = FiniteGroupoid::cyclic(2);
  auto endos = enumerate_functors(z2, z2);
  for (const auto& f : endos)
    for (const auto& g : endos)
      for (const auto& h : endos)
        for (const auto& k : endos) {
          for (const auto& alpha : enumerate_nat_isos(f, g))
            for (const auto& alphap : enumerate_nat_isos(g, h))
              for (const auto& beta : enumerate_nat_isos(k, k))
                for (const auto& betap : enumerate_nat_isos(k, k)) {
                  // (β'·β) ∘h (α'·α) = (β'∘hα')·(β∘hα), horizontal composition
                  // expanded via whiskers: β ∘h α = whisker(k', α) · whisker(β, f)
                  NatIso va = nat_iso_vcompose(alphap, alpha);
                  NatIso vb = nat_iso_vcompose(betap, beta);
                  NatIso lhs = nat_iso_vcompose(whisker(vb, h), whisker(k, va));
                  NatIso rhs = nat_iso_vcompose(
                      nat_iso_vcompose(whisker(betap, h), whisker(k, alphap)),
                      nat_iso_vcompose(whisker(beta, g), whisker(k, alpha)));
                  CHECK(lhs == rhs);
                }
        }
}

TEST_CASE("enumerate_nat_isos: identity on terminal") {
  GFunctor id = GFunctor::identity_functor(FiniteGroupoid::terminal());
  auto isos = enumerate_nat_isos(id, id);
  REQUIRE(isos.size() == 1);
  CHECK(isos[0].is_identity());
}

TEST_CASE("enumerate_nat_isos: Id_Z2 to Id_Z2 has two elements") {
  GFunctor id = GFunctor::identity_functor(FiniteGroupoid::cyclic(2));
  auto isos = enumerate_nat_isos(id, id);
  CHECK(isos.size() == 2);
}

TEST_CASE("enumerate_nat_isos: distinct constants on a discrete groupoid") {
  Gpd b = FiniteGroupoid::discrete_gpd(2);
  Gpd one = FiniteGroupoid::terminal();
  GFunctor f = GFunctor::constant(one, b, 0);
  GFunctor g = GFunctor::constant(one, b, 1);
  CHECK(enumerate_nat_isos(f, g).empty());
}

TEST_CASE("enumerate_nat_isos matches brute-force oracle") {
  Gpd wi = FiniteGroupoid::walking_iso();
  Gpd z2 = FiniteGroupoid::cyclic(2);
  for (const Gpd& src : {wi, z2})
    for (const Gpd& dst : {wi, z2}) {
      auto fs = enumerate_functors(src, dst);
      for (const auto& f : fs)
        for (const auto& g : fs) {
          // oracle: all component choices, filtered by naturality after the fact
          int oracle = 0;
          std::vector<std::vector<Mor>> choices(src->object_count());
          for (Obj x = 0; x < src->object_count(); ++x)
            choices[x] = dst->hom(f.on_obj(x), g.on_obj(x));
          std::vector<size_t> idx(src->object_count(), 0);
          bool done = src->object_count() == 0;
          auto natural = [&](const std::vector<Mor>& comp) {
            for (Mor m = 0; m < src->morphism_count(); ++m)
              if (dst->compose(comp[src->dst(m)], f.on_mor(m)) !=
                  dst->compose(g.on_mor(m), comp[src->src(m)]))
                return false;
            return true;
          };
          if (done) {
            oracle = 1;
          } else {
            bool any_empty = false;
            for (auto& c : choices) any_empty |= c.empty();
            if (!any_empty) {
              while (true) {
                std::vector<Mor> comp(src->object_count());
                for (Obj x = 0; x < src->object_count(); ++x)
                  comp[x] = choices[x][idx[x]];
                if (natural(comp)) ++oracle;
                int pos = src->object_count() - 1;
                while (pos >= 0 && ++idx[pos] == choices[pos].size()) {
                  idx[pos] = 0;
                  --pos;
                }
                if (pos < 0) break;
              }
            }
          }
          CHECK(enumerate_nat_isos(f, g).size() == static_cast<size_t>(oracle));
        }
    }
}

TEST_CASE("full subgroupoid and wide subgroupoid inclusion") {
  Gpd z2 = FiniteGroupoid::cyclic(2);
  auto ids = WideSubgroupoid::identities_only(z2);
  auto inc = subgroupoid_inclusion(ids);
  CHECK(inc.gpd->morphism_count() == 1);
  CHECK(functor_compose(GFunctor::identity_functor(z2), inc.inclusion) ==
        inc.inclusion);

  Gpd wi = FiniteGroupoid::walking_iso();
  auto sub = full_subgroupoid(wi, {1});
  CHECK(sub.gpd->object_count() == 1);
  CHECK(sub.gpd->morphism_count() == 1);
}

TEST_CASE("JSON round trip for groupoids and functors") {
  for (Gpd g : {FiniteGroupoid::cyclic(3), FiniteGroupoid::walking_iso(),
                FiniteGroupoid::empty(),
                product(FiniteGroupoid::cyclic(2), FiniteGroupoid::cyclic(2)).gpd}) {
    auto j = groupoid_to_json(g);
    Gpd g2 = groupoid_from_json(j);
    CHECK(g->structurally_equal(*g2));
    CHECK(groupoid_to_json(g2) == j);
    CHECK(groupoid_to_json(g2).dump() == j.dump());
  }
  Gpd wi = FiniteGroupoid::walking_iso();
  for (const auto& f : enumerate_functors(wi, FiniteGroupoid::cyclic(2))) {
    auto j = functor_to_json(f);
    GFunctor f2 = functor_from_json(j);
    CHECK(f2.object_map() == f.object_map());
    CHECK(f2.morphism_map() == f.morphism_map());
  }
}
