#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "thinspan/harness.hpp"

using namespace thinspan;

TEST_CASE("generators are deterministic per seed") {
  GenConfig cfg;
  Rng r1(7), r2(7);
  for (int i = 0; i < 20; ++i) {
    GenGroupoid a = gen_groupoid(r1, cfg);
    GenGroupoid b = gen_groupoid(r2, cfg);
    CHECK(a.gpd->structurally_equal(*b.gpd));
    CHECK(a.blocks.size() == b.blocks.size());
  }
  Rng r3(7), r4(7);
  for (int i = 0; i < 5; ++i) {
    Cospan c = gen_cospan(r3, cfg);
    Cospan d = gen_cospan(r4, cfg);
    CHECK(c.f.object_map() == d.f.object_map());
    CHECK(c.g.morphism_map() == d.g.morphism_map());
  }
}

TEST_CASE("generated data satisfies the type invariants") {
  GenConfig cfg;
  Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    GenGroupoid g = gen_groupoid(rng, cfg);
    // FiniteGroupoid::validate already ran in the builder; sanity beyond it
    CHECK(g.gpd->object_count() >= 1);
    CHECK(g.gpd->object_count() <= cfg.max_objects);
    for (Obj x = 0; x < g.gpd->object_count(); ++x)
      CHECK(static_cast<int>(g.gpd->hom(x, x).size()) <= cfg.max_hom_size);
  }
  for (int i = 0; i < 30; ++i) {
    GenGroupoid g = gen_groupoid(rng, cfg);
    PolarizedGroupoid p = gen_polarized(rng, g);
    std::string why;
    CHECK_MESSAGE(check_polarized_axioms(p, &why), why);
  }
  for (int i = 0; i < 10; ++i) {
    ThinInstance in = gen_thin_instance(rng, cfg);
    CHECK(same_gpd(in.s.right_base(), in.t.left_base()));
    std::string why;
    CHECK_MESSAGE(check_thin_groupoid(in.a, &why), why);
  }
}

TEST_CASE("weak-morphism generator produces valid cells") {
  GenConfig cfg;
  Rng rng(3);
  int found = 0;
  for (int i = 0; i < 10 && found < 3; ++i)
    if (auto gw = gen_weak_morphism(rng, cfg)) {
      ++found;
      CHECK(gw->w.support_functor.is_bijective());
    }
  CHECK(found >= 1);
}

TEST_CASE("suites pass on small runs") {
  for (const std::string& name : suite_names()) {
    GenConfig cfg;
    cfg.seed = 5;
    cfg.instance_count = name == "positivization" || name == "pcc" ? 10 : 25;
    SuiteResult r = run_suite(name, cfg);
    std::string msg =
        name + ": " +
        (r.failures.empty() ? std::string("no bundle") : r.failures[0].dump());
    CHECK_MESSAGE(r.pass, msg);
    CHECK(r.instances == cfg.instance_count);
  }
  CHECK_THROWS_AS((void)run_suite("nope", GenConfig{}), GroupoidError);
}

TEST_CASE("vacuous suite runs pass") {
  GenConfig cfg;
  cfg.instance_count = 0;
  for (const std::string& name : suite_names()) {
    SuiteResult r = run_suite(name, cfg);
    CHECK(r.pass);
    CHECK(r.instances == 0);
  }
}

TEST_CASE("suite results serialize deterministically") {
  GenConfig cfg;
  cfg.instance_count = 5;
  auto a = suite_result_to_json(run_suite("carac_pb_bipb", cfg));
  auto b = suite_result_to_json(run_suite("carac_pb_bipb", cfg));
  CHECK(a.dump() == b.dump());
}
