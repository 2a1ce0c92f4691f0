#include "thinspan/span.hpp"

#include <algorithm>

#include "thinspan/json_io.hpp"

namespace thinspan {

namespace {
std::uint64_t key2(std::int64_t a, std::int64_t b) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
         static_cast<std::uint32_t>(b);
}
}  // namespace

Span Span::identity_span(const Gpd& a) {
  GFunctor id = GFunctor::identity_functor(a);
  return Span(a, id, id);
}

Prestrategy to_product_prestrategy(const Span& s, const ProductGpd& ab) {
  if (!same_gpd(s.left_base(), ab.pl.dst()) ||
      !same_gpd(s.right_base(), ab.pr.dst()))
    throw GroupoidError("to_product_prestrategy: base mismatch");
  std::vector<Obj> om(s.support->object_count());
  std::vector<Mor> mm(s.support->morphism_count());
  for (Obj x = 0; x < s.support->object_count(); ++x)
    om[x] = ab.obj_of(s.left.on_obj(x), s.right.on_obj(x));
  for (Mor m = 0; m < s.support->morphism_count(); ++m)
    mm[m] = ab.mor_of(s.left.on_mor(m), s.right.on_mor(m));
  return Prestrategy(s.support,
                     GFunctor(s.support, ab.gpd, std::move(om), std::move(mm)));
}

Span from_product_prestrategy(const Prestrategy& p, const ProductGpd& ab) {
  if (!same_gpd(p.base(), ab.gpd))
    throw GroupoidError("from_product_prestrategy: base mismatch");
  return Span(p.support, functor_compose(ab.pl, p.display),
              functor_compose(ab.pr, p.display));
}

Obj PullbackGpd::obj_of(Obj s, Obj t) const {
  auto it = obj_ids_.find(key2(s, t));
  return it == obj_ids_.end() ? -1 : it->second;
}
Mor PullbackGpd::mor_of(Mor f, Mor g) const {
  auto it = mor_ids_.find(key2(f, g));
  return it == mor_ids_.end() ? -1 : it->second;
}

PullbackGpd pullback(const Cospan& c) {
  const Gpd& s = c.f.src();
  const Gpd& t = c.g.src();
  PullbackGpd res;
  GroupoidBuilder bld;
  for (Obj x = 0; x < s->object_count(); ++x)
    for (Obj y = 0; y < t->object_count(); ++y) {
      if (c.f.on_obj(x) != c.g.on_obj(y)) continue;
      Obj p = bld.add_object("(" + s->obj_label(x) + "," + t->obj_label(y) + ")");
      res.obj_ids_[key2(x, y)] = p;
      res.obj_pairs.push_back({x, y});
    }
  for (Mor m = 0; m < s->morphism_count(); ++m)
    for (Mor n = 0; n < t->morphism_count(); ++n) {
      if (c.f.on_mor(m) != c.g.on_mor(n)) continue;
      Obj ps = res.obj_of(s->src(m), t->src(n));
      Obj pd = res.obj_of(s->dst(m), t->dst(n));
      if (ps < 0 || pd < 0)
        throw GroupoidError("pullback internal endpoint inconsistency");
      Mor p = bld.add_morphism(ps, pd,
                               "(" + s->mor_label(m) + "," + t->mor_label(n) + ")");
      res.mor_ids_[key2(m, n)] = p;
      res.mor_pairs.push_back({m, n});
    }
  for (size_t i = 0; i < res.obj_pairs.size(); ++i)
    bld.set_identity(static_cast<Obj>(i),
                     res.mor_of(s->identity(res.obj_pairs[i].first),
                                t->identity(res.obj_pairs[i].second)));
  for (size_t i = 0; i < res.mor_pairs.size(); ++i)
    for (size_t j = 0; j < res.mor_pairs.size(); ++j) {
      auto [m1, n1] = res.mor_pairs[i];
      auto [m2, n2] = res.mor_pairs[j];
      if (s->dst(m1) != s->src(m2) || t->dst(n1) != t->src(n2)) continue;
      bld.set_compose(static_cast<Mor>(j), static_cast<Mor>(i),
                      res.mor_of(s->compose(m2, m1), t->compose(n2, n1)));
    }
  res.gpd = bld.build();

  std::vector<Obj> plo(res.gpd->object_count()), pro(res.gpd->object_count());
  std::vector<Mor> plm(res.gpd->morphism_count()), prm(res.gpd->morphism_count());
  for (Obj p = 0; p < res.gpd->object_count(); ++p) {
    plo[p] = res.obj_pairs[p].first;
    pro[p] = res.obj_pairs[p].second;
  }
  for (Mor m = 0; m < res.gpd->morphism_count(); ++m) {
    plm[m] = res.mor_pairs[m].first;
    prm[m] = res.mor_pairs[m].second;
  }
  res.pl = GFunctor(res.gpd, s, std::move(plo), std::move(plm));
  res.pr = GFunctor(res.gpd, t, std::move(pro), std::move(prm));
  return res;
}

ComposedSpan compose_spans(const Span& s, const Span& t) {
  if (!same_gpd(s.right_base(), t.left_base()))
    throw GroupoidError("compose_spans: middle boundary mismatch");
  ComposedSpan res;
  res.pb = pullback(Cospan(s.right, t.left));
  res.span = Span(res.pb.gpd, functor_compose(s.left, res.pb.pl),
                  functor_compose(t.right, res.pb.pr));
  return res;
}

Prestrategy apply(const Span& t, const Prestrategy& s) {
  if (!same_gpd(s.base(), t.left_base()))
    throw GroupoidError("apply: base mismatch");
  PullbackGpd pb = pullback(Cospan(s.display, t.left));
  return Prestrategy(pb.gpd, functor_compose(t.right, pb.pr));
}

Span dual_span(const Span& s) { return Span(s.support, s.right, s.left); }

std::vector<ReindexingSolution> solve_reindexing(const Cospan& c,
                                                 const ReindexingProblem& p) {
  const Gpd& s = c.f.src();
  const Gpd& t = c.g.src();
  const Gpd& b = c.f.dst();
  if (b->src(p.theta) != c.f.on_obj(p.s) || b->dst(p.theta) != c.g.on_obj(p.t))
    throw GroupoidError("solve_reindexing: theta endpoints do not match");
  std::vector<ReindexingSolution> out;
  for (Mor phi = 0; phi < s->morphism_count(); ++phi) {
    if (s->src(phi) != p.s) continue;
    for (Mor psi = 0; psi < t->morphism_count(); ++psi) {
      if (t->dst(psi) != p.t) continue;
      if (c.f.on_obj(s->dst(phi)) != c.g.on_obj(t->src(psi))) continue;
      if (b->compose(c.g.on_mor(psi), c.f.on_mor(phi)) == p.theta)
        out.push_back({phi, psi});
    }
  }
  return out;
}

std::vector<ReindexingProblem> all_reindexing_problems(const Cospan& c) {
  const Gpd& s = c.f.src();
  const Gpd& t = c.g.src();
  const Gpd& b = c.f.dst();
  std::vector<ReindexingProblem> out;
  for (Obj x = 0; x < s->object_count(); ++x)
    for (Obj y = 0; y < t->object_count(); ++y)
      for (Mor theta : b->hom(c.f.on_obj(x), c.g.on_obj(y)))
        out.push_back({x, y, theta});
  return out;
}

bool is_bipullback(const Cospan& c) {
  for (const auto& p : all_reindexing_problems(c))
    if (solve_reindexing(c, p).empty()) return false;
  return true;
}

bool is_bipullback_oracle(const Cospan& c, const std::vector<Gpd>& probes) {
  if (probes.empty())
    throw GroupoidError("is_bipullback_oracle: probe list must be nonempty");
  bool has_terminal = false;
  for (const auto& x : probes)
    has_terminal |= same_gpd(x, FiniteGroupoid::terminal());
  if (!has_terminal)
    throw GroupoidError("is_bipullback_oracle: probes must include terminal");

  PullbackGpd pb = pullback(c);
  for (const Gpd& x : probes) {
    auto hss = enumerate_functors(x, c.f.src());
    auto hts = enumerate_functors(x, c.g.src());
    auto hps = enumerate_functors(x, pb.gpd);
    for (const auto& hs : hss)
      for (const auto& ht : hts) {
        GFunctor fhs = functor_compose(c.f, hs);
        GFunctor ght = functor_compose(c.g, ht);
        for (const auto& mu : enumerate_nat_isos(fhs, ght)) {
          // search a factorization h with isos α : hs ⇒ pl∘h, β : pr∘h ⇒ ht
          // whose pasting g(β) · f(α) equals μ
          bool found = false;
          for (const auto& h : hps) {
            GFunctor plh = functor_compose(pb.pl, h);
            GFunctor prh = functor_compose(pb.pr, h);
            for (const auto& alpha : enumerate_nat_isos(hs, plh)) {
              if (found) break;
              for (const auto& beta : enumerate_nat_isos(prh, ht)) {
                NatIso fa = whisker(c.f, alpha);   // f hs ⇒ f pl h
                NatIso gb = whisker(c.g, beta);    // g pr h ⇒ g ht
                // f pl h and g pr h are equal on the nose over the pullback
                bool match = true;
                for (Obj v = 0; v < x->object_count(); ++v)
                  if (c.f.dst()->compose(gb.component(v), fa.component(v)) !=
                      mu.component(v)) {
                    match = false;
                    break;
                  }
                if (match) {
                  found = true;
                  break;
                }
              }
            }
            if (found) break;
          }
          if (!found) return false;
        }
      }
  }
  return true;
}

bool check_2pullback(const Cospan& c) {
  PullbackGpd pb = pullback(c);
  const std::vector<Gpd> probes = {FiniteGroupoid::terminal(),
                                   FiniteGroupoid::walking_iso()};
  for (const Gpd& x : probes) {
    auto hss = enumerate_functors(x, c.f.src());
    auto hts = enumerate_functors(x, c.g.src());
    auto hps = enumerate_functors(x, pb.gpd);
    for (const auto& hs : hss)
      for (const auto& ht : hts) {
        if (!(functor_compose(c.f, hs) == functor_compose(c.g, ht))) continue;
        int count = 0;
        for (const auto& h : hps)
          if (functor_compose(pb.pl, h) == hs && functor_compose(pb.pr, h) == ht)
            ++count;
        if (count != 1) return false;
      }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Weak morphisms

WeakMorphism::WeakMorphism(Span src_, Span dst_, GFunctor f, NatIso fl, NatIso fr)
    : src(std::move(src_)),
      dst(std::move(dst_)),
      support_functor(std::move(f)),
      fill_left(std::move(fl)),
      fill_right(std::move(fr)) {
  if (!same_gpd(src.left_base(), dst.left_base()) ||
      !same_gpd(src.right_base(), dst.right_base()))
    throw GroupoidError("weak morphism between spans with different boundaries");
  if (!same_gpd(support_functor.src(), src.support) ||
      !same_gpd(support_functor.dst(), dst.support))
    throw GroupoidError("weak morphism support functor boundary mismatch");
  if (!(fill_left.src_functor() == src.left) ||
      !(fill_left.dst_functor() == functor_compose(dst.left, support_functor)))
    throw GroupoidError("fill_left has wrong boundary");
  if (!(fill_right.src_functor() == src.right) ||
      !(fill_right.dst_functor() == functor_compose(dst.right, support_functor)))
    throw GroupoidError("fill_right has wrong boundary");
}

WeakMorphism WeakMorphism::identity(const Span& s) {
  return strong(s, s, GFunctor::identity_functor(s.support));
}

WeakMorphism WeakMorphism::strong(Span src, Span dst, GFunctor f) {
  NatIso fl = NatIso(src.left, functor_compose(dst.left, f),
                     NatIso::identity_iso(src.left).components());
  NatIso fr = NatIso(src.right, functor_compose(dst.right, f),
                     NatIso::identity_iso(src.right).components());
  return WeakMorphism(std::move(src), std::move(dst), std::move(f),
                      std::move(fl), std::move(fr));
}

bool is_strong(const WeakMorphism& w) {
  return w.fill_left.is_identity() && w.fill_right.is_identity();
}

bool is_invertible(const WeakMorphism& w) {
  return w.support_functor.is_bijective();
}

WeakMorphism weak_morphism_vcompose(const WeakMorphism& g, const WeakMorphism& f) {
  if (!same_gpd(f.dst.support, g.src.support))
    throw GroupoidError("weak_morphism_vcompose: boundary mismatch");
  GFunctor comp = functor_compose(g.support_functor, f.support_functor);
  NatIso fl = nat_iso_vcompose(whisker(g.fill_left, f.support_functor), f.fill_left);
  NatIso fr =
      nat_iso_vcompose(whisker(g.fill_right, f.support_functor), f.fill_right);
  // rebuild against the composite functor so the boundary functors compare equal
  return WeakMorphism(f.src, g.dst, comp,
                      NatIso(f.src.left, functor_compose(g.dst.left, comp),
                             fl.components()),
                      NatIso(f.src.right, functor_compose(g.dst.right, comp),
                             fr.components()));
}

WeakMorphism weak_morphism_inverse(const WeakMorphism& w) {
  if (!is_invertible(w))
    throw GroupoidError("weak_morphism_inverse: support functor not bijective");
  const GFunctor& f = w.support_functor;
  std::vector<Obj> om(f.dst()->object_count());
  std::vector<Mor> mm(f.dst()->morphism_count());
  for (Obj x = 0; x < f.src()->object_count(); ++x) om[f.on_obj(x)] = x;
  for (Mor m = 0; m < f.src()->morphism_count(); ++m) mm[f.on_mor(m)] = m;
  GFunctor finv(f.dst(), f.src(), std::move(om), std::move(mm));
  // fills of the inverse: at object y of dst, the inverse of the fill at
  // F⁻¹(y), transported along nothing (the displays land in the same base).
  std::vector<Mor> fl(w.dst.support->object_count()),
      fr(w.dst.support->object_count());
  for (Obj y = 0; y < w.dst.support->object_count(); ++y) {
    fl[y] = w.src.left_base()->inverse(w.fill_left.component(finv.on_obj(y)));
    fr[y] = w.src.right_base()->inverse(w.fill_right.component(finv.on_obj(y)));
  }
  return WeakMorphism(
      w.dst, w.src, finv,
      NatIso(w.dst.left, functor_compose(w.src.left, finv), std::move(fl)),
      NatIso(w.dst.right, functor_compose(w.src.right, finv), std::move(fr)));
}

bool weak_morphism_equal(const WeakMorphism& a, const WeakMorphism& b) {
  return a.support_functor == b.support_functor &&
         a.fill_left.components() == b.fill_left.components() &&
         a.fill_right.components() == b.fill_right.components();
}

std::optional<WeakMorphism> span_iso_search(const Span& s, const Span& sp) {
  if (!same_gpd(s.left_base(), sp.left_base()) ||
      !same_gpd(s.right_base(), sp.right_base()))
    return std::nullopt;
  for (const auto& f : enumerate_functor_isos(s.support, sp.support)) {
    GFunctor l2 = functor_compose(sp.left, f);
    GFunctor r2 = functor_compose(sp.right, f);
    auto lefts = enumerate_nat_isos(s.left, l2);
    if (lefts.empty()) continue;
    auto rights = enumerate_nat_isos(s.right, r2);
    if (rights.empty()) continue;
    return WeakMorphism(s, sp, f, lefts.front(), rights.front());
  }
  return std::nullopt;
}

nlohmann::json span_to_json(const Span& s) {
  nlohmann::json j;
  j["support"] = groupoid_to_json(s.support);
  j["left_base"] = groupoid_to_json(s.left_base());
  j["right_base"] = groupoid_to_json(s.right_base());
  j["left"] = {{"object_map", s.left.object_map()},
               {"morphism_map", s.left.morphism_map()}};
  j["right"] = {{"object_map", s.right.object_map()},
                {"morphism_map", s.right.morphism_map()}};
  return j;
}

Span span_from_json(const nlohmann::json& j) {
  Gpd support = groupoid_from_json(j.at("support"));
  Gpd a = groupoid_from_json(j.at("left_base"));
  Gpd b = groupoid_from_json(j.at("right_base"));
  GFunctor l(support, a, j.at("left").at("object_map").get<std::vector<Obj>>(),
             j.at("left").at("morphism_map").get<std::vector<Mor>>());
  GFunctor r(support, b, j.at("right").at("object_map").get<std::vector<Obj>>(),
             j.at("right").at("morphism_map").get<std::vector<Mor>>());
  return Span(support, std::move(l), std::move(r));
}

}  // namespace thinspan
