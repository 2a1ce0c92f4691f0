#include "thinspan/cc.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>

namespace thinspan {

// ---------------------------------------------------------------------------
// Structural helpers

GFunctor copair_functor(const CoproductGpd& c, const GFunctor& f,
                        const GFunctor& g) {
  if (!same_gpd(f.dst(), g.dst()))
    throw GroupoidError("copair_functor: codomain mismatch");
  if (!same_gpd(f.src(), c.inl.src()) || !same_gpd(g.src(), c.inr.src()))
    throw GroupoidError("copair_functor: legs do not match the coproduct");
  std::vector<Obj> om(c.gpd->object_count());
  std::vector<Mor> mm(c.gpd->morphism_count());
  for (Obj x = 0; x < c.gpd->object_count(); ++x) {
    auto [tag, v] = c.obj_case(x);
    om[x] = tag ? g.on_obj(v) : f.on_obj(v);
  }
  for (Mor m = 0; m < c.gpd->morphism_count(); ++m) {
    auto [tag, v] = c.mor_case(m);
    mm[m] = tag ? g.on_mor(v) : f.on_mor(v);
  }
  return GFunctor(c.gpd, f.dst(), std::move(om), std::move(mm));
}

GFunctor pair_functor(const GFunctor& f, const GFunctor& g,
                      const ProductGpd& p) {
  if (!same_gpd(f.src(), g.src()))
    throw GroupoidError("pair_functor: domain mismatch");
  if (!same_gpd(f.dst(), p.pl.dst()) || !same_gpd(g.dst(), p.pr.dst()))
    throw GroupoidError("pair_functor: legs do not match the product");
  std::vector<Obj> om(f.src()->object_count());
  std::vector<Mor> mm(f.src()->morphism_count());
  for (Obj x = 0; x < f.src()->object_count(); ++x)
    om[x] = p.obj_of(f.on_obj(x), g.on_obj(x));
  for (Mor m = 0; m < f.src()->morphism_count(); ++m)
    mm[m] = p.mor_of(f.on_mor(m), g.on_mor(m));
  return GFunctor(f.src(), p.gpd, std::move(om), std::move(mm));
}

PolarizedGroupoid coproduct_polarity(const PolarizedGroupoid& a,
                                     const PolarizedGroupoid& b,
                                     const CoproductGpd& c) {
  const int nm = c.gpd->morphism_count();
  std::vector<bool> neg(nm), pos(nm);
  for (Mor m = 0; m < nm; ++m) {
    auto [tag, v] = c.mor_case(m);
    neg[m] = tag ? b.negative.contains(v) : a.negative.contains(v);
    pos[m] = tag ? b.positive.contains(v) : a.positive.contains(v);
  }
  return PolarizedGroupoid(c.gpd, WideSubgroupoid(c.gpd, std::move(neg)),
                           WideSubgroupoid(c.gpd, std::move(pos)));
}

PolarizedGroupoid product_polarity(const PolarizedGroupoid& a,
                                   const PolarizedGroupoid& b,
                                   const ProductGpd& p) {
  const int nm = p.gpd->morphism_count();
  std::vector<bool> neg(nm), pos(nm);
  for (Mor m = 0; m < nm; ++m) {
    auto [ma, mb] = p.mor_pair(m);
    neg[m] = a.negative.contains(ma) && b.negative.contains(mb);
    pos[m] = a.positive.contains(ma) && b.positive.contains(mb);
  }
  return PolarizedGroupoid(p.gpd, WideSubgroupoid(p.gpd, std::move(neg)),
                           WideSubgroupoid(p.gpd, std::move(pos)));
}

Prestrategy prestrategy_coproduct(const Prestrategy& s, const Prestrategy& t,
                                  const CoproductGpd& ab) {
  CoproductGpd c = coproduct(s.support, t.support);
  GFunctor disp = copair_functor(c, functor_compose(ab.inl, s.display),
                                 functor_compose(ab.inr, t.display));
  return Prestrategy(c.gpd, std::move(disp));
}

// ---------------------------------------------------------------------------
// Kleisli homs

KleisliHom make_kleisli_hom(const ThinGroupoid& a, const ThinGroupoid& b,
                            Span s, FamGpd fsrc, ThinGroupoid bang_src,
                            const TruncationConfig& cfg) {
  if (!same_gpd(fsrc.base, a.base()))
    throw GroupoidError("make_kleisli_hom: fragment over a different base");
  if (!same_gpd(bang_src.base(), fsrc.gpd))
    throw GroupoidError(
        "make_kleisli_hom: thin structure over a different fragment");
  ThinHom h = make_thin_hom(bang_src, b, std::move(s));
  return {a, std::move(fsrc), std::move(bang_src), std::move(h), cfg};
}

KleisliHom make_kleisli_hom(const ThinGroupoid& a, const ThinGroupoid& b,
                            Span s, FamGpd fsrc, const TruncationConfig& cfg) {
  ThinGroupoid bs = fam_thin(a, fsrc);
  return make_kleisli_hom(a, b, std::move(s), std::move(fsrc), std::move(bs),
                          cfg);
}

KleisliHom make_kleisli_hom(const ThinGroupoid& a, const ThinGroupoid& b,
                            Span s, const TruncationConfig& cfg) {
  return make_kleisli_hom(a, b, std::move(s), fam(a.base(), cfg), cfg);
}

KleisliHom kleisli_identity(const ThinGroupoid& a, const TruncationConfig& cfg) {
  FamGpd fa = fam(a.base(), cfg);
  ThinGroupoid bang_a = fam_thin(a, fa);
  LiftedSpan der = dereliction(a, fa);
  if (!der.cert.pass)
    throw GroupoidError("kleisli_identity: dereliction certificate failed: " +
                        der.cert.failures.front());
  ThinHom h{bang_a, a, der.span, der.cert};
  return {a, std::move(fa), std::move(bang_a), std::move(h), cfg};
}

SpanPolarity kleisli_polarity(const KleisliHom& s) {
  return {fam_polarity(s.src.polarized, s.fsrc), s.hom.b.polarized};
}

FamGpd bang_squared(const FamGpd& fa, const PairingFunction& p) {
  const int N = fa.max_index;
  // per outer index, the members of `fa` whose every inner pairing stays in
  // range
  std::vector<std::vector<Obj>> allowed(N);
  for (int i = 0; i < N; ++i)
    for (Obj x = 0; x < static_cast<Obj>(fa.objects.size()); ++x) {
      bool ok = true;
      for (const auto& [j, e] : fa.obj_at(x).entries)
        if (p.pair(i, j) >= N) {
          ok = false;
          break;
        }
      if (ok) allowed[i].push_back(x);
    }
  std::vector<FamObject> out;
  std::vector<std::pair<int, Obj>> cur;
  auto rec = [&](auto&& self, int i) -> void {
    if (i == N) {
      FamObject flat;
      for (const auto& [oi, x] : cur)
        for (const auto& [j, e] : fa.obj_at(x).entries)
          flat.entries.push_back({static_cast<int>(p.pair(oi, j)), e});
      std::sort(flat.entries.begin(), flat.entries.end());
      if (fa.obj_of(flat) >= 0) out.push_back(fam_obj(cur));
      return;
    }
    self(self, i + 1);
    for (Obj x : allowed[i]) {
      cur.push_back({i, x});
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return fam_fragment(fa.gpd, N, std::move(out));
}

namespace {

// The shared ingredients of a Kleisli composite T ⊙_! S: the depth-2 fragment
// over S's source, the canonical thin structure on it, the lifted μ̌, and the
// polarities of the intermediate boundaries.
struct ComposeParts {
  FamGpd ffa;                    // !!A over s.fsrc
  ThinGroupoid bb;               // canonical thin structure on ffa
  LiftedSpan mubar;              // μ̌ : !A ⊸ !!A
  PolarizedGroupoid pol_ba;      // !A
  PolarizedGroupoid pol_bb;      // !!A
  PolarizedGroupoid pol_bt;      // !B (t's source fragment)
};

ComposeParts compose_parts(const KleisliHom& s, const KleisliHom& t,
                           const PairingFunction& p) {
  if (!same_gpd(s.hom.b.base(), t.src.base()))
    throw GroupoidError("kleisli_compose: boundary mismatch");
  if (s.cfg.max_index != t.cfg.max_index)
    throw GroupoidError("kleisli_compose: truncation mismatch");
  ComposeParts out{bang_squared(s.fsrc, p),
                   ThinGroupoid::ground(FiniteGroupoid::empty()),
                   {},
                   fam_polarity(s.src.polarized, s.fsrc),
                   PolarizedGroupoid::discrete(FiniteGroupoid::empty()),
                   fam_polarity(t.src.polarized, t.fsrc)};
  out.pol_bb = fam_polarity(out.pol_ba, out.ffa);
  out.bb = ThinGroupoid::from_polarity(out.pol_bb);
  GFunctor mu_fun = mu(out.ffa, s.fsrc, s.fsrc, p);
  Renaming ren = check_renaming(mu_fun, out.bb, s.bang_src);
  out.mubar = lift_renaming(ren, s.bang_src, out.bb);
  if (!out.mubar.cert.pass)
    throw GroupoidError("kleisli_compose: μ̌ certificate failed: " +
                        out.mubar.cert.failures.front());
  return out;
}

}  // namespace

KleisliHom kleisli_compose(const KleisliHom& s, const KleisliHom& t,
                           const PairingFunction& p) {
  ComposeParts cp = compose_parts(s, t, p);
  FamSpan fs = fam_span(s.hom.span, cp.ffa, t.fsrc);
  ComposedSpan c1 = compose_spans(cp.mubar.span, fs.span);
  ComposedSpan c2 = compose_spans(c1.span, t.hom.span);
  ThinHom h = make_thin_hom(s.bang_src, t.hom.b, c2.span);
  return {s.src, s.fsrc, s.bang_src, std::move(h), s.cfg};
}

WeakMorphism fam_cell(const WeakMorphism& w, const FamSpan& fs,
                      const FamSpan& ft, const FamGpd& fl, const FamGpd& fr) {
  const FamGpd& S = fs.support;
  const FamGpd& T = ft.support;
  std::vector<Obj> om(S.gpd->object_count());
  for (Obj x = 0; x < S.gpd->object_count(); ++x) {
    FamObject img = S.obj_at(x);
    for (auto& [i, e] : img.entries) e = w.support_functor.on_obj(e);
    om[x] = T.obj_of(img);
    if (om[x] < 0) throw GroupoidError("fam_cell: image family missing");
  }
  std::vector<Mor> mm(S.gpd->morphism_count());
  for (Mor m = 0; m < S.gpd->morphism_count(); ++m) {
    const FamMorData& d = S.mor_at(m);
    std::vector<Mor> comps(d.comps.size());
    for (size_t k = 0; k < d.comps.size(); ++k)
      comps[k] = w.support_functor.on_mor(d.comps[k]);
    mm[m] = T.mor_of(om[S.gpd->src(m)], om[S.gpd->dst(m)], d.pi, comps);
    if (mm[m] < 0) throw GroupoidError("fam_cell: image morphism missing");
  }
  GFunctor F(S.gpd, T.gpd, std::move(om), std::move(mm));
  auto lift_fill = [&](const NatIso& fill, const GFunctor& srcdisp,
                       const GFunctor& dstdisp, const FamGpd& frag) {
    std::vector<Mor> comps(S.gpd->object_count());
    for (Obj x = 0; x < S.gpd->object_count(); ++x) {
      const FamObject& fx = S.obj_at(x);
      std::vector<int> pi(fx.entries.size());
      std::iota(pi.begin(), pi.end(), 0);
      std::vector<Mor> cs(fx.entries.size());
      for (size_t k = 0; k < fx.entries.size(); ++k)
        cs[k] = fill.component(fx.entries[k].second);
      comps[x] = frag.mor_of(srcdisp.on_obj(x),
                             dstdisp.on_obj(F.on_obj(x)), pi, cs);
      if (comps[x] < 0)
        throw GroupoidError("fam_cell: fill component missing");
    }
    return NatIso(srcdisp, functor_compose(dstdisp, F), std::move(comps));
  };
  NatIso flr = lift_fill(w.fill_left, fs.span.left, ft.span.left, fl);
  NatIso frr = lift_fill(w.fill_right, fs.span.right, ft.span.right, fr);
  return WeakMorphism(fs.span, ft.span, std::move(F), std::move(flr),
                      std::move(frr));
}

PositiveWeakMorphism kleisli_whisker_left(const PositiveWeakMorphism& w,
                                          const KleisliHom& s,
                                          const KleisliHom& s2,
                                          const KleisliHom& t,
                                          const PairingFunction& p) {
  if (!same_gpd(s.fsrc.gpd, s2.fsrc.gpd))
    throw GroupoidError("kleisli_whisker_left: the two homs must share their "
                        "source fragment");
  ComposeParts cp = compose_parts(s, t, p);
  FamSpan fs = fam_span(s.hom.span, cp.ffa, t.fsrc);
  FamSpan fs2 = fam_span(s2.hom.span, cp.ffa, t.fsrc);
  WeakMorphism fw = fam_cell(w.underlying, fs, fs2, cp.ffa, t.fsrc);
  SpanPolarity p1{cp.pol_ba, cp.pol_bb};
  SpanPolarity p2{cp.pol_bb, cp.pol_bt};
  SpanPolarity p12{cp.pol_ba, cp.pol_bt};
  SpanPolarity p3{cp.pol_bt, t.hom.b.polarized};
  PositiveWeakMorphism idmu(WeakMorphism::identity(cp.mubar.span), p1);
  PositiveWeakMorphism pfw(std::move(fw), p2);
  PositiveWeakMorphism inner = hcompose_2cells(idmu, pfw, p1, p2);
  PositiveWeakMorphism idt(WeakMorphism::identity(t.hom.span), p3);
  return hcompose_2cells(inner, idt, p12, p3);
}

PositiveWeakMorphism kleisli_whisker_right(const KleisliHom& s,
                                           const PositiveWeakMorphism& w,
                                           const KleisliHom& t,
                                           const KleisliHom& t2,
                                           const PairingFunction& p) {
  if (!same_gpd(t.fsrc.gpd, t2.fsrc.gpd))
    throw GroupoidError("kleisli_whisker_right: the two homs must share their "
                        "source fragment");
  ComposeParts cp = compose_parts(s, t, p);
  FamSpan fs = fam_span(s.hom.span, cp.ffa, t.fsrc);
  ComposedSpan c1 = compose_spans(cp.mubar.span, fs.span);
  SpanPolarity p12{cp.pol_ba, cp.pol_bt};
  SpanPolarity p3{cp.pol_bt, t.hom.b.polarized};
  PositiveWeakMorphism idc(WeakMorphism::identity(c1.span), p12);
  return hcompose_2cells(idc, w, p12, p3);
}

// ---------------------------------------------------------------------------
// Terminal object

ThinGroupoid terminal_object() {
  return ThinGroupoid::ground(FiniteGroupoid::empty());
}

KleisliHom bang_terminal_hom(const ThinGroupoid& a,
                             const TruncationConfig& cfg) {
  ThinGroupoid top = terminal_object();
  FamGpd fa = fam(a.base(), cfg);
  Gpd e = FiniteGroupoid::empty();
  Span s(e, GFunctor(e, fa.gpd, {}, {}), GFunctor(e, top.base(), {}, {}));
  return make_kleisli_hom(a, top, std::move(s), std::move(fa), cfg);
}

// ---------------------------------------------------------------------------
// With-products

WithObject with_product(const ThinGroupoid& a, const ThinGroupoid& b) {
  CoproductGpd c = coproduct(a.base(), b.base());
  PolarizedGroupoid pol = coproduct_polarity(a.polarized, b.polarized, c);
  ThinGroupoid t = ThinGroupoid::from_polarity(std::move(pol));
  // extend the canonical lists by the pairwise coproducts of the inputs'
  // lists, skipping the (0,0) pairs, which are the canonical entries just
  // installed
  auto extend = [&](std::vector<Prestrategy>& out,
                    const std::vector<Prestrategy>& la,
                    const std::vector<Prestrategy>& lb) {
    for (size_t i = 0; i < la.size(); ++i)
      for (size_t j = 0; j < lb.size(); ++j) {
        if (i == 0 && j == 0) continue;
        out.push_back(prestrategy_coproduct(la[i], lb[j], c));
      }
  };
  extend(t.uniform.generators, a.uniform.generators, b.uniform.generators);
  extend(t.uniform.co_generators, a.uniform.co_generators,
         b.uniform.co_generators);
  extend(t.thin_generators, a.thin_generators, b.thin_generators);
  extend(t.thin_co_generators, a.thin_co_generators, b.thin_co_generators);
  return {a, b, std::move(t), std::move(c)};
}

Projections projections(const WithObject& w, const TruncationConfig& cfg) {
  FamGpd fab = fam(w.coprod.gpd, cfg);
  ThinGroupoid bang_with = fam_thin(w.combined, fab);
  GFunctor e = eta(w.coprod.gpd, fab);
  auto lift = [&](const GFunctor& inj, const ThinGroupoid& side) {
    GFunctor f = functor_compose(e, inj);
    Renaming ren = check_renaming(f, side, bang_with);
    LiftedSpan ls = lift_renaming(ren, bang_with, side);
    if (!ls.cert.pass)
      throw GroupoidError("projections: certificate failed: " +
                          ls.cert.failures.front());
    ThinHom h{bang_with, side, std::move(ls.span), std::move(ls.cert)};
    return KleisliHom{w.combined, fab, bang_with, std::move(h), cfg};
  };
  KleisliHom pl = lift(w.coprod.inl, w.left);
  KleisliHom pr = lift(w.coprod.inr, w.right);
  return {std::move(fab), std::move(bang_with), std::move(pl), std::move(pr)};
}

namespace {

Span pairing_span(const Span& s, const Span& t, const WithObject& w) {
  CoproductGpd c = coproduct(s.support, t.support);
  GFunctor left = copair_functor(c, s.left, t.left);
  GFunctor right = copair_functor(c, functor_compose(w.coprod.inl, s.right),
                                  functor_compose(w.coprod.inr, t.right));
  return Span(c.gpd, std::move(left), std::move(right));
}

}  // namespace

KleisliHom pairing(const KleisliHom& s, const KleisliHom& t,
                   const WithObject& w) {
  if (!same_gpd(s.fsrc.gpd, t.fsrc.gpd) || s.cfg.max_index != t.cfg.max_index)
    throw GroupoidError("pairing: homs must share their source fragment");
  if (!same_gpd(s.dst().base(), w.left.base()) ||
      !same_gpd(t.dst().base(), w.right.base()))
    throw GroupoidError("pairing: hom targets do not match the with-object");
  Span sp = pairing_span(s.span(), t.span(), w);
  ThinHom h = make_thin_hom(s.bang_src, w.combined, std::move(sp));
  return {s.src, s.fsrc, s.bang_src, std::move(h), s.cfg};
}

WeakMorphism pairing_cell(const WeakMorphism& wa, const WeakMorphism& wb,
                          const WithObject& w, const FamGpd& fsrc) {
  if (!same_gpd(wa.src.left_base(), fsrc.gpd) ||
      !same_gpd(wb.src.left_base(), fsrc.gpd))
    throw GroupoidError("pairing_cell: cells over different source fragments");
  Span src = pairing_span(wa.src, wb.src, w);
  Span dst = pairing_span(wa.dst, wb.dst, w);
  CoproductGpd cs = coproduct(wa.src.support, wb.src.support);
  CoproductGpd cd = coproduct(wa.dst.support, wb.dst.support);
  std::vector<Obj> om(cs.gpd->object_count());
  std::vector<Mor> mm(cs.gpd->morphism_count());
  for (Obj x = 0; x < cs.gpd->object_count(); ++x) {
    auto [tag, v] = cs.obj_case(x);
    om[x] = tag ? cd.inr.on_obj(wb.support_functor.on_obj(v))
                : cd.inl.on_obj(wa.support_functor.on_obj(v));
  }
  for (Mor m = 0; m < cs.gpd->morphism_count(); ++m) {
    auto [tag, v] = cs.mor_case(m);
    mm[m] = tag ? cd.inr.on_mor(wb.support_functor.on_mor(v))
                : cd.inl.on_mor(wa.support_functor.on_mor(v));
  }
  GFunctor F(cs.gpd, cd.gpd, std::move(om), std::move(mm));
  std::vector<Mor> flc(cs.gpd->object_count()), frc(cs.gpd->object_count());
  for (Obj x = 0; x < cs.gpd->object_count(); ++x) {
    auto [tag, v] = cs.obj_case(x);
    flc[x] = tag ? wb.fill_left.component(v) : wa.fill_left.component(v);
    frc[x] = tag ? w.coprod.inr.on_mor(wb.fill_right.component(v))
                 : w.coprod.inl.on_mor(wa.fill_right.component(v));
  }
  NatIso fl(src.left, functor_compose(dst.left, F), std::move(flc));
  NatIso fr(src.right, functor_compose(dst.right, F), std::move(frc));
  return WeakMorphism(std::move(src), std::move(dst), std::move(F),
                      std::move(fl), std::move(fr));
}

// ---------------------------------------------------------------------------
// The Seely equivalence

namespace {

// Every family over the given index list whose entry at index i is drawn from
// choices(i) (or absent), in index-recursive order.
std::vector<FamObject> families_over(
    const std::vector<int>& idxs,
    const std::function<std::vector<Obj>(int)>& choices) {
  std::vector<FamObject> out;
  std::vector<std::pair<int, Obj>> cur;
  auto rec = [&](auto&& self, size_t k) -> void {
    if (k == idxs.size()) {
      out.push_back(fam_obj(cur));
      return;
    }
    self(self, k + 1);
    for (Obj v : choices(idxs[k])) {
      cur.push_back({idxs[k], v});
      self(self, k + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

}  // namespace

SeelyEquivalence seely(const ThinGroupoid& a, const ThinGroupoid& b,
                       FamGpd fa, FamGpd fb, FamGpd fab,
                       const InterleavingBijection& il) {
  SeelyEquivalence se;
  se.coprod = coproduct(a.base(), b.base());
  if (!same_gpd(fa.base, a.base()) || !same_gpd(fb.base, b.base()) ||
      !same_gpd(fab.base, se.coprod.gpd))
    throw GroupoidError("seely: fragments over the wrong bases");
  se.fa = std::move(fa);
  se.fb = std::move(fb);
  se.fab = std::move(fab);
  se.prod = product(se.fa.gpd, se.fb.gpd);
  const int N = se.fab.max_index;

  auto interleave_obj = [&](const FamObject& xa, const FamObject& xb)
      -> std::optional<FamObject> {
    std::vector<std::pair<int, Obj>> es;
    for (const auto& [i, v] : xa.entries) {
      long t = il.left(i);
      if (t >= N) return std::nullopt;
      es.push_back({static_cast<int>(t), se.coprod.inl.on_obj(v)});
    }
    for (const auto& [i, v] : xb.entries) {
      long t = il.right(i);
      if (t >= N) return std::nullopt;
      es.push_back({static_cast<int>(t), se.coprod.inr.on_obj(v)});
    }
    return fam_obj(std::move(es));
  };

  // dom_s: the part of !A × !B whose interleaving is in range and listed
  std::vector<Obj> good;
  se.dom_s_of.assign(se.prod.gpd->object_count(), -1);
  for (Obj x = 0; x < se.prod.gpd->object_count(); ++x) {
    auto [xa, xb] = se.prod.obj_pair(x);
    auto img = interleave_obj(se.fa.obj_at(xa), se.fb.obj_at(xb));
    if (img && se.fab.obj_of(*img) >= 0) {
      se.dom_s_of[x] = static_cast<Obj>(good.size());
      good.push_back(x);
    }
  }
  se.dom_s = full_subgroupoid(se.prod.gpd, good);

  // s: interleave objects and morphisms (combined positions by sorted index)
  const int nsub = se.dom_s.gpd->object_count();
  std::vector<Obj> som(nsub);
  for (Obj k = 0; k < nsub; ++k) {
    auto [xa, xb] = se.prod.obj_pair(good[k]);
    som[k] = se.fab.obj_of(*interleave_obj(se.fa.obj_at(xa), se.fb.obj_at(xb)));
  }
  auto combined = [&](Obj prod_obj) {
    auto [xa, xb] = se.prod.obj_pair(prod_obj);
    std::vector<std::tuple<int, int, int>> es;  // (index, side, side pos)
    const auto& ea = se.fa.obj_at(xa).entries;
    for (size_t k = 0; k < ea.size(); ++k)
      es.push_back({static_cast<int>(il.left(ea[k].first)), 0,
                    static_cast<int>(k)});
    const auto& eb = se.fb.obj_at(xb).entries;
    for (size_t k = 0; k < eb.size(); ++k)
      es.push_back({static_cast<int>(il.right(eb[k].first)), 1,
                    static_cast<int>(k)});
    std::sort(es.begin(), es.end());
    return es;
  };
  std::vector<Mor> smm(se.dom_s.gpd->morphism_count());
  for (Mor m = 0; m < se.dom_s.gpd->morphism_count(); ++m) {
    Mor am = se.dom_s.inclusion.on_mor(m);
    auto [mf, mg] = se.prod.mor_pair(am);
    Obj sk = se.dom_s.gpd->src(m), dk = se.dom_s.gpd->dst(m);
    auto src_es = combined(good[sk]);
    auto dst_es = combined(good[dk]);
    std::map<std::pair<int, int>, int> dst_pos;  // (side, side pos) → position
    for (size_t q = 0; q < dst_es.size(); ++q)
      dst_pos[{std::get<1>(dst_es[q]), std::get<2>(dst_es[q])}] =
          static_cast<int>(q);
    const FamMorData& da = se.fa.mor_at(mf);
    const FamMorData& db = se.fb.mor_at(mg);
    std::vector<int> pi(src_es.size());
    std::vector<Mor> comps(src_es.size());
    for (size_t q = 0; q < src_es.size(); ++q) {
      auto [idx, side, k] = src_es[q];
      if (side == 0) {
        pi[q] = dst_pos.at({0, da.pi[k]});
        comps[q] = se.coprod.inl.on_mor(da.comps[k]);
      } else {
        pi[q] = dst_pos.at({1, db.pi[k]});
        comps[q] = se.coprod.inr.on_mor(db.comps[k]);
      }
    }
    smm[m] = se.fab.mor_of(som[sk], som[dk], pi, comps);
    if (smm[m] < 0)
      throw GroupoidError("seely: interleaved morphism missing from fragment");
  }
  se.s = GFunctor(se.dom_s.gpd, se.fab.gpd, std::move(som), std::move(smm));

  // sbar: split by coproduct tag, keeping the original indices
  auto split_obj = [&](const FamObject& big) {
    std::pair<FamObject, FamObject> out;
    for (const auto& [i, v] : big.entries) {
      auto [tag, vv] = se.coprod.obj_case(v);
      (tag ? out.second : out.first).entries.push_back({i, vv});
    }
    return out;
  };
  const int nfab = se.fab.gpd->object_count();
  std::vector<Obj> bom(nfab);
  for (Obj x = 0; x < nfab; ++x) {
    auto [pa, pb] = split_obj(se.fab.obj_at(x));
    Obj oa = se.fa.obj_of(pa), ob = se.fb.obj_of(pb);
    if (oa < 0 || ob < 0)
      throw GroupoidError("seely: split family leaves the side fragments");
    bom[x] = se.prod.obj_of(oa, ob);
  }
  auto tag_pos = [&](const FamObject& big) {
    std::vector<int> tg(big.entries.size()), pos(big.entries.size());
    int ca = 0, cb = 0;
    for (size_t q = 0; q < big.entries.size(); ++q) {
      int t = se.coprod.obj_case(big.entries[q].second).first;
      tg[q] = t;
      pos[q] = t ? cb++ : ca++;
    }
    return std::pair(tg, pos);
  };
  std::vector<Mor> bmm(se.fab.gpd->morphism_count());
  for (Mor m = 0; m < se.fab.gpd->morphism_count(); ++m) {
    const FamMorData& d = se.fab.mor_at(m);
    Obj sx = se.fab.gpd->src(m), dx = se.fab.gpd->dst(m);
    const FamObject& S = se.fab.obj_at(sx);
    const FamObject& D = se.fab.obj_at(dx);
    auto [stg, spos] = tag_pos(S);
    auto [dtg, dpos] = tag_pos(D);
    std::vector<int> pia, pib;
    std::vector<Mor> ca, cb;
    for (size_t q = 0; q < d.pi.size(); ++q) {
      auto [mt, mv] = se.coprod.mor_case(d.comps[q]);
      if (mt != stg[q] || dtg[d.pi[q]] != stg[q])
        throw GroupoidError("seely: component crosses the coproduct tags");
      if (mt == 0) {
        pia.push_back(dpos[d.pi[q]]);
        ca.push_back(mv);
      } else {
        pib.push_back(dpos[d.pi[q]]);
        cb.push_back(mv);
      }
    }
    auto [SA, SB] = split_obj(S);
    auto [DA, DB] = split_obj(D);
    Mor ma = se.fa.mor_of(se.fa.obj_of(SA), se.fa.obj_of(DA), pia, ca);
    Mor mb = se.fb.mor_of(se.fb.obj_of(SB), se.fb.obj_of(DB), pib, cb);
    if (ma < 0 || mb < 0)
      throw GroupoidError("seely: split morphism leaves the side fragments");
    bmm[m] = se.prod.mor_of(ma, mb);
  }
  se.sbar = GFunctor(se.fab.gpd, se.prod.gpd, std::move(bom), std::move(bmm));

  // unit: per in-range pair, the componentwise pure reindexing onto the
  // interleaved positions (identity entries — a negative symmetry)
  GFunctor sbs = functor_compose(se.sbar, se.s);
  auto reidx = [&](const FamGpd& fg, Obj xo, Obj yo) {
    const FamObject& x = fg.obj_at(xo);
    std::vector<int> pi(x.entries.size());
    std::iota(pi.begin(), pi.end(), 0);
    std::vector<Mor> cs(x.entries.size());
    for (size_t q = 0; q < x.entries.size(); ++q)
      cs[q] = fg.base->identity(x.entries[q].second);
    Mor r = fg.mor_of(xo, yo, pi, cs);
    if (r < 0)
      throw GroupoidError("seely: unit reindexing missing from the fragment");
    return r;
  };
  std::vector<Mor> ucomp(nsub);
  for (Obj k = 0; k < nsub; ++k) {
    auto [xa, xb] = se.prod.obj_pair(good[k]);
    auto [ya, yb] = se.prod.obj_pair(sbs.on_obj(k));
    ucomp[k] = se.prod.mor_of(reidx(se.fa, xa, ya), reidx(se.fb, xb, yb));
  }
  se.unit = NatIso(se.dom_s.inclusion, sbs, std::move(ucomp));

  // dom_ss and s ∘ sbar, where the split pair is itself in range
  std::vector<Obj> good2;
  se.dom_ss_of.assign(nfab, -1);
  for (Obj x = 0; x < nfab; ++x)
    if (se.dom_s_of[se.sbar.on_obj(x)] >= 0) {
      se.dom_ss_of[x] = static_cast<Obj>(good2.size());
      good2.push_back(x);
    }
  se.dom_ss = full_subgroupoid(se.fab.gpd, good2);
  std::vector<Obj> ssom(good2.size());
  for (size_t k = 0; k < good2.size(); ++k)
    ssom[k] = se.s.on_obj(se.dom_s_of[se.sbar.on_obj(good2[k])]);
  std::vector<Mor> ssmm(se.dom_ss.gpd->morphism_count());
  for (Mor m = 0; m < se.dom_ss.gpd->morphism_count(); ++m) {
    Mor pm = se.sbar.on_mor(se.dom_ss.inclusion.on_mor(m));
    Mor dm = se.dom_s.mor_of_ambient[pm];
    if (dm < 0)
      throw GroupoidError("seely: sbar image leaves the in-range domain");
    ssmm[m] = se.s.on_mor(dm);
  }
  se.s_sbar =
      GFunctor(se.dom_ss.gpd, se.fab.gpd, std::move(ssom), std::move(ssmm));

  // counit: map each re-interleaved entry back to its original position
  std::vector<Mor> ccomp(good2.size());
  for (size_t k = 0; k < good2.size(); ++k) {
    Obj kid = good2[k];
    const FamObject& K = se.fab.obj_at(kid);
    Obj lid = se.s_sbar.on_obj(static_cast<Obj>(k));
    const FamObject& L = se.fab.obj_at(lid);
    std::map<std::pair<int, int>, int> kpos;  // (tag, side pos) → position in K
    {
      int ca2 = 0, cb2 = 0;
      for (size_t q = 0; q < K.entries.size(); ++q) {
        int t = se.coprod.obj_case(K.entries[q].second).first;
        kpos[{t, t ? cb2++ : ca2++}] = static_cast<int>(q);
      }
    }
    int la = 0, lb = 0;
    std::vector<int> pi(L.entries.size());
    std::vector<Mor> cs(L.entries.size());
    for (size_t q = 0; q < L.entries.size(); ++q) {
      int t = se.coprod.obj_case(L.entries[q].second).first;
      pi[q] = kpos.at({t, t ? lb++ : la++});
      cs[q] = se.fab.base->identity(L.entries[q].second);
    }
    ccomp[k] = se.fab.mor_of(lid, kid, pi, cs);
    if (ccomp[k] < 0)
      throw GroupoidError("seely: counit reindexing missing from the fragment");
  }
  se.counit = NatIso(se.s_sbar, se.dom_ss.inclusion, std::move(ccomp));
  return se;
}

SeelyEquivalence seely(const ThinGroupoid& a, const ThinGroupoid& b,
                       const TruncationConfig& cfg,
                       const InterleavingBijection& il) {
  CoproductGpd c = coproduct(a.base(), b.base());
  return seely(a, b, fam(a.base(), cfg), fam(b.base(), cfg), fam(c.gpd, cfg),
               il);
}

SeelyEquivalence seely_curated(const ThinGroupoid& a, const ThinGroupoid& b,
                               const TruncationConfig& cfg,
                               const InterleavingBijection& il) {
  const int N = cfg.max_index;
  CoproductGpd c = coproduct(a.base(), b.base());
  auto all_objs = [](const Gpd& g) {
    std::vector<Obj> v(g->object_count());
    std::iota(v.begin(), v.end(), 0);
    return v;
  };
  std::vector<Obj> aobjs = all_objs(a.base()), bobjs = all_objs(b.base());
  // in-range interleaving arguments and their images
  std::vector<int> la, ra, li, ri;
  for (int i = 0; i < N; ++i) {
    if (il.left(i) < N) {
      la.push_back(i);
      li.push_back(static_cast<int>(il.left(i)));
    }
    if (il.right(i) < N) {
      ra.push_back(i);
      ri.push_back(static_cast<int>(il.right(i)));
    }
  }
  std::sort(li.begin(), li.end());
  std::sort(ri.begin(), ri.end());
  // side fragments: families over the argument indices plus families over the
  // image indices (the codomain shapes of sbar)
  auto side_fragment = [&](const Gpd& base, const std::vector<Obj>& objs,
                           const std::vector<int>& args,
                           const std::vector<int>& imgs) {
    auto choice = [&](int) { return objs; };
    std::vector<FamObject> fams = families_over(args, choice);
    std::set<FamObject> seen(fams.begin(), fams.end());
    for (FamObject& x : families_over(imgs, choice))
      if (seen.insert(x).second) fams.push_back(std::move(x));
    return fam_fragment(base, N, std::move(fams));
  };
  FamGpd fa = side_fragment(a.base(), aobjs, la, li);
  FamGpd fb = side_fragment(b.base(), bobjs, ra, ri);
  // coproduct-side fragment: the interleavings of the in-range pairs
  std::vector<FamObject> inter;
  std::set<FamObject> seen;
  auto lchoice = [&](int) { return aobjs; };
  auto rchoice = [&](int) { return bobjs; };
  for (const FamObject& xa : families_over(la, lchoice))
    for (const FamObject& xb : families_over(ra, rchoice)) {
      std::vector<std::pair<int, Obj>> es;
      for (const auto& [i, v] : xa.entries)
        es.push_back({static_cast<int>(il.left(i)), c.inl.on_obj(v)});
      for (const auto& [i, v] : xb.entries)
        es.push_back({static_cast<int>(il.right(i)), c.inr.on_obj(v)});
      FamObject k = fam_obj(std::move(es));
      if (seen.insert(k).second) inter.push_back(std::move(k));
    }
  FamGpd fab = fam_fragment(c.gpd, N, std::move(inter));
  return seely(a, b, std::move(fa), std::move(fb), std::move(fab), il);
}

// ---------------------------------------------------------------------------
// The Seely coherence cell

SeelyCoherence seely_coherence_cell(const Gpd& a, const Gpd& b,
                                    const TruncationConfig& cfg,
                                    const PairingFunction& p,
                                    const InterleavingBijection& il) {
  const int N = cfg.max_index;
  SeelyCoherence sc;
  sc.coprod = coproduct(a, b);
  // keep only the depth-2 trees whose two routes (interleave-then-flatten and
  // flatten-then-interleave) stay entirely in range, so every product pair is
  // a valid domain object
  auto route_ok = [&](const Tree& t, bool left) {
    for (const auto& [i, inner] : t.kids) {
      long outer = left ? il.left(i) : il.right(i);
      if (outer >= N) return false;
      for (const auto& [j, lf] : inner.kids) {
        if (p.pair(outer, j) >= N) return false;
        long flat = p.pair(i, j);
        if ((left ? il.left(flat) : il.right(flat)) >= N) return false;
      }
    }
    return true;
  };
  auto side_slot = [&](const Gpd& base, bool left) {
    std::set<Tree> keep;
    for (const Tree& t : enumerate_in_range_trees(base, 2, N, p))
      if (route_ok(t, left)) keep.insert(t);
    return make_slot(base, N, keep);
  };
  sc.sa = side_slot(a, true);
  sc.sb = side_slot(b, false);
  sc.prod2 = product(sc.sa.gpd(), sc.sb.gpd());
  std::vector<Obj> all(sc.prod2.gpd->object_count());
  std::iota(all.begin(), all.end(), 0);
  sc.dom = full_subgroupoid(sc.prod2.gpd, all);

  // flat entry lists for the two routes; `seely_route` = interleave first
  auto flat_obj = [&](Obj dom_obj, bool seely_route) {
    auto [xa, xb] = sc.prod2.obj_pair(dom_obj);
    Tree ta = sc.sa.decode_obj(xa), tb = sc.sb.decode_obj(xb);
    std::vector<std::pair<int, Obj>> es;
    auto emit = [&](const Tree& t, bool left) {
      for (const auto& [i, inner] : t.kids)
        for (const auto& [j, lf] : inner.kids) {
          long idx = seely_route
                         ? p.pair(left ? il.left(i) : il.right(i), j)
                         : (left ? il.left(p.pair(i, j))
                                 : il.right(p.pair(i, j)));
          Obj v = left ? sc.coprod.inl.on_obj(lf.leaf)
                       : sc.coprod.inr.on_obj(lf.leaf);
          es.push_back({static_cast<int>(idx), v});
        }
    };
    emit(ta, true);
    emit(tb, false);
    return fam_obj(std::move(es));
  };

  // target fragment: exactly the two images
  std::vector<FamObject> objs;
  std::set<FamObject> seen;
  for (Obj x = 0; x < sc.prod2.gpd->object_count(); ++x)
    for (bool route : {true, false}) {
      FamObject k = flat_obj(x, route);
      if (seen.insert(k).second) objs.push_back(std::move(k));
    }
  sc.fab = fam_fragment(sc.coprod.gpd, N, std::move(objs));

  auto route_functor = [&](bool seely_route) {
    std::vector<Obj> om(sc.prod2.gpd->object_count());
    for (Obj x = 0; x < sc.prod2.gpd->object_count(); ++x)
      om[x] = sc.fab.obj_of(flat_obj(x, seely_route));
    std::vector<Mor> mm(sc.prod2.gpd->morphism_count());
    for (Mor m = 0; m < sc.prod2.gpd->morphism_count(); ++m) {
      auto [ma, mb] = sc.prod2.mor_pair(m);
      MTree ta = sc.sa.decode_mor(ma), tb = sc.sb.decode_mor(mb);
      // flat src index → (flat dst index, coproduct component)
      std::map<int, std::pair<int, Mor>> flat;
      auto emit = [&](const MTree& mt, bool left) {
        for (size_t k = 0; k < mt.idx.size(); ++k) {
          auto [i, i2] = mt.idx[k];
          const MTree& inner = mt.comps[k];
          for (size_t l = 0; l < inner.idx.size(); ++l) {
            auto [j, j2] = inner.idx[l];
            Mor cm = left ? sc.coprod.inl.on_mor(inner.comps[l].leaf)
                          : sc.coprod.inr.on_mor(inner.comps[l].leaf);
            auto at = [&](long ii, long jj) {
              return seely_route
                         ? p.pair(left ? il.left(ii) : il.right(ii), jj)
                         : (left ? il.left(p.pair(ii, jj))
                                 : il.right(p.pair(ii, jj)));
            };
            flat[static_cast<int>(at(i, j))] = {static_cast<int>(at(i2, j2)),
                                                cm};
          }
        }
      };
      emit(ta, true);
      emit(tb, false);
      Obj so = om[sc.prod2.gpd->src(m)], dd = om[sc.prod2.gpd->dst(m)];
      const FamObject& dsto = sc.fab.obj_at(dd);
      std::map<int, int> dst_pos;
      for (size_t q = 0; q < dsto.entries.size(); ++q)
        dst_pos[dsto.entries[q].first] = static_cast<int>(q);
      std::vector<int> pi;
      std::vector<Mor> comps;
      for (const auto& [fi, tgt] : flat) {
        pi.push_back(dst_pos.at(tgt.first));
        comps.push_back(tgt.second);
      }
      mm[m] = sc.fab.mor_of(so, dd, pi, comps);
      if (mm[m] < 0)
        throw GroupoidError("seely_coherence_cell: route morphism missing");
    }
    return GFunctor(sc.prod2.gpd, sc.fab.gpd, std::move(om), std::move(mm));
  };
  sc.via_seely = route_functor(true);
  sc.via_mu = route_functor(false);

  // cell components: pure reindexings matching entries across the two index
  // schemes, with identity values
  std::vector<Mor> comps(sc.prod2.gpd->object_count());
  for (Obj x = 0; x < sc.prod2.gpd->object_count(); ++x) {
    auto [xa, xb] = sc.prod2.obj_pair(x);
    Tree ta = sc.sa.decode_obj(xa), tb = sc.sb.decode_obj(xb);
    // (side, i, j) → (seely index, mu index, value)
    std::vector<std::tuple<int, int, Obj>> ents;
    auto emit = [&](const Tree& t, bool left) {
      for (const auto& [i, inner] : t.kids)
        for (const auto& [j, lf] : inner.kids) {
          int si = static_cast<int>(
              p.pair(left ? il.left(i) : il.right(i), j));
          int mi = static_cast<int>(left ? il.left(p.pair(i, j))
                                         : il.right(p.pair(i, j)));
          Obj v = left ? sc.coprod.inl.on_obj(lf.leaf)
                       : sc.coprod.inr.on_obj(lf.leaf);
          ents.push_back({si, mi, v});
        }
    };
    emit(ta, true);
    emit(tb, false);
    Obj so = sc.via_seely.on_obj(x), dd = sc.via_mu.on_obj(x);
    const FamObject& dsto = sc.fab.obj_at(dd);
    std::map<int, int> dst_pos;
    for (size_t q = 0; q < dsto.entries.size(); ++q)
      dst_pos[dsto.entries[q].first] = static_cast<int>(q);
    std::sort(ents.begin(), ents.end());  // source positions by seely index
    std::vector<int> pi(ents.size());
    std::vector<Mor> cs(ents.size());
    for (size_t q = 0; q < ents.size(); ++q) {
      pi[q] = dst_pos.at(std::get<1>(ents[q]));
      cs[q] = sc.coprod.gpd->identity(std::get<2>(ents[q]));
    }
    comps[x] = sc.fab.mor_of(so, dd, pi, cs);
    if (comps[x] < 0)
      throw GroupoidError("seely_coherence_cell: component missing");
  }
  sc.cell = NatIso(sc.via_seely, sc.via_mu, std::move(comps));
  return sc;
}

// ---------------------------------------------------------------------------
// Function spaces and evaluation

ArrowObject arrow_object(const ThinGroupoid& a, const ThinGroupoid& b,
                         const TruncationConfig& cfg) {
  FamGpd fa = fam(a.base(), cfg);
  ThinGroupoid bang_a = fam_thin(a, fa);
  TensorResult arrow = build_linear_arrow(bang_a, b);
  return {std::move(fa), std::move(bang_a), std::move(arrow)};
}

Evaluation evaluation(const ThinGroupoid& a, const ThinGroupoid& b,
                      const TruncationConfig& cfg,
                      const InterleavingBijection& il) {
  const int N = cfg.max_index;
  ArrowObject ab = arrow_object(a, b, cfg);
  WithObject wab = with_product(ab.arrow.gpd, a);
  const long h = il.left(0);
  if (h >= N)
    throw GroupoidError("evaluation: arrow slot out of the index range");
  std::vector<int> tails;  // the A-side indices whose slot is in range
  for (int i = 0; i < N; ++i)
    if (il.right(i) < N) tails.push_back(i);

  // support: the part of !A × B whose argument indices are all in range
  const ProductGpd& pr = ab.arrow.prod;
  std::set<int> tail_set(tails.begin(), tails.end());
  std::vector<Obj> good;
  for (Obj z = 0; z < pr.gpd->object_count(); ++z) {
    auto [xf, xb] = pr.obj_pair(z);
    bool ok = true;
    for (const auto& [i, v] : ab.fa.obj_at(xf).entries)
      if (!tail_set.count(i)) {
        ok = false;
        break;
      }
    if (ok) good.push_back(z);
  }
  SubgroupoidInclusion sup = full_subgroupoid(pr.gpd, good);

  // the curated fragment: an optional arrow point at ι_l(0) and optional
  // arguments at the in-range ι_r(i).  Head values are restricted to the
  // support — heads with out-of-range argument indices would break the
  // orthogonality of the left leg against the negative generator
  std::vector<int> idxs;
  idxs.push_back(static_cast<int>(h));
  for (int i : tails) idxs.push_back(static_cast<int>(il.right(i)));
  std::sort(idxs.begin(), idxs.end());
  std::vector<Obj> head_vals, arg_vals;
  for (Obj z : good) head_vals.push_back(wab.coprod.inl.on_obj(z));
  for (Obj x = 0; x < a.base()->object_count(); ++x)
    arg_vals.push_back(wab.coprod.inr.on_obj(x));
  auto choice = [&](int i) {
    return i == static_cast<int>(h) ? head_vals : arg_vals;
  };
  FamGpd fev = fam_fragment(wab.coprod.gpd, N, families_over(idxs, choice));
  ThinGroupoid bw =
      ThinGroupoid::from_polarity(fam_polarity(wab.combined.polarized, fev));

  // left display: ((a_i)_I, b) ↦ [ι_l(0)·inl((a_i)_I, b)] + [ι_r(i)·inr(a_i)]
  auto slots_of = [&](Obj amb) {
    auto [xf, xb] = pr.obj_pair(amb);
    std::vector<std::pair<int, int>> es;  // (slot index, entry pos or -1)
    es.push_back({static_cast<int>(h), -1});
    const auto& ents = ab.fa.obj_at(xf).entries;
    for (size_t k = 0; k < ents.size(); ++k)
      es.push_back({static_cast<int>(il.right(ents[k].first)),
                    static_cast<int>(k)});
    std::sort(es.begin(), es.end());
    return es;
  };
  std::vector<Obj> lom(sup.gpd->object_count());
  for (Obj k = 0; k < sup.gpd->object_count(); ++k) {
    Obj amb = sup.inclusion.on_obj(k);
    auto [xf, xb] = pr.obj_pair(amb);
    std::vector<std::pair<int, Obj>> es;
    es.push_back({static_cast<int>(h), wab.coprod.inl.on_obj(amb)});
    for (const auto& [i, v] : ab.fa.obj_at(xf).entries)
      es.push_back({static_cast<int>(il.right(i)), wab.coprod.inr.on_obj(v)});
    lom[k] = fev.obj_of(fam_obj(std::move(es)));
    if (lom[k] < 0)
      throw GroupoidError("evaluation: displayed family missing");
  }
  std::vector<Mor> lmm(sup.gpd->morphism_count());
  for (Mor m = 0; m < sup.gpd->morphism_count(); ++m) {
    Mor am = sup.inclusion.on_mor(m);
    Obj ks = sup.gpd->src(m), kd = sup.gpd->dst(m);
    auto [mf, mb] = pr.mor_pair(am);
    const FamMorData& df = ab.fa.mor_at(mf);
    auto ses = slots_of(sup.inclusion.on_obj(ks));
    auto des = slots_of(sup.inclusion.on_obj(kd));
    std::map<int, int> dpos;  // entry pos (or -1 for the head) → position
    for (size_t q = 0; q < des.size(); ++q) dpos[des[q].second] =
        static_cast<int>(q);
    std::vector<int> pi(ses.size());
    std::vector<Mor> comps(ses.size());
    for (size_t q = 0; q < ses.size(); ++q) {
      auto [idx, tp] = ses[q];
      if (tp < 0) {
        pi[q] = dpos.at(-1);
        comps[q] = wab.coprod.inl.on_mor(am);
      } else {
        pi[q] = dpos.at(df.pi[tp]);
        comps[q] = wab.coprod.inr.on_mor(df.comps[tp]);
      }
    }
    lmm[m] = fev.mor_of(lom[ks], lom[kd], pi, comps);
    if (lmm[m] < 0)
      throw GroupoidError("evaluation: displayed morphism missing");
  }
  GFunctor left(sup.gpd, fev.gpd, std::move(lom), std::move(lmm));

  std::vector<Obj> rom(sup.gpd->object_count());
  for (Obj k = 0; k < sup.gpd->object_count(); ++k)
    rom[k] = pr.obj_pair(sup.inclusion.on_obj(k)).second;
  std::vector<Mor> rmm(sup.gpd->morphism_count());
  for (Mor m = 0; m < sup.gpd->morphism_count(); ++m)
    rmm[m] = pr.mor_pair(sup.inclusion.on_mor(m)).second;
  GFunctor right(sup.gpd, b.base(), std::move(rom), std::move(rmm));

  Span sp(sup.gpd, std::move(left), std::move(right));
  KleisliHom hom =
      make_kleisli_hom(wab.combined, b, std::move(sp), fev, std::move(bw), cfg);
  return {std::move(ab), std::move(wab), std::move(fev), std::move(hom)};
}

// ---------------------------------------------------------------------------
// Currying

ClosureContext closure_context(const ThinGroupoid& gamma, const ThinGroupoid& a,
                               const ThinGroupoid& b,
                               const TruncationConfig& cfg,
                               const InterleavingBijection& il) {
  ClosureContext cx{gamma, a,  b,  cfg, il, with_product(gamma, a),
                    seely(gamma, a, cfg, il), arrow_object(a, b, cfg),
                    terminal_object(), terminal_object()};
  cx.bang_gamma = fam_thin(gamma, cx.sely.fa);
  cx.bang_ga = fam_thin(cx.ga.combined, cx.sely.fab);
  return cx;
}

namespace {

Span curry_span(const Span& sp, const ClosureContext& cx) {
  GFunctor lsb = functor_compose(cx.sely.sbar, sp.left);
  GFunctor left = functor_compose(cx.sely.prod.pl, lsb);
  GFunctor ra = functor_compose(cx.sely.prod.pr, lsb);
  GFunctor right = pair_functor(ra, sp.right, cx.ab.arrow.prod);
  return Span(sp.support, std::move(left), std::move(right));
}

struct UncurryParts {
  std::vector<Obj> good;     // kept support objects, in ambient ids
  std::vector<Obj> sub_of;   // ambient id → restricted id, -1 outside
  SubgroupoidInclusion sub;  // the restricted support
  GFunctor pairdisp;         // restricted support → dom_s
  Span span;                 // the uncurried span
};

UncurryParts uncurry_parts(const Span& sp, const ClosureContext& cx) {
  if (!same_gpd(sp.left_base(), cx.sely.fa.gpd) ||
      !same_gpd(sp.right_base(), cx.ab.arrow.prod.gpd))
    throw GroupoidError("uncurry: span boundary does not match the context");
  UncurryParts up;
  const ProductGpd& ap = cx.ab.arrow.prod;
  up.sub_of.assign(sp.support->object_count(), -1);
  for (Obj u = 0; u < sp.support->object_count(); ++u) {
    Obj lg = sp.left.on_obj(u);
    Obj rf = ap.obj_pair(sp.right.on_obj(u)).first;
    if (cx.sely.dom_s_of[cx.sely.prod.obj_of(lg, rf)] >= 0) {
      up.sub_of[u] = static_cast<Obj>(up.good.size());
      up.good.push_back(u);
    }
  }
  up.sub = full_subgroupoid(sp.support, up.good);
  std::vector<Obj> pom(up.good.size());
  for (size_t k = 0; k < up.good.size(); ++k) {
    Obj u = up.good[k];
    Obj lg = sp.left.on_obj(u);
    Obj rf = ap.obj_pair(sp.right.on_obj(u)).first;
    pom[k] = cx.sely.dom_s_of[cx.sely.prod.obj_of(lg, rf)];
  }
  std::vector<Mor> pmm(up.sub.gpd->morphism_count());
  for (Mor m = 0; m < up.sub.gpd->morphism_count(); ++m) {
    Mor am = up.sub.inclusion.on_mor(m);
    Mor lm = sp.left.on_mor(am);
    Mor rfm = ap.mor_pair(sp.right.on_mor(am)).first;
    Mor dm = cx.sely.dom_s.mor_of_ambient[cx.sely.prod.mor_of(lm, rfm)];
    if (dm < 0)
      throw GroupoidError("uncurry: displayed pair leaves the in-range domain");
    pmm[m] = dm;
  }
  up.pairdisp =
      GFunctor(up.sub.gpd, cx.sely.dom_s.gpd, std::move(pom), std::move(pmm));
  GFunctor left = functor_compose(cx.sely.s, up.pairdisp);
  std::vector<Obj> rom(up.good.size());
  for (size_t k = 0; k < up.good.size(); ++k)
    rom[k] = ap.obj_pair(sp.right.on_obj(up.good[k])).second;
  std::vector<Mor> rmm(up.sub.gpd->morphism_count());
  for (Mor m = 0; m < up.sub.gpd->morphism_count(); ++m)
    rmm[m] = ap.mor_pair(sp.right.on_mor(up.sub.inclusion.on_mor(m))).second;
  GFunctor right(up.sub.gpd, cx.b.base(), std::move(rom), std::move(rmm));
  up.span = Span(up.sub.gpd, std::move(left), std::move(right));
  return up;
}

}  // namespace

KleisliHom curry(const KleisliHom& s, const ClosureContext& cx) {
  if (!same_gpd(s.fsrc.gpd, cx.sely.fab.gpd) ||
      !same_gpd(s.dst().base(), cx.b.base()))
    throw GroupoidError("curry: hom boundary does not match the context");
  Span sp = curry_span(s.span(), cx);
  return make_kleisli_hom(cx.gamma, cx.ab.arrow.gpd, std::move(sp), cx.sely.fa,
                          cx.bang_gamma, s.cfg);
}

KleisliHom uncurry(const KleisliHom& s, const ClosureContext& cx) {
  if (!same_gpd(s.fsrc.gpd, cx.sely.fa.gpd))
    throw GroupoidError("uncurry: hom boundary does not match the context");
  UncurryParts up = uncurry_parts(s.span(), cx);
  return make_kleisli_hom(cx.ga.combined, cx.b, std::move(up.span),
                          cx.sely.fab, cx.bang_ga, s.cfg);
}

WeakMorphism curry_cell(const WeakMorphism& w, const ClosureContext& cx) {
  Span csrc = curry_span(w.src, cx);
  Span cdst = curry_span(w.dst, cx);
  NatIso fl = whisker(functor_compose(cx.sely.prod.pl, cx.sely.sbar),
                      w.fill_left);
  std::vector<Mor> frc(w.src.support->object_count());
  for (Obj x = 0; x < w.src.support->object_count(); ++x) {
    Mor pm = cx.sely.sbar.on_mor(w.fill_left.component(x));
    frc[x] = cx.ab.arrow.prod.mor_of(cx.sely.prod.mor_pair(pm).second,
                                     w.fill_right.component(x));
  }
  NatIso fr(csrc.right, functor_compose(cdst.right, w.support_functor),
            std::move(frc));
  return WeakMorphism(std::move(csrc), std::move(cdst), w.support_functor,
                      std::move(fl), std::move(fr));
}

WeakMorphism uncurry_cell(const WeakMorphism& w, const ClosureContext& cx) {
  UncurryParts ps = uncurry_parts(w.src, cx);
  UncurryParts pd = uncurry_parts(w.dst, cx);
  std::vector<Obj> om(ps.good.size());
  for (size_t k = 0; k < ps.good.size(); ++k) {
    Obj v = pd.sub_of[w.support_functor.on_obj(ps.good[k])];
    if (v < 0)
      throw GroupoidError("uncurry_cell: image leaves the in-range support");
    om[k] = v;
  }
  std::vector<Mor> mm(ps.sub.gpd->morphism_count());
  for (Mor m = 0; m < ps.sub.gpd->morphism_count(); ++m) {
    Mor wm = w.support_functor.on_mor(ps.sub.inclusion.on_mor(m));
    mm[m] = pd.sub.mor_of_ambient[wm];
    if (mm[m] < 0)
      throw GroupoidError("uncurry_cell: image leaves the in-range support");
  }
  GFunctor F(ps.sub.gpd, pd.sub.gpd, std::move(om), std::move(mm));
  const ProductGpd& ap = cx.ab.arrow.prod;
  std::vector<Mor> flc(ps.good.size()), frc(ps.good.size());
  for (size_t k = 0; k < ps.good.size(); ++k) {
    Obj u = ps.good[k];
    Mor ml = w.fill_left.component(u);
    Mor mr = w.fill_right.component(u);
    auto [mf, mb] = ap.mor_pair(mr);
    Mor pm = cx.sely.prod.mor_of(ml, mf);
    Mor dm = cx.sely.dom_s.mor_of_ambient[pm];
    if (dm < 0)
      throw GroupoidError("uncurry_cell: fill leaves the in-range domain");
    flc[k] = cx.sely.s.on_mor(dm);
    frc[k] = mb;
  }
  NatIso fl(ps.span.left, functor_compose(pd.span.left, F), std::move(flc));
  NatIso fr(ps.span.right, functor_compose(pd.span.right, F), std::move(frc));
  return WeakMorphism(ps.span, pd.span, std::move(F), std::move(fl),
                      std::move(fr));
}

ClosureCell closure_unit(const KleisliHom& s, const ClosureContext& cx) {
  KleisliHom uc = uncurry(s, cx);
  KleisliHom cu = curry(uc, cx);
  UncurryParts up = uncurry_parts(s.span(), cx);
  const GFunctor& F = up.sub.inclusion;
  const int n = up.sub.gpd->object_count();
  std::vector<Mor> flc(n), frc(n);
  for (Obj k = 0; k < n; ++k) {
    Obj u = up.good[k];
    Mor u0 = cx.sely.unit.component(up.pairdisp.on_obj(k));
    auto [ia, ib] = cx.sely.prod.mor_pair(cx.sely.prod.gpd->inverse(u0));
    flc[k] = ia;
    Obj rb = cx.ab.arrow.prod.obj_pair(s.span().right.on_obj(u)).second;
    frc[k] = cx.ab.arrow.prod.mor_of(ib, cx.b.base()->identity(rb));
  }
  NatIso fl(cu.span().left, functor_compose(s.span().left, F), std::move(flc));
  NatIso fr(cu.span().right, functor_compose(s.span().right, F),
            std::move(frc));
  WeakMorphism cell(cu.span(), s.span(), F, std::move(fl), std::move(fr));
  return {std::move(cu), std::move(cell)};
}

ClosureCell closure_counit(const KleisliHom& t, const ClosureContext& cx) {
  KleisliHom c = curry(t, cx);
  KleisliHom uc = uncurry(c, cx);
  UncurryParts up = uncurry_parts(c.span(), cx);
  const GFunctor& F = up.sub.inclusion;
  const int n = up.sub.gpd->object_count();
  std::vector<Mor> flc(n), frc(n);
  for (Obj k = 0; k < n; ++k) {
    Obj u = up.good[k];
    Obj big = t.span().left.on_obj(u);
    Obj kk = cx.sely.dom_ss_of[big];
    if (kk < 0)
      throw GroupoidError(
          "closure_counit: split image leaves the in-range domain");
    flc[k] = cx.sely.counit.component(kk);
    frc[k] = cx.b.base()->identity(t.span().right.on_obj(u));
  }
  NatIso fl(uc.span().left, functor_compose(t.span().left, F), std::move(flc));
  NatIso fr(uc.span().right, functor_compose(t.span().right, F),
            std::move(frc));
  WeakMorphism cell(uc.span(), t.span(), F, std::move(fl), std::move(fr));
  return {std::move(uc), std::move(cell)};
}

// ---------------------------------------------------------------------------
// Adjoint-equivalence verification

namespace {

// Strong span automorphisms fixing both displays, up to the limit.
std::vector<WeakMorphism> display_autos(const Span& s, size_t limit) {
  std::vector<WeakMorphism> out;
  for (const GFunctor& f : enumerate_functor_isos(s.support, s.support)) {
    if (functor_compose(s.left, f) == s.left &&
        functor_compose(s.right, f) == s.right) {
      out.push_back(WeakMorphism::strong(s, s, f));
      if (out.size() >= limit) break;
    }
  }
  return out;
}

std::optional<WeakMorphism> positive_iso(const Span& x, const Span& y,
                                         const SpanPolarity& pol) {
  auto iso = span_iso_search(x, y);
  if (!iso) return std::nullopt;
  return positivize(*iso, pol).first.underlying;
}

WeakMorphism positivized(const WeakMorphism& w, const SpanPolarity& pol) {
  return positivize(w, pol).first.underlying;
}

}  // namespace

CertReport verify_product_adjequiv(const ThinGroupoid& gamma,
                                   const WithObject& w,
                                   const std::vector<ProductInstance>& instances,
                                   const TruncationConfig& cfg,
                                   const PairingFunction& p) {
  CertReport rep;
  if (instances.empty()) {
    rep.checked.push_back("no instances: vacuous pass");
    return rep;
  }
  Projections prj = projections(w, cfg);
  for (size_t n = 0; n < instances.size(); ++n) {
    const std::string tag = "instance " + std::to_string(n) + ": ";
    const KleisliHom& S = instances[n].s;
    const KleisliHom& T = instances[n].t;
    try {
      SpanPolarity pol_a{fam_polarity(gamma.polarized, S.fsrc),
                         w.left.polarized};
      SpanPolarity pol_b{pol_a.left, w.right.polarized};
      SpanPolarity pol_ab{pol_a.left, w.combined.polarized};
      KleisliHom U = pairing(S, T, w);
      KleisliHom PL = kleisli_compose(U, prj.pl, p);
      KleisliHom PR = kleisli_compose(U, prj.pr, p);
      auto wa = positive_iso(PL.span(), S.span(), pol_a);
      auto wb = positive_iso(PR.span(), T.span(), pol_b);
      if (!wa || !wb) {
        rep.fail(tag + "no span isomorphism π̄ ⊙ ⟨S,T⟩ ≅ component");
        continue;
      }
      rep.checked.push_back(tag + "ω^A, ω^B exist and positivize");
      KleisliHom V = pairing(PL, PR, w);
      auto wbar = positive_iso(U.span(), V.span(), pol_ab);
      if (!wbar) {
        rep.fail(tag + "no span isomorphism ⟨S,T⟩ ≅ ⟨π̄_l⊙⟨S,T⟩, π̄_r⊙⟨S,T⟩⟩");
        continue;
      }
      // zigzag 1: ⟨ω^A, ω^B⟩ ∘ ω̄ = id
      WeakMorphism pc = pairing_cell(*wa, *wb, w, S.fsrc);
      WeakMorphism z1 = weak_morphism_vcompose(pc, *wbar);
      if (weak_morphism_equal(positivized(z1, pol_ab),
                              WeakMorphism::identity(U.span())))
        rep.checked.push_back(tag + "zigzag ⟨ω^A,ω^B⟩ ∘ ω̄ = id");
      else
        rep.fail(tag + "zigzag ⟨ω^A,ω^B⟩ ∘ ω̄ ≠ id");
      // zigzag 2: whiskering ω̄⁻¹ into a projection cancels the comparison
      PositiveWeakMorphism winv(
          positivized(weak_morphism_inverse(*wbar), pol_ab), pol_ab);
      for (int side = 0; side < 2; ++side) {
        const KleisliHom& pj = side ? prj.pr : prj.pl;
        const SpanPolarity& pol_x = side ? pol_b : pol_a;
        const KleisliHom& px = side ? PR : PL;
        KleisliHom pxv = kleisli_compose(V, pj, p);
        auto wx2 = positive_iso(pxv.span(), px.span(), pol_x);
        if (!wx2) {
          rep.fail(tag + "no comparison iso for the second zigzag");
          continue;
        }
        PositiveWeakMorphism wh = kleisli_whisker_left(winv, U, V, pj, p);
        WeakMorphism z2 = weak_morphism_vcompose(*wx2, wh.underlying);
        if (weak_morphism_equal(positivized(z2, pol_x),
                                WeakMorphism::identity(px.span())))
          rep.checked.push_back(tag + (side ? "zigzag at π̄_r = id"
                                            : "zigzag at π̄_l = id"));
        else
          rep.fail(tag + (side ? "zigzag at π̄_r ≠ id"
                                : "zigzag at π̄_l ≠ id"));
      }
      // naturality of ω^A against display-preserving automorphisms of S
      if (n == 0) {
        for (const WeakMorphism& g : display_autos(S.span(), 3)) {
          WeakMorphism pcg = pairing_cell(g, WeakMorphism::identity(T.span()),
                                          w, S.fsrc);
          PositiveWeakMorphism ppcg(positivized(pcg, pol_ab), pol_ab);
          PositiveWeakMorphism whg =
              kleisli_whisker_left(ppcg, U, U, prj.pl, p);
          WeakMorphism lhs = weak_morphism_vcompose(*wa, whg.underlying);
          WeakMorphism rhs = weak_morphism_vcompose(g, *wa);
          if (weak_morphism_equal(positivized(lhs, pol_a),
                                  positivized(rhs, pol_a)))
            rep.checked.push_back(tag + "ω^A natural against a support auto");
          else
            rep.fail(tag + "ω^A not natural against a support auto");
        }
      }
    } catch (const GroupoidError& e) {
      rep.fail(tag + e.what());
    }
  }
  return rep;
}

CertReport verify_closure_adjequiv(const ClosureContext& cx,
                                   const std::vector<KleisliHom>& arrow_homs,
                                   const std::vector<KleisliHom>& with_homs,
                                   const PairingFunction& p) {
  CertReport rep;
  if (arrow_homs.empty() && with_homs.empty()) {
    rep.checked.push_back("no instances: vacuous pass");
    return rep;
  }
  SpanPolarity pol_arrow{fam_polarity(cx.gamma.polarized, cx.sely.fa),
                         cx.ab.arrow.gpd.polarized};
  SpanPolarity pol_with{fam_polarity(cx.ga.combined.polarized, cx.sely.fab),
                        cx.b.polarized};
  std::optional<Projections> prj;
  std::optional<Evaluation> ev;
  for (size_t n = 0; n < arrow_homs.size(); ++n) {
    const std::string tag = "S[" + std::to_string(n) + "]: ";
    const KleisliHom& S = arrow_homs[n];
    try {
      ClosureCell u = closure_unit(S, cx);
      if (is_invertible(u.cell) && is_positive_2cell(u.cell, pol_arrow))
        rep.checked.push_back(tag + "unit curry(uncurry(S)) ⇒ S positive iso");
      else
        rep.fail(tag + "unit is not a positive isomorphism");
      KleisliHom ucS = uncurry(S, cx);
      ClosureCell c2 = closure_counit(ucS, cx);
      if (is_invertible(c2.cell) && is_positive_2cell(c2.cell, pol_with))
        rep.checked.push_back(tag + "counit at uncurry(S) positive iso");
      else
        rep.fail(tag + "counit at uncurry(S) is not a positive isomorphism");
      // zigzag: the uncurried unit equals the counit at uncurry(S)
      WeakMorphism z = uncurry_cell(u.cell, cx);
      if (weak_morphism_equal(positivized(z, pol_with),
                              positivized(c2.cell, pol_with)))
        rep.checked.push_back(tag + "zigzag uncurry(unit) = counit");
      else
        rep.fail(tag + "zigzag uncurry(unit) ≠ counit");
      // ev ⊙_! (S & id) ≅ uncurry(S)
      if (!prj) prj = projections(cx.ga, cx.cfg);
      if (!ev) ev = evaluation(cx.a, cx.b, cx.cfg, cx.il);
      KleisliHom sA = kleisli_compose(prj->pl, S, p);
      KleisliHom SA = pairing(sA, prj->pr, ev->withab);
      KleisliHom lhs = kleisli_compose(SA, ev->hom, p);
      auto iso = positive_iso(lhs.span(), ucS.span(), pol_with);
      if (iso)
        rep.checked.push_back(tag + "ev ⊙ (S & id) ≅ uncurry(S)");
      else
        rep.fail(tag + "no span isomorphism ev ⊙ (S & id) ≅ uncurry(S)");
    } catch (const GroupoidError& e) {
      rep.fail(tag + e.what());
    }
  }
  for (size_t n = 0; n < with_homs.size(); ++n) {
    const std::string tag = "T[" + std::to_string(n) + "]: ";
    const KleisliHom& T = with_homs[n];
    try {
      ClosureCell c1 = closure_counit(T, cx);
      if (is_invertible(c1.cell) && is_positive_2cell(c1.cell, pol_with))
        rep.checked.push_back(tag + "counit uncurry(curry(T)) ⇒ T positive iso");
      else
        rep.fail(tag + "counit is not a positive isomorphism");
      KleisliHom cT = curry(T, cx);
      ClosureCell u2 = closure_unit(cT, cx);
      if (is_invertible(u2.cell) && is_positive_2cell(u2.cell, pol_arrow))
        rep.checked.push_back(tag + "unit at curry(T) positive iso");
      else
        rep.fail(tag + "unit at curry(T) is not a positive isomorphism");
      // zigzag: the curried counit equals the unit at curry(T)
      WeakMorphism z = curry_cell(c1.cell, cx);
      if (weak_morphism_equal(positivized(z, pol_arrow),
                              positivized(u2.cell, pol_arrow)))
        rep.checked.push_back(tag + "zigzag curry(counit) = unit");
      else
        rep.fail(tag + "zigzag curry(counit) ≠ unit");
    } catch (const GroupoidError& e) {
      rep.fail(tag + e.what());
    }
  }
  return rep;
}

}  // namespace thinspan
