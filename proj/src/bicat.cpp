#include "thinspan/bicat.hpp"

namespace thinspan {

ThinHom make_thin_hom(const ThinGroupoid& a, const ThinGroupoid& b, Span s) {
  if (!same_gpd(s.left_base(), a.base()) || !same_gpd(s.right_base(), b.base()))
    throw GroupoidError("make_thin_hom: span boundary does not match");
  CertReport cert = certify_thin_membership(s, a, b);
  if (!cert.pass)
    throw GroupoidError("make_thin_hom: certificate failed: " +
                        cert.failures.front());
  return {a, b, std::move(s), std::move(cert)};
}

ThinHom identity_hom(const ThinGroupoid& a) {
  return make_thin_hom(a, a, Span::identity_span(a.base()));
}

ThinHom hcompose(const ThinHom& s, const ThinHom& t) {
  if (!same_gpd(s.b.base(), t.a.base()))
    throw GroupoidError("hcompose: homs do not compose");
  return make_thin_hom(s.a, t.b, compose_spans(s.span, t.span).span);
}

PositiveWeakMorphism hcompose_2cells(const PositiveWeakMorphism& f,
                                     const PositiveWeakMorphism& g,
                                     const SpanPolarity& ab,
                                     const SpanPolarity& bc) {
  const WeakMorphism& F = f.underlying;
  const WeakMorphism& G = g.underlying;
  if (!same_gpd(F.src.right_base(), G.src.left_base()))
    throw GroupoidError("hcompose_2cells: 2-cells do not compose");
  ComposedSpan srcc = compose_spans(F.src, G.src);
  ComposedSpan dstc = compose_spans(F.dst, G.dst);
  Cospan mid(F.dst.right, G.dst.left);
  const Gpd& bb = F.dst.right_base();
  const Gpd& sup_s = F.dst.support;
  const Gpd& sup_t = G.dst.support;

  auto build = [&](bool last_solution) {
    const int n = srcc.span.support->object_count();
    std::vector<ReindexingSolution> sol(n);
    std::vector<Obj> om(n);
    for (Obj x = 0; x < n; ++x) {
      auto [sx, tx] = srcc.pb.obj_pairs[x];
      Obj fs = F.support_functor.on_obj(sx);
      Obj gt = G.support_functor.on_obj(tx);
      Mor phi = F.fill_right.component(sx);
      Mor psi = G.fill_left.component(tx);
      Mor theta = bb->compose(psi, bb->inverse(phi));
      auto sols = solve_reindexing(mid, {fs, gt, theta});
      if (sols.empty())
        throw GroupoidError(
            "hcompose_2cells: unsolvable middle reindexing (uniformity "
            "violation)");
      sol[x] = last_solution ? sols.back() : sols.front();
      om[x] = dstc.pb.obj_of(sup_s->dst(sol[x].phi), sup_t->src(sol[x].psi));
      if (om[x] < 0)
        throw GroupoidError("hcompose_2cells: solution outside the pullback");
    }
    const int nm = srcc.span.support->morphism_count();
    std::vector<Mor> mm(nm);
    for (Mor m = 0; m < nm; ++m) {
      auto [u, v] = srcc.pb.mor_pairs[m];
      Obj x0 = srcc.span.support->src(m), x1 = srcc.span.support->dst(m);
      Mor u2 = sup_s->compose(
          sol[x1].phi, sup_s->compose(F.support_functor.on_mor(u),
                                      sup_s->inverse(sol[x0].phi)));
      Mor v2 = sup_t->compose(
          sup_t->inverse(sol[x1].psi),
          sup_t->compose(G.support_functor.on_mor(v), sol[x0].psi));
      mm[m] = dstc.pb.mor_of(u2, v2);
      if (mm[m] < 0)
        throw GroupoidError("hcompose_2cells: transported pair leaves the "
                            "pullback");
    }
    GFunctor h(srcc.span.support, dstc.span.support, std::move(om),
               std::move(mm));
    const Gpd& aa = F.src.left.dst();
    const Gpd& cc = G.src.right.dst();
    std::vector<Mor> fl(n), fr(n);
    for (Obj x = 0; x < n; ++x) {
      auto [sx, tx] = srcc.pb.obj_pairs[x];
      fl[x] = aa->compose(F.dst.left.on_mor(sol[x].phi),
                          F.fill_left.component(sx));
      fr[x] = cc->compose(G.dst.right.on_mor(sup_t->inverse(sol[x].psi)),
                          G.fill_right.component(tx));
    }
    NatIso fill_l(srcc.span.left, functor_compose(dstc.span.left, h), fl);
    NatIso fill_r(srcc.span.right, functor_compose(dstc.span.right, h), fr);
    return WeakMorphism(srcc.span, dstc.span, h, fill_l, fill_r);
  };

  SpanPolarity ac{ab.left, bc.right};
  auto first = positivize(build(false), ac);
  auto second = positivize(build(true), ac);
  if (!weak_morphism_equal(first.first.underlying, second.first.underlying))
    throw GroupoidError(
        "hcompose_2cells: positive result depends on the solution order");
  return first.first;
}

CoherenceCell::CoherenceCell(CellKind k, WeakMorphism w)
    : kind(k), data(std::move(w)) {
  if (!is_strong(data) || !is_invertible(data))
    throw GroupoidError("coherence cell must be strong and invertible");
}

CoherenceCell unitor_left(const Span& s, const Gpd& b) {
  ComposedSpan comp = compose_spans(s, Span::identity_span(b));
  return {CellKind::unitor_left,
          WeakMorphism::strong(comp.span, s, comp.pb.pl)};
}

CoherenceCell unitor_right(const Span& s, const Gpd& a) {
  ComposedSpan comp = compose_spans(Span::identity_span(a), s);
  return {CellKind::unitor_right,
          WeakMorphism::strong(comp.span, s, comp.pb.pr)};
}

CoherenceCell associator(const Span& s, const Span& t, const Span& u) {
  ComposedSpan tu = compose_spans(t, u);
  ComposedSpan lhs = compose_spans(s, tu.span);
  ComposedSpan st = compose_spans(s, t);
  ComposedSpan rhs = compose_spans(st.span, u);
  const int n = lhs.span.support->object_count();
  std::vector<Obj> om(n);
  for (Obj x = 0; x < n; ++x) {
    auto [sx, tux] = lhs.pb.obj_pairs[x];
    auto [tx, ux] = tu.pb.obj_pairs[tux];
    om[x] = rhs.pb.obj_of(st.pb.obj_of(sx, tx), ux);
    if (om[x] < 0) throw GroupoidError("associator: reassociation failed");
  }
  const int nm = lhs.span.support->morphism_count();
  std::vector<Mor> mm(nm);
  for (Mor m = 0; m < nm; ++m) {
    auto [sm, tum] = lhs.pb.mor_pairs[m];
    auto [tm, um] = tu.pb.mor_pairs[tum];
    mm[m] = rhs.pb.mor_of(st.pb.mor_of(sm, tm), um);
    if (mm[m] < 0) throw GroupoidError("associator: reassociation failed");
  }
  GFunctor h(lhs.span.support, rhs.span.support, std::move(om), std::move(mm));
  return {CellKind::associator, WeakMorphism::strong(lhs.span, rhs.span, h)};
}

WeakMorphism whisker_inner(const WeakMorphism& cell, const Span& outer) {
  if (!is_strong(cell))
    throw GroupoidError("whiskering is defined for strong cells");
  ComposedSpan src = compose_spans(cell.src, outer);
  ComposedSpan dst = compose_spans(cell.dst, outer);
  const int n = src.span.support->object_count();
  std::vector<Obj> om(n);
  for (Obj x = 0; x < n; ++x) {
    auto [sx, yx] = src.pb.obj_pairs[x];
    om[x] = dst.pb.obj_of(cell.support_functor.on_obj(sx), yx);
    if (om[x] < 0) throw GroupoidError("whisker_inner: image outside pullback");
  }
  const int nm = src.span.support->morphism_count();
  std::vector<Mor> mm(nm);
  for (Mor m = 0; m < nm; ++m) {
    auto [sm, ym] = src.pb.mor_pairs[m];
    mm[m] = dst.pb.mor_of(cell.support_functor.on_mor(sm), ym);
    if (mm[m] < 0) throw GroupoidError("whisker_inner: image outside pullback");
  }
  GFunctor h(src.span.support, dst.span.support, std::move(om), std::move(mm));
  return WeakMorphism::strong(src.span, dst.span, h);
}

WeakMorphism whisker_outer(const Span& inner, const WeakMorphism& cell) {
  if (!is_strong(cell))
    throw GroupoidError("whiskering is defined for strong cells");
  ComposedSpan src = compose_spans(inner, cell.src);
  ComposedSpan dst = compose_spans(inner, cell.dst);
  const int n = src.span.support->object_count();
  std::vector<Obj> om(n);
  for (Obj x = 0; x < n; ++x) {
    auto [xx, tx] = src.pb.obj_pairs[x];
    om[x] = dst.pb.obj_of(xx, cell.support_functor.on_obj(tx));
    if (om[x] < 0) throw GroupoidError("whisker_outer: image outside pullback");
  }
  const int nm = src.span.support->morphism_count();
  std::vector<Mor> mm(nm);
  for (Mor m = 0; m < nm; ++m) {
    auto [xm, tm] = src.pb.mor_pairs[m];
    mm[m] = dst.pb.mor_of(xm, cell.support_functor.on_mor(tm));
    if (mm[m] < 0) throw GroupoidError("whisker_outer: image outside pullback");
  }
  GFunctor h(src.span.support, dst.span.support, std::move(om), std::move(mm));
  return WeakMorphism::strong(src.span, dst.span, h);
}

// strong invertible span automorphisms (display-preserving support autos)
static std::vector<WeakMorphism> strong_autos(const Span& s, size_t limit) {
  std::vector<WeakMorphism> out;
  for (const GFunctor& h : enumerate_functor_isos(s.support, s.support)) {
    if (functor_compose(s.left, h) == s.left &&
        functor_compose(s.right, h) == s.right) {
      out.push_back(WeakMorphism::strong(s, s, h));
      if (out.size() >= limit) break;
    }
  }
  return out;
}

CertReport verify_bicategory_laws(const std::vector<BicatInstance>& instances) {
  CertReport rep;
  if (instances.empty()) {
    rep.checked.push_back("no instances: vacuous pass");
    return rep;
  }
  for (size_t k = 0; k < instances.size(); ++k) {
    const BicatInstance& inst = instances[k];
    std::string tag = "instance[" + std::to_string(k) + "]: ";
    try {
      const Span &s = inst.s.span, &t = inst.t.span, &u = inst.u.span,
                 &v = inst.v.span;
      // pentagon
      Span cuv = compose_spans(u, v).span;
      Span cst = compose_spans(s, t).span;
      Span ctu = compose_spans(t, u).span;
      WeakMorphism route_a = weak_morphism_vcompose(
          associator(cst, u, v).data, associator(s, t, cuv).data);
      WeakMorphism route_b = weak_morphism_vcompose(
          whisker_inner(associator(s, t, u).data, v),
          weak_morphism_vcompose(associator(s, ctu, v).data,
                                 whisker_outer(s, associator(t, u, v).data)));
      if (weak_morphism_equal(route_a, route_b))
        rep.checked.push_back(tag + "pentagon");
      else
        rep.fail(tag + "pentagon fails");
      // triangle
      Span id_b = Span::identity_span(inst.b.base());
      WeakMorphism tri_l = whisker_outer(s, unitor_right(t, inst.b.base()).data);
      WeakMorphism tri_r = weak_morphism_vcompose(
          whisker_inner(unitor_left(s, inst.b.base()).data, t),
          associator(s, id_b, t).data);
      if (weak_morphism_equal(tri_l, tri_r))
        rep.checked.push_back(tag + "triangle");
      else
        rep.fail(tag + "triangle fails");
      // naturality of the unitors and the associator against strong autos
      std::vector<WeakMorphism> autos = strong_autos(s, 3);
      bool nat_ok = true;
      for (const WeakMorphism& w : autos) {
        WeakMorphism lam = unitor_left(s, inst.b.base()).data;
        WeakMorphism rho = unitor_right(s, inst.a.base()).data;
        if (!weak_morphism_equal(
                weak_morphism_vcompose(w, lam),
                weak_morphism_vcompose(lam, whisker_inner(w, id_b))))
          nat_ok = false;
        if (!weak_morphism_equal(
                weak_morphism_vcompose(w, rho),
                weak_morphism_vcompose(
                    rho, whisker_outer(Span::identity_span(inst.a.base()), w))))
          nat_ok = false;
        WeakMorphism alpha = associator(s, t, u).data;
        if (!weak_morphism_equal(
                weak_morphism_vcompose(alpha, whisker_inner(w, ctu)),
                weak_morphism_vcompose(
                    whisker_inner(whisker_inner(w, t), u), alpha)))
          nat_ok = false;
      }
      if (nat_ok)
        rep.checked.push_back(tag + "unitor/associator naturality (" +
                              std::to_string(autos.size()) + " cells)");
      else
        rep.fail(tag + "a naturality square fails");
      // functoriality on identities and interchange
      SpanPolarity pab{inst.a.polarized, inst.b.polarized};
      SpanPolarity pbc{inst.b.polarized, inst.c.polarized};
      PositiveWeakMorphism id_s(WeakMorphism::identity(s), pab);
      PositiveWeakMorphism id_t(WeakMorphism::identity(t), pbc);
      PositiveWeakMorphism hid = hcompose_2cells(id_s, id_t, pab, pbc);
      if (weak_morphism_equal(
              hid.underlying,
              WeakMorphism::identity(compose_spans(s, t).span)))
        rep.checked.push_back(tag + "horizontal composition preserves ids");
      else
        rep.fail(tag + "hcompose_2cells(id, id) is not the identity");
      PositiveWeakMorphism w1 =
          autos.empty() ? id_s : PositiveWeakMorphism(autos.front(), pab);
      PositiveWeakMorphism w2 =
          autos.size() > 1 ? PositiveWeakMorphism(autos[1], pab) : w1;
      PositiveWeakMorphism vl(
          weak_morphism_vcompose(w2.underlying, w1.underlying), pab);
      PositiveWeakMorphism lhs = hcompose_2cells(vl, id_t, pab, pbc);
      PositiveWeakMorphism rhs(
          weak_morphism_vcompose(hcompose_2cells(w2, id_t, pab, pbc).underlying,
                                 hcompose_2cells(w1, id_t, pab, pbc).underlying),
          {pab.left, pbc.right});
      if (weak_morphism_equal(lhs.underlying, rhs.underlying))
        rep.checked.push_back(tag + "interchange");
      else
        rep.fail(tag + "interchange fails");
    } catch (const GroupoidError& e) {
      rep.fail(tag + e.what());
    }
  }
  return rep;
}

}  // namespace thinspan
