#include "thinspan/base.hpp"

#include <algorithm>
#include <numeric>

namespace thinspan {

FamObject fam_obj(std::vector<std::pair<int, Obj>> entries) {
  std::sort(entries.begin(), entries.end());
  for (size_t k = 1; k < entries.size(); ++k)
    if (entries[k].first == entries[k - 1].first)
      throw GroupoidError("fam_obj: duplicate index " +
                          std::to_string(entries[k].first));
  return FamObject{std::move(entries)};
}

Obj FamGpd::obj_of(const FamObject& x) const {
  auto it = obj_ids.find(x);
  return it == obj_ids.end() ? -1 : it->second;
}

Mor FamGpd::mor_of(Obj s, Obj d, const std::vector<int>& pi,
                   const std::vector<Mor>& comps) const {
  auto it = mor_ids.find({s, d, pi, comps});
  return it == mor_ids.end() ? -1 : it->second;
}

std::vector<FamObject> all_family_objects(const Gpd& a, int max_index) {
  if (max_index < 1) throw GroupoidError("max_index must be at least 1");
  std::vector<FamObject> out;
  const int nobj = a->object_count();
  for (int mask = 0; mask < (1 << max_index); ++mask) {
    std::vector<int> idx;
    for (int i = 0; i < max_index; ++i)
      if (mask & (1 << i)) idx.push_back(i);
    if (!idx.empty() && nobj == 0) continue;  // no entries available
    std::vector<int> choice(idx.size(), 0);
    while (true) {
      FamObject x;
      for (size_t k = 0; k < idx.size(); ++k)
        x.entries.push_back({idx[k], static_cast<Obj>(choice[k])});
      out.push_back(std::move(x));
      int k = static_cast<int>(idx.size()) - 1;
      while (k >= 0 && choice[k] == nobj - 1) choice[k--] = 0;
      if (k < 0) break;
      ++choice[k];
    }
  }
  return out;
}

static std::string fam_obj_label(const Gpd& a, const FamObject& x) {
  std::string s = "[";
  for (size_t k = 0; k < x.entries.size(); ++k) {
    if (k) s += ",";
    s += std::to_string(x.entries[k].first) + "." +
         a->obj_label(x.entries[k].second);
  }
  return s + "]";
}

FamGpd fam_fragment(Gpd a, int max_index, std::vector<FamObject> objects) {
  FamGpd fg;
  fg.base = std::move(a);
  fg.max_index = max_index;
  fg.objects = std::move(objects);
  for (size_t i = 0; i < fg.objects.size(); ++i) {
    for (auto& [idx, entry] : fg.objects[i].entries) {
      if (idx < 0 || idx >= max_index)
        throw GroupoidError("family object index out of range");
      if (entry < 0 || entry >= fg.base->object_count())
        throw GroupoidError("family object entry out of range");
    }
    if (!fg.obj_ids.insert({fg.objects[i], static_cast<Obj>(i)}).second)
      throw GroupoidError("duplicate family object in fragment");
  }

  GroupoidBuilder bld;
  for (const auto& x : fg.objects) bld.add_object(fam_obj_label(fg.base, x));

  // enumerate (π, components) in lex order per (src, dst) pair; backtrack
  // over positions so only bijections with nonempty homs are visited
  const int n = static_cast<int>(fg.objects.size());
  for (Obj s = 0; s < n; ++s)
    for (Obj d = 0; d < n; ++d) {
      const auto& x = fg.objects[s];
      const auto& y = fg.objects[d];
      const int sz = x.size();
      if (sz != y.size()) continue;
      std::vector<int> pi(sz);
      std::vector<const std::vector<Mor>*> homs(sz);
      std::vector<bool> used(sz, false);
      auto emit = [&]() {
        std::vector<int> choice(sz, 0);
        while (true) {
          std::vector<Mor> comps(sz);
          for (int k = 0; k < sz; ++k) comps[k] = (*homs[k])[choice[k]];
          Mor id = bld.add_morphism(s, d);
          fg.mor_data.push_back({pi, comps});
          fg.mor_ids[{s, d, pi, comps}] = id;
          int k = sz - 1;
          while (k >= 0 && choice[k] == static_cast<int>(homs[k]->size()) - 1)
            choice[k--] = 0;
          if (k < 0) break;
          ++choice[k];
        }
      };
      auto assign = [&](auto&& self, int k) -> void {
        if (k == sz) {
          emit();
          return;
        }
        for (int q = 0; q < sz; ++q) {
          if (used[q]) continue;
          const auto& h =
              fg.base->hom(x.entries[k].second, y.entries[q].second);
          if (h.empty()) continue;
          pi[k] = q;
          homs[k] = &h;
          used[q] = true;
          self(self, k + 1);
          used[q] = false;
        }
      };
      assign(assign, 0);
    }

  for (Obj x = 0; x < n; ++x) {
    const auto& fo = fg.objects[x];
    std::vector<int> pi(fo.size());
    std::iota(pi.begin(), pi.end(), 0);
    std::vector<Mor> comps(fo.size());
    for (int k = 0; k < fo.size(); ++k)
      comps[k] = fg.base->identity(fo.entries[k].second);
    bld.set_identity(x, fg.mor_ids.at({x, x, pi, comps}));
  }

  // componentwise composition along the composed bijection
  const int nm = static_cast<int>(fg.mor_data.size());
  std::vector<Obj> msrc(nm), mdst(nm);
  for (const auto& [key, id] : fg.mor_ids) {
    msrc[id] = std::get<0>(key);
    mdst[id] = std::get<1>(key);
  }
  std::vector<std::vector<Mor>> out_by_src(n);
  for (Mor m = 0; m < nm; ++m) out_by_src[msrc[m]].push_back(m);
  for (Mor f = 0; f < nm; ++f)
    for (Mor g : out_by_src[mdst[f]]) {
      const auto& df = fg.mor_data[f];
      const auto& dg = fg.mor_data[g];
      std::vector<int> pi(df.pi.size());
      std::vector<Mor> comps(df.pi.size());
      for (size_t k = 0; k < df.pi.size(); ++k) {
        pi[k] = dg.pi[df.pi[k]];
        comps[k] = fg.base->compose(dg.comps[df.pi[k]], df.comps[k]);
      }
      bld.set_compose(g, f, fg.mor_ids.at({msrc[f], mdst[g], pi, comps}));
    }

  fg.gpd = bld.build();
  return fg;
}

FamGpd fam(const Gpd& a, const TruncationConfig& cfg) {
  return fam_fragment(a, cfg.max_index, all_family_objects(a, cfg.max_index));
}

GFunctor fam_on(const GFunctor& f, const FamGpd& src, const FamGpd& dst) {
  if (!same_gpd(f.src(), src.base) || !same_gpd(f.dst(), dst.base))
    throw GroupoidError("fam_on: functor boundary does not match the fragments");
  std::vector<Obj> om(src.gpd->object_count());
  for (Obj x = 0; x < src.gpd->object_count(); ++x) {
    FamObject img;
    for (auto& [i, a] : src.objects[x].entries)
      img.entries.push_back({i, f.on_obj(a)});
    om[x] = dst.obj_of(img);
    if (om[x] < 0)
      throw GroupoidError("fam_on: image object missing from target fragment");
  }
  std::vector<Mor> mm(src.gpd->morphism_count());
  for (Mor m = 0; m < src.gpd->morphism_count(); ++m) {
    const auto& d = src.mor_data[m];
    std::vector<Mor> comps(d.comps.size());
    for (size_t k = 0; k < d.comps.size(); ++k) comps[k] = f.on_mor(d.comps[k]);
    mm[m] = dst.mor_of(om[src.gpd->src(m)], om[src.gpd->dst(m)], d.pi, comps);
    if (mm[m] < 0)
      throw GroupoidError("fam_on: image morphism missing from target fragment");
  }
  return GFunctor(src.gpd, dst.gpd, std::move(om), std::move(mm));
}

}  // namespace thinspan
