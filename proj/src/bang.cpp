#include "thinspan/bang.hpp"

#include <algorithm>

namespace thinspan {

// ---------------------------------------------------------------------------
// Pairing and interleaving

static long cantor_fn(long i, long j) { return (i + j) * (i + j + 1) / 2 + j; }
static long shift_fn(long i, long j) { return (1L << i) * (2 * j + 1) - 1; }
PairingFunction cantor_pairing() { return {"cantor", cantor_fn}; }
PairingFunction shift_pairing() { return {"shift", shift_fn}; }

static long even_fn(long i) { return 2 * i; }
static long odd_fn(long j) { return 2 * j + 1; }
InterleavingBijection even_odd_interleaving() {
  return {"even-odd", even_fn, odd_fn};
}
InterleavingBijection odd_even_interleaving() {
  return {"odd-even", odd_fn, even_fn};
}

// ---------------------------------------------------------------------------
// Trees

Tree leaf_tree(Obj a) {
  Tree t;
  t.depth = 0;
  t.leaf = a;
  return t;
}

Tree node_tree(int depth, std::vector<std::pair<int, Tree>> kids) {
  if (depth < 1) throw GroupoidError("node_tree: depth must be positive");
  std::sort(kids.begin(), kids.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (size_t k = 0; k < kids.size(); ++k) {
    if (kids[k].second.depth != depth - 1)
      throw GroupoidError("node_tree: kid depth mismatch");
    if (k > 0 && kids[k].first == kids[k - 1].first)
      throw GroupoidError("node_tree: duplicate index");
  }
  Tree t;
  t.depth = depth;
  t.kids = std::move(kids);
  return t;
}

Tree tree_flatten_at(const Tree& t, int level, const PairingFunction& p) {
  if (t.depth < level + 2)
    throw GroupoidError("tree_flatten_at: tree too shallow");
  if (level > 0) {
    std::vector<std::pair<int, Tree>> kids;
    for (const auto& [i, k] : t.kids)
      kids.push_back({i, tree_flatten_at(k, level - 1, p)});
    return node_tree(t.depth - 1, std::move(kids));
  }
  std::vector<std::pair<int, Tree>> kids;
  for (const auto& [i, sub] : t.kids)
    for (const auto& [j, subsub] : sub.kids)
      kids.push_back({static_cast<int>(p.pair(i, j)), subsub});
  return node_tree(t.depth - 1, std::move(kids));
}

Tree tree_eta_at(const Tree& t, int level) {
  if (level == 0) return node_tree(t.depth + 1, {{0, t}});
  if (t.depth < 1) throw GroupoidError("tree_eta_at: tree too shallow");
  std::vector<std::pair<int, Tree>> kids;
  for (const auto& [i, k] : t.kids) kids.push_back({i, tree_eta_at(k, level - 1)});
  return node_tree(t.depth + 1, std::move(kids));
}

static bool indices_below(const Tree& t, int n) {
  if (t.depth == 0) return true;
  for (const auto& [i, k] : t.kids)
    if (i >= n || !indices_below(k, n)) return false;
  return true;
}

bool tree_in_range(const Tree& t, int max_index, const PairingFunction& p) {
  if (!indices_below(t, max_index)) return false;
  for (int lvl = 0; lvl + 2 <= t.depth; ++lvl)
    if (!tree_in_range(tree_flatten_at(t, lvl, p), max_index, p)) return false;
  return true;
}

// depth-d tuples whose every contiguous-segment association stays below n
static std::vector<std::vector<int>> admissible_tuples(int depth, int n,
                                                       const PairingFunction& p) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(depth, 0);
  auto admissible = [&](const std::vector<int>& t) {
    int d = static_cast<int>(t.size());
    std::vector<std::vector<std::vector<long>>> vals(
        d, std::vector<std::vector<long>>(d));
    for (int l = d - 1; l >= 0; --l)
      for (int r = l; r < d; ++r) {
        if (l == r) {
          vals[l][r] = {t[l]};
          continue;
        }
        for (int m = l; m < r; ++m)
          for (long u : vals[l][m])
            for (long v : vals[m + 1][r]) {
              long w = p.pair(u, v);
              if (w >= n) return false;
              vals[l][r].push_back(w);
            }
      }
    return true;
  };
  while (true) {
    if (admissible(cur)) out.push_back(cur);
    int k = depth - 1;
    while (k >= 0 && cur[k] == n - 1) cur[k--] = 0;
    if (k < 0) break;
    ++cur[k];
  }
  return out;
}

// all trees whose leaf paths lie in the given tuple set
static std::vector<Tree> trees_over_tuples(
    const Gpd& a, int depth, const std::vector<std::vector<int>>& tuples) {
  if (depth == 0) {
    std::vector<Tree> out;
    for (Obj x = 0; x < a->object_count(); ++x) out.push_back(leaf_tree(x));
    return out;
  }
  // group by first index
  std::map<int, std::vector<std::vector<int>>> rest;
  for (const auto& t : tuples)
    rest[t.front()].push_back(std::vector<int>(t.begin() + 1, t.end()));
  std::vector<int> firsts;
  std::map<int, std::vector<Tree>> options;
  for (auto& [i, sub] : rest) {
    firsts.push_back(i);
    options[i] = trees_over_tuples(a, depth - 1, sub);
  }
  std::vector<Tree> out;
  const int nf = static_cast<int>(firsts.size());
  for (int mask = 0; mask < (1 << nf); ++mask) {
    std::vector<int> used;
    for (int b = 0; b < nf; ++b)
      if (mask & (1 << b)) used.push_back(firsts[b]);
    std::vector<size_t> choice(used.size(), 0);
    while (true) {
      std::vector<std::pair<int, Tree>> kids;
      for (size_t k = 0; k < used.size(); ++k)
        kids.push_back({used[k], options[used[k]][choice[k]]});
      out.push_back(node_tree(depth, std::move(kids)));
      int k = static_cast<int>(used.size()) - 1;
      while (k >= 0 && choice[k] == options[used[k]].size() - 1) choice[k--] = 0;
      if (k < 0) break;
      ++choice[k];
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Tree> enumerate_in_range_trees(const Gpd& a, int depth,
                                           int max_index,
                                           const PairingFunction& p) {
  return trees_over_tuples(a, depth, admissible_tuples(depth, max_index, p));
}

// ---------------------------------------------------------------------------
// Morphism trees

MTree mtree_identity(const Gpd& a, const Tree& t) {
  MTree m;
  m.depth = t.depth;
  m.src = m.dst = t;
  if (t.depth == 0) {
    m.leaf = a->identity(t.leaf);
    return m;
  }
  for (const auto& [i, k] : t.kids) {
    m.idx.push_back({i, i});
    m.comps.push_back(mtree_identity(a, k));
  }
  return m;
}

static const MTree& comp_at(const MTree& m, int src_index) {
  for (size_t k = 0; k < m.idx.size(); ++k)
    if (m.idx[k].first == src_index) return m.comps[k];
  throw GroupoidError("mtree: missing component at index " +
                      std::to_string(src_index));
}

MTree mtree_compose(const Gpd& a, const MTree& g, const MTree& f) {
  if (!(f.dst == g.src)) throw GroupoidError("mtree_compose: endpoint mismatch");
  MTree m;
  m.depth = f.depth;
  m.src = f.src;
  m.dst = g.dst;
  if (f.depth == 0) {
    m.leaf = a->compose(g.leaf, f.leaf);
    return m;
  }
  for (size_t k = 0; k < f.idx.size(); ++k) {
    int mid = f.idx[k].second;
    int out = -1;
    for (const auto& [i, j] : g.idx)
      if (i == mid) out = j;
    if (out < 0) throw GroupoidError("mtree_compose: index map mismatch");
    m.idx.push_back({f.idx[k].first, out});
    m.comps.push_back(mtree_compose(a, comp_at(g, mid), f.comps[k]));
  }
  return m;
}

MTree mtree_inverse(const Gpd& a, const MTree& f) {
  MTree m;
  m.depth = f.depth;
  m.src = f.dst;
  m.dst = f.src;
  if (f.depth == 0) {
    m.leaf = a->inverse(f.leaf);
    return m;
  }
  // align with the entries of f.dst (sorted by index)
  for (const auto& [j, kid] : f.dst.kids) {
    int from = -1;
    size_t pos = 0;
    for (size_t k = 0; k < f.idx.size(); ++k)
      if (f.idx[k].second == j) {
        from = f.idx[k].first;
        pos = k;
      }
    if (from < 0) throw GroupoidError("mtree_inverse: non-bijective index map");
    m.idx.push_back({j, from});
    m.comps.push_back(mtree_inverse(a, f.comps[pos]));
  }
  return m;
}

MTree mtree_flatten_at(const MTree& f, int level, const PairingFunction& p) {
  MTree m;
  m.depth = f.depth - 1;
  m.src = tree_flatten_at(f.src, level, p);
  m.dst = tree_flatten_at(f.dst, level, p);
  if (level > 0) {
    for (size_t k = 0; k < f.idx.size(); ++k) {
      m.idx.push_back(f.idx[k]);
      m.comps.push_back(mtree_flatten_at(f.comps[k], level - 1, p));
    }
    return m;
  }
  for (size_t k = 0; k < f.idx.size(); ++k) {
    int i = f.idx[k].first, ip = f.idx[k].second;
    const MTree& sub = f.comps[k];
    for (size_t q = 0; q < sub.idx.size(); ++q) {
      int j = sub.idx[q].first, jp = sub.idx[q].second;
      m.idx.push_back({static_cast<int>(p.pair(i, j)),
                       static_cast<int>(p.pair(ip, jp))});
      m.comps.push_back(sub.comps[q]);
    }
  }
  // re-sort by source index, keeping components aligned
  std::vector<size_t> order(m.idx.size());
  for (size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(), [&](size_t x, size_t y) {
    return m.idx[x].first < m.idx[y].first;
  });
  std::vector<std::pair<int, int>> idx;
  std::vector<MTree> comps;
  for (size_t k : order) {
    idx.push_back(m.idx[k]);
    comps.push_back(m.comps[k]);
  }
  m.idx = std::move(idx);
  m.comps = std::move(comps);
  return m;
}

MTree mtree_eta_at(const MTree& f, int level) {
  MTree m;
  m.depth = f.depth + 1;
  m.src = tree_eta_at(f.src, level);
  m.dst = tree_eta_at(f.dst, level);
  if (level == 0) {
    m.idx = {{0, 0}};
    m.comps = {f};
    return m;
  }
  for (size_t k = 0; k < f.idx.size(); ++k) {
    m.idx.push_back(f.idx[k]);
    m.comps.push_back(mtree_eta_at(f.comps[k], level - 1));
  }
  return m;
}

// pure reindexing with identity components, from src to dst, mapping kid at
// index i to index remap(i)
static MTree reindexing_mtree(const Gpd& a, const Tree& src, const Tree& dst,
                              const std::function<int(int)>& remap) {
  MTree m;
  m.depth = src.depth;
  m.src = src;
  m.dst = dst;
  for (const auto& [i, kid] : src.kids) {
    m.idx.push_back({i, remap(i)});
    m.comps.push_back(mtree_identity(a, kid));
  }
  return m;
}

MTree alpha_component(const Gpd& a, const Tree& x, const PairingFunction& p) {
  Tree dst = tree_flatten_at(tree_eta_at(x, 0), 0, p);
  return reindexing_mtree(a, x, dst,
                          [&](int j) { return static_cast<int>(p.pair(0, j)); });
}

MTree beta_component(const Gpd& a, const Tree& x, const PairingFunction& p) {
  Tree dst = tree_flatten_at(tree_eta_at(x, 1), 0, p);
  return reindexing_mtree(a, x, dst,
                          [&](int j) { return static_cast<int>(p.pair(j, 0)); });
}

MTree gamma_component(const Gpd& a, const Tree& x, const PairingFunction& p) {
  if (x.depth < 3) throw GroupoidError("gamma_component: depth must be ≥ 3");
  Tree src = tree_flatten_at(tree_flatten_at(x, 0, p), 0, p);
  Tree dst = tree_flatten_at(tree_flatten_at(x, 1, p), 0, p);
  MTree m;
  m.depth = src.depth;
  m.src = src;
  m.dst = dst;
  std::vector<std::pair<int, std::pair<int, MTree>>> items;
  for (const auto& [i, xi] : x.kids)
    for (const auto& [j, xij] : xi.kids)
      for (const auto& [k, xijk] : xij.kids)
        items.push_back({static_cast<int>(p.pair(p.pair(i, j), k)),
                         {static_cast<int>(p.pair(i, p.pair(j, k))),
                          mtree_identity(a, xijk)}});
  std::sort(items.begin(), items.end(),
            [](const auto& x1, const auto& y1) { return x1.first < y1.first; });
  for (auto& [s, rest] : items) {
    m.idx.push_back({s, rest.first});
    m.comps.push_back(rest.second);
  }
  return m;
}

// ---------------------------------------------------------------------------
// Slots

static FamObject tree_to_famobj(const Tree& t,
                                const std::map<Tree, Obj>* kid_ids) {
  FamObject fo;
  for (const auto& [i, k] : t.kids) {
    Obj entry = (t.depth == 1) ? k.leaf : kid_ids->at(k);
    fo.entries.push_back({i, entry});
  }
  return fo;
}

Slot make_slot(Gpd base, int max_index, const std::set<Tree>& trees) {
  if (trees.empty()) throw GroupoidError("make_slot: empty tree set");
  const int d = trees.begin()->depth;
  for (const auto& t : trees)
    if (t.depth != d) throw GroupoidError("make_slot: mixed depths");
  if (d < 1) throw GroupoidError("make_slot: depth must be ≥ 1");
  // per-level subtree sets
  std::vector<std::set<Tree>> level(d);
  level[d - 1] = trees;
  for (int k = d - 1; k > 0; --k)
    for (const auto& t : level[k])
      for (const auto& [i, kid] : t.kids) level[k - 1].insert(kid);

  Slot slot;
  slot.base = std::move(base);
  slot.max_index = max_index;
  std::map<Tree, Obj> prev_ids;
  for (int k = 0; k < d; ++k) {
    std::vector<FamObject> objs;
    std::map<Tree, Obj> ids;
    Obj next = 0;
    for (const auto& t : level[k]) {
      objs.push_back(tree_to_famobj(t, k == 0 ? nullptr : &prev_ids));
      ids[t] = next++;
    }
    Gpd under = (k == 0) ? slot.base : slot.chain[k - 1].gpd;
    slot.chain.push_back(fam_fragment(under, max_index, std::move(objs)));
    prev_ids = std::move(ids);
  }
  return slot;
}

static Obj encode_obj_at(const Slot& s, const Tree& t, int k) {
  if (t.depth != k + 1) throw GroupoidError("slot encode: depth mismatch");
  FamObject fo;
  for (const auto& [i, kid] : t.kids) {
    Obj e = (k == 0) ? kid.leaf : encode_obj_at(s, kid, k - 1);
    if (e < 0) return -1;
    fo.entries.push_back({i, e});
  }
  return s.chain[k].obj_of(fo);
}

Obj Slot::encode_obj(const Tree& t) const {
  return encode_obj_at(*this, t, depth() - 1);
}

static Tree decode_obj_at(const Slot& s, Obj x, int k) {
  const FamObject& fo = s.chain[k].obj_at(x);
  std::vector<std::pair<int, Tree>> kids;
  for (const auto& [i, e] : fo.entries)
    kids.push_back({i, k == 0 ? leaf_tree(e) : decode_obj_at(s, e, k - 1)});
  return node_tree(k + 1, std::move(kids));
}

Tree Slot::decode_obj(Obj x) const { return decode_obj_at(*this, x, depth() - 1); }

static Mor encode_mor_at(const Slot& s, const MTree& m, int k) {
  if (m.depth != k + 1) throw GroupoidError("slot encode: morphism depth mismatch");
  Obj so = encode_obj_at(s, m.src, k), do_ = encode_obj_at(s, m.dst, k);
  if (so < 0 || do_ < 0) return -1;
  // positions of destination indices in the destination entry list
  std::vector<int> dst_index_pos;
  std::map<int, int> pos_of;
  for (size_t q = 0; q < m.dst.kids.size(); ++q)
    pos_of[m.dst.kids[q].first] = static_cast<int>(q);
  std::vector<int> pi;
  std::vector<Mor> comps;
  for (size_t q = 0; q < m.idx.size(); ++q) {
    auto it = pos_of.find(m.idx[q].second);
    if (it == pos_of.end()) return -1;
    pi.push_back(it->second);
    Mor c = (k == 0) ? m.comps[q].leaf : encode_mor_at(s, m.comps[q], k - 1);
    if (c < 0) return -1;
    comps.push_back(c);
  }
  return s.chain[k].mor_of(so, do_, pi, comps);
}

Mor Slot::encode_mor(const MTree& m) const {
  return encode_mor_at(*this, m, depth() - 1);
}

static MTree decode_mor_at(const Slot& s, Mor m, int k) {
  const FamGpd& fg = s.chain[k];
  const FamMorData& d = fg.mor_at(m);
  MTree out;
  out.depth = k + 1;
  out.src = decode_obj_at(s, fg.gpd->src(m), k);
  out.dst = decode_obj_at(s, fg.gpd->dst(m), k);
  for (size_t q = 0; q < d.pi.size(); ++q) {
    int si = out.src.kids[q].first;
    int di = out.dst.kids[d.pi[q]].first;
    out.idx.push_back({si, di});
    if (k == 0) {
      MTree leaf;
      leaf.depth = 0;
      leaf.leaf = d.comps[q];
      leaf.src = leaf_tree(s.base->src(d.comps[q]));
      leaf.dst = leaf_tree(s.base->dst(d.comps[q]));
      out.comps.push_back(std::move(leaf));
    } else {
      out.comps.push_back(decode_mor_at(s, d.comps[q], k - 1));
    }
  }
  return out;
}

MTree Slot::decode_mor(Mor m) const { return decode_mor_at(*this, m, depth() - 1); }

GFunctor slot_functor(const Slot& src, const Slot& dst,
                      const std::function<Tree(const Tree&)>& of,
                      const std::function<MTree(const MTree&)>& mf) {
  std::vector<Obj> om(src.gpd()->object_count());
  std::vector<Mor> mm(src.gpd()->morphism_count());
  for (Obj x = 0; x < src.gpd()->object_count(); ++x) {
    om[x] = dst.encode_obj(of(src.decode_obj(x)));
    if (om[x] < 0)
      throw GroupoidError("slot_functor: image object missing from target slot");
  }
  for (Mor m = 0; m < src.gpd()->morphism_count(); ++m) {
    mm[m] = dst.encode_mor(mf(src.decode_mor(m)));
    if (mm[m] < 0)
      throw GroupoidError("slot_functor: image morphism missing from target slot");
  }
  return GFunctor(src.gpd(), dst.gpd(), std::move(om), std::move(mm));
}

GFunctor slot_inclusion(const Slot& src, const Slot& dst) {
  return slot_functor(
      src, dst, [](const Tree& t) { return t; },
      [](const MTree& m) { return m; });
}

// ---------------------------------------------------------------------------
// η and μ on fragments

GFunctor eta(const Gpd& a, const FamGpd& target) {
  if (!same_gpd(a, target.base))
    throw GroupoidError("eta: target fragment is not over the base");
  std::vector<Obj> om(a->object_count());
  std::vector<Mor> mm(a->morphism_count());
  for (Obj x = 0; x < a->object_count(); ++x) {
    om[x] = target.obj_of(fam_obj({{0, x}}));
    if (om[x] < 0) throw GroupoidError("eta: [0·a] missing from target fragment");
  }
  for (Mor m = 0; m < a->morphism_count(); ++m) {
    mm[m] = target.mor_of(om[a->src(m)], om[a->dst(m)], {0}, {m});
    if (mm[m] < 0) throw GroupoidError("eta: [0·f] missing from target fragment");
  }
  return GFunctor(a, target.gpd, std::move(om), std::move(mm));
}

// index-level view of a fragment morphism: src index → (dst index, component)
static std::map<int, std::pair<int, Mor>> index_view(const FamGpd& fg, Mor m) {
  const FamMorData& d = fg.mor_at(m);
  const FamObject& s = fg.obj_at(fg.gpd->src(m));
  const FamObject& t = fg.obj_at(fg.gpd->dst(m));
  std::map<int, std::pair<int, Mor>> out;
  for (size_t k = 0; k < d.pi.size(); ++k)
    out[s.entries[k].first] = {t.entries[d.pi[k]].first, d.comps[k]};
  return out;
}

GFunctor mu(const FamGpd& outer, const FamGpd& inner, const FamGpd& target,
            const PairingFunction& p) {
  if (!same_gpd(outer.base, inner.gpd))
    throw GroupoidError("mu: outer fragment must be over the inner fragment");
  if (!same_gpd(inner.base, target.base))
    throw GroupoidError("mu: inner and target fragments over different bases");
  auto flatten_obj = [&](Obj x) {
    FamObject out;
    for (const auto& [i, xi] : outer.obj_at(x).entries)
      for (const auto& [j, a] : inner.obj_at(xi).entries) {
        long v = p.pair(i, j);
        if (v >= target.max_index)
          throw GroupoidError("mu: index overflow at ⟨" + std::to_string(i) +
                              "," + std::to_string(j) +
                              "⟩ = " + std::to_string(v));
        out.entries.push_back({static_cast<int>(v), a});
      }
    std::sort(out.entries.begin(), out.entries.end());
    return out;
  };
  std::vector<Obj> om(outer.gpd->object_count());
  for (Obj x = 0; x < outer.gpd->object_count(); ++x) {
    om[x] = target.obj_of(flatten_obj(x));
    if (om[x] < 0)
      throw GroupoidError("mu: flattened object missing from target fragment");
  }
  std::vector<Mor> mm(outer.gpd->morphism_count());
  for (Mor m = 0; m < outer.gpd->morphism_count(); ++m) {
    auto ov = index_view(outer, m);
    // flat src index → (flat dst index, base component)
    std::map<int, std::pair<int, Mor>> flat;
    for (const auto& [i, tgt] : ov) {
      auto iv = index_view(inner, tgt.second);
      for (const auto& [j, sub] : iv)
        flat[static_cast<int>(p.pair(i, j))] = {
            static_cast<int>(p.pair(tgt.first, sub.first)), sub.second};
    }
    Obj so = om[outer.gpd->src(m)], do_ = om[outer.gpd->dst(m)];
    const FamObject& dsto = target.obj_at(do_);
    std::map<int, int> dst_pos;
    for (size_t q = 0; q < dsto.entries.size(); ++q)
      dst_pos[dsto.entries[q].first] = static_cast<int>(q);
    std::vector<int> pi;
    std::vector<Mor> comps;
    for (const auto& [fi, tgt] : flat) {
      pi.push_back(dst_pos.at(tgt.first));
      comps.push_back(tgt.second);
    }
    mm[m] = target.mor_of(so, do_, pi, comps);
    if (mm[m] < 0)
      throw GroupoidError("mu: flattened morphism missing from target fragment");
  }
  return GFunctor(outer.gpd, target.gpd, std::move(om), std::move(mm));
}

// ---------------------------------------------------------------------------
// Polarity, thin structure, prestrategy and span images

PolarizedGroupoid fam_polarity(const PolarizedGroupoid& a, const FamGpd& fa) {
  if (!same_gpd(a.base, fa.base))
    throw GroupoidError("fam_polarity: fragment over a different base");
  const int nm = fa.gpd->morphism_count();
  std::vector<bool> neg(nm), pos(nm);
  for (Mor m = 0; m < nm; ++m) {
    const FamMorData& d = fa.mor_at(m);
    const FamObject& s = fa.obj_at(fa.gpd->src(m));
    const FamObject& t = fa.obj_at(fa.gpd->dst(m));
    bool all_neg = true, all_pos = true, id_reindex = true;
    for (size_t k = 0; k < d.pi.size(); ++k) {
      if (!a.negative.contains(d.comps[k])) all_neg = false;
      if (!a.positive.contains(d.comps[k])) all_pos = false;
      if (t.entries[d.pi[k]].first != s.entries[k].first) id_reindex = false;
    }
    neg[m] = all_neg;
    pos[m] = all_pos && id_reindex;
  }
  return PolarizedGroupoid(fa.gpd, WideSubgroupoid(fa.gpd, std::move(neg)),
                           WideSubgroupoid(fa.gpd, std::move(pos)));
}

FamPrestrategy fam_prestrategy(const Prestrategy& s, const FamGpd& fa) {
  auto display_obj = [&](const FamObject& x) {
    FamObject out = x;
    for (auto& [i, e] : out.entries) e = s.display.on_obj(e);
    return out;
  };
  std::vector<FamObject> objs;
  for (const auto& x : all_family_objects(s.support, fa.max_index))
    if (fa.obj_of(display_obj(x)) >= 0) objs.push_back(x);
  FamGpd sup = fam_fragment(s.support, fa.max_index, std::move(objs));
  std::vector<Obj> om(sup.gpd->object_count());
  for (Obj x = 0; x < sup.gpd->object_count(); ++x)
    om[x] = fa.obj_of(display_obj(sup.obj_at(x)));
  std::vector<Mor> mm(sup.gpd->morphism_count());
  for (Mor m = 0; m < sup.gpd->morphism_count(); ++m) {
    const FamMorData& d = sup.mor_at(m);
    std::vector<Mor> comps(d.comps.size());
    for (size_t k = 0; k < d.comps.size(); ++k)
      comps[k] = s.display.on_mor(d.comps[k]);
    mm[m] = fa.mor_of(om[sup.gpd->src(m)], om[sup.gpd->dst(m)], d.pi, comps);
    if (mm[m] < 0)
      throw GroupoidError("fam_prestrategy: displayed morphism missing");
  }
  GFunctor disp(sup.gpd, fa.gpd, std::move(om), std::move(mm));
  Prestrategy ps(sup.gpd, std::move(disp));
  return {std::move(sup), std::move(ps)};
}

ThinGroupoid fam_thin(const ThinGroupoid& a, const FamGpd& fa) {
  ThinGroupoid t = ThinGroupoid::from_polarity(fam_polarity(a.polarized, fa));
  auto append = [&](std::vector<Prestrategy>& out,
                    const std::vector<Prestrategy>& in) {
    for (size_t i = 1; i < in.size(); ++i)  // 0 is the canonical entry
      out.push_back(fam_prestrategy(in[i], fa).prestrategy);
  };
  append(t.uniform.generators, a.uniform.generators);
  append(t.uniform.co_generators, a.uniform.co_generators);
  append(t.thin_generators, a.thin_generators);
  append(t.thin_co_generators, a.thin_co_generators);
  return t;
}

FamSpan fam_span(const Span& s, const FamGpd& fa, const FamGpd& fb) {
  auto map_obj = [&](const FamObject& x, const GFunctor& f) {
    FamObject out = x;
    for (auto& [i, e] : out.entries) e = f.on_obj(e);
    return out;
  };
  std::vector<FamObject> objs;
  for (const auto& x : all_family_objects(s.support, fa.max_index))
    if (fa.obj_of(map_obj(x, s.left)) >= 0 && fb.obj_of(map_obj(x, s.right)) >= 0)
      objs.push_back(x);
  FamGpd sup = fam_fragment(s.support, fa.max_index, std::move(objs));
  auto build = [&](const GFunctor& f, const FamGpd& target) {
    std::vector<Obj> om(sup.gpd->object_count());
    for (Obj x = 0; x < sup.gpd->object_count(); ++x)
      om[x] = target.obj_of(map_obj(sup.obj_at(x), f));
    std::vector<Mor> mm(sup.gpd->morphism_count());
    for (Mor m = 0; m < sup.gpd->morphism_count(); ++m) {
      const FamMorData& d = sup.mor_at(m);
      std::vector<Mor> comps(d.comps.size());
      for (size_t k = 0; k < d.comps.size(); ++k) comps[k] = f.on_mor(d.comps[k]);
      mm[m] = target.mor_of(om[sup.gpd->src(m)], om[sup.gpd->dst(m)], d.pi, comps);
      if (mm[m] < 0) throw GroupoidError("fam_span: displayed morphism missing");
    }
    return GFunctor(sup.gpd, target.gpd, std::move(om), std::move(mm));
  };
  GFunctor l = build(s.left, fa), r = build(s.right, fb);
  Span sp(sup.gpd, std::move(l), std::move(r));
  return {std::move(sup), std::move(sp)};
}

// ---------------------------------------------------------------------------
// The modifications on curated slots

MonadModifications monad_modifications(const Gpd& a, const TruncationConfig& cfg,
                                       const PairingFunction& p) {
  const int n = cfg.max_index;
  // unit domain: depth-1 trees where both reindexings stay in range
  std::set<Tree> dom1, cod1, mid2;
  for (const Tree& x : enumerate_in_range_trees(a, 1, n, p)) {
    Tree up = tree_eta_at(x, 0);       // [0·x]
    Tree fanned = tree_eta_at(x, 1);   // (j ↦ [0·a_j])
    if (tree_in_range(up, n, p) && tree_in_range(fanned, n, p)) {
      dom1.insert(x);
      cod1.insert(x);
      cod1.insert(tree_flatten_at(up, 0, p));
      cod1.insert(tree_flatten_at(fanned, 0, p));
      mid2.insert(up);
      mid2.insert(fanned);
    }
  }
  if (dom1.empty()) throw GroupoidError("monad_modifications: empty unit domain");
  Slot unit_dom = make_slot(a, n, dom1);
  Slot unit_cod = make_slot(a, n, cod1);
  Slot unit_mid = make_slot(a, n, mid2);

  GFunctor inc1 = slot_inclusion(unit_dom, unit_cod);
  // η_{!A} : unit_dom → unit_mid and !η_A : unit_dom → unit_mid
  GFunctor eta_bang = slot_functor(
      unit_dom, unit_mid, [](const Tree& t) { return tree_eta_at(t, 0); },
      [](const MTree& m) { return mtree_eta_at(m, 0); });
  GFunctor bang_eta = slot_functor(
      unit_dom, unit_mid, [](const Tree& t) { return tree_eta_at(t, 1); },
      [](const MTree& m) { return mtree_eta_at(m, 1); });
  GFunctor mu_unit = slot_functor(
      unit_mid, unit_cod,
      [&](const Tree& t) { return tree_flatten_at(t, 0, p); },
      [&](const MTree& m) { return mtree_flatten_at(m, 0, p); });

  auto components = [&](const Slot& dom, const Slot& cod,
                        const std::function<MTree(const Tree&)>& comp) {
    std::vector<Mor> out(dom.gpd()->object_count());
    for (Obj x = 0; x < dom.gpd()->object_count(); ++x) {
      out[x] = cod.encode_mor(comp(dom.decode_obj(x)));
      if (out[x] < 0)
        throw GroupoidError("modification component missing from codomain slot");
    }
    return out;
  };
  NatIso alpha(inc1, functor_compose(mu_unit, eta_bang),
               components(unit_dom, unit_cod, [&](const Tree& t) {
                 return alpha_component(a, t, p);
               }));
  NatIso beta(inc1, functor_compose(mu_unit, bang_eta),
              components(unit_dom, unit_cod, [&](const Tree& t) {
                return beta_component(a, t, p);
              }));

  // associativity: depth-3 in-range trees
  std::set<Tree> dom3, cod3, mid3a, mid3b;
  for (const Tree& z : enumerate_in_range_trees(a, 3, n, p)) {
    dom3.insert(z);
    mid3a.insert(tree_flatten_at(z, 0, p));
    mid3b.insert(tree_flatten_at(z, 1, p));
    cod3.insert(tree_flatten_at(tree_flatten_at(z, 0, p), 0, p));
    cod3.insert(tree_flatten_at(tree_flatten_at(z, 1, p), 0, p));
  }
  Slot assoc_dom = make_slot(a, n, dom3);
  Slot assoc_cod = make_slot(a, n, cod3);
  Slot mida = make_slot(a, n, mid3a);
  Slot midb = make_slot(a, n, mid3b);
  GFunctor mu_outer = slot_functor(
      assoc_dom, mida, [&](const Tree& t) { return tree_flatten_at(t, 0, p); },
      [&](const MTree& m) { return mtree_flatten_at(m, 0, p); });
  GFunctor bang_mu = slot_functor(
      assoc_dom, midb, [&](const Tree& t) { return tree_flatten_at(t, 1, p); },
      [&](const MTree& m) { return mtree_flatten_at(m, 1, p); });
  GFunctor mu_a = slot_functor(
      mida, assoc_cod, [&](const Tree& t) { return tree_flatten_at(t, 0, p); },
      [&](const MTree& m) { return mtree_flatten_at(m, 0, p); });
  GFunctor mu_b = slot_functor(
      midb, assoc_cod, [&](const Tree& t) { return tree_flatten_at(t, 0, p); },
      [&](const MTree& m) { return mtree_flatten_at(m, 0, p); });
  NatIso gamma(functor_compose(mu_a, mu_outer), functor_compose(mu_b, bang_mu),
               components(assoc_dom, assoc_cod, [&](const Tree& t) {
                 return gamma_component(a, t, p);
               }));

  return {std::move(unit_dom), std::move(unit_cod), std::move(alpha),
          std::move(beta),     std::move(assoc_dom), std::move(assoc_cod),
          std::move(gamma)};
}

// ---------------------------------------------------------------------------
// Renamings and liftings

Renaming check_renaming(const GFunctor& f, const ThinGroupoid& src,
                        const ThinGroupoid& dst) {
  CertReport rep;
  if (!same_gpd(f.src(), src.base()) || !same_gpd(f.dst(), dst.base())) {
    rep.fail("functor boundary does not match the thin groupoids");
    return {f, rep};
  }
  bool cond1 = true;
  for (Mor m = 0; m < src.base()->morphism_count(); ++m)
    if (is_positive(m, src.polarized) && !is_positive(f.on_mor(m), dst.polarized)) {
      rep.fail("condition (1): positive symmetry " + std::to_string(m) +
               " maps to a non-positive one");
      cond1 = false;
    }
  if (cond1) rep.checked.push_back("condition (1): positivity preserved");
  auto post = [&](const Prestrategy& t) {
    return Prestrategy(t.support, functor_compose(f, t.display));
  };
  for (size_t i = 0; i < src.uniform.co_generators.size(); ++i) {
    Prestrategy ft = post(src.uniform.co_generators[i]);
    for (size_t j = 0; j < dst.uniform.generators.size(); ++j) {
      if (uniformly_orthogonal(ft, dst.uniform.generators[j]))
        rep.checked.push_back("condition (2): F∘cogen[" + std::to_string(i) +
                              "] ⊥ gen[" + std::to_string(j) + "]");
      else
        rep.fail("condition (2): F∘cogen[" + std::to_string(i) +
                 "] not orthogonal to gen[" + std::to_string(j) + "]");
    }
  }
  for (size_t i = 0; i < src.thin_co_generators.size(); ++i) {
    Prestrategy ft = post(src.thin_co_generators[i]);
    for (size_t j = 0; j < dst.thin_generators.size(); ++j) {
      if (!uniformly_orthogonal(ft, dst.thin_generators[j])) {
        rep.fail("condition (3): F∘thin cogen[" + std::to_string(i) +
                 "] not uniformly orthogonal to thin gen[" + std::to_string(j) +
                 "]");
        continue;
      }
      if (thinly_orthogonal(ft, dst.thin_generators[j]))
        rep.checked.push_back("condition (3): F∘thin cogen[" + std::to_string(i) +
                              "] ⊥⊥ thin gen[" + std::to_string(j) + "]");
      else
        rep.fail("condition (3): F∘thin cogen[" + std::to_string(i) +
                 "] not thinly orthogonal to thin gen[" + std::to_string(j) + "]");
    }
  }
  return {f, rep};
}

LiftedSpan lift_renaming(const Renaming& f, const ThinGroupoid& a,
                         const ThinGroupoid& b) {
  if (!same_gpd(f.functor.src(), b.base()) || !same_gpd(f.functor.dst(), a.base()))
    throw GroupoidError("lift_renaming: expected a functor B → A");
  Span span(b.base(), f.functor, GFunctor::identity_functor(b.base()));
  CertReport cert = certify_thin_membership(span, a, b);
  if (!f.report.pass) {
    cert.pass = false;
    cert.failures.insert(cert.failures.begin(), f.report.failures.begin(),
                         f.report.failures.end());
  }
  return {std::move(span), std::move(cert)};
}

LiftedSpan dereliction(const ThinGroupoid& a, const FamGpd& fa) {
  GFunctor der = eta(a.base(), fa);
  ThinGroupoid bang_a = fam_thin(a, fa);
  Renaming ren = check_renaming(der, a, bang_a);
  return lift_renaming(ren, bang_a, a);
}

// ---------------------------------------------------------------------------
// Lifted pseudocomonad cells

ComonadCells comonad_cells(const Span& s, const Span& t,
                           const TruncationConfig& cfg,
                           const PairingFunction& p) {
  if (!same_gpd(s.right_base(), t.left_base()))
    throw GroupoidError("comonad_cells: spans do not compose");
  FamGpd fa = fam(s.left_base(), cfg);
  FamGpd fb = fam(s.right_base(), cfg);
  FamGpd fc = fam(t.right_base(), cfg);
  FamSpan fs = fam_span(s, fa, fb);
  FamSpan ft = fam_span(t, fb, fc);

  // --- m_{S,T} : !(T ⊙ S) ⇒ !T ⊙ !S
  ComposedSpan ts = compose_spans(s, t);
  FamSpan fts = fam_span(ts.span, fa, fc);
  ComposedSpan bang_comp = compose_spans(fs.span, ft.span);
  std::vector<Obj> om(fts.support.gpd->object_count());
  for (Obj x = 0; x < fts.support.gpd->object_count(); ++x) {
    FamObject xs = fts.support.obj_at(x), xt = xs;
    for (auto& [i, e] : xs.entries) e = ts.pb.obj_pairs[e].first;
    for (auto& [i, e] : xt.entries) e = ts.pb.obj_pairs[e].second;
    Obj ls = fs.support.obj_of(xs), rt = ft.support.obj_of(xt);
    if (ls < 0 || rt < 0)
      throw GroupoidError("comonad_cells: m image object missing");
    om[x] = bang_comp.pb.obj_of(ls, rt);
    if (om[x] < 0) throw GroupoidError("comonad_cells: pair not in pullback");
  }
  std::vector<Mor> mm(fts.support.gpd->morphism_count());
  for (Mor m = 0; m < fts.support.gpd->morphism_count(); ++m) {
    const FamMorData& d = fts.support.mor_at(m);
    std::vector<Mor> cl(d.comps.size()), cr(d.comps.size());
    for (size_t k = 0; k < d.comps.size(); ++k) {
      cl[k] = ts.pb.mor_pairs[d.comps[k]].first;
      cr[k] = ts.pb.mor_pairs[d.comps[k]].second;
    }
    auto end_obj = [&](Obj pairside, bool left) {
      FamObject fo = fts.support.obj_at(pairside);
      for (auto& [i, e] : fo.entries)
        e = left ? ts.pb.obj_pairs[e].first : ts.pb.obj_pairs[e].second;
      return fo;
    };
    Obj so = fts.support.gpd->src(m), dd = fts.support.gpd->dst(m);
    Mor lm = fs.support.mor_of(fs.support.obj_of(end_obj(so, true)),
                               fs.support.obj_of(end_obj(dd, true)), d.pi, cl);
    Mor rm = ft.support.mor_of(ft.support.obj_of(end_obj(so, false)),
                               ft.support.obj_of(end_obj(dd, false)), d.pi, cr);
    if (lm < 0 || rm < 0)
      throw GroupoidError("comonad_cells: m image morphism missing");
    mm[m] = bang_comp.pb.mor_of(lm, rm);
    if (mm[m] < 0) throw GroupoidError("comonad_cells: pair morphism missing");
  }
  GFunctor m_fun(fts.support.gpd, bang_comp.span.support, std::move(om),
                 std::move(mm));
  WeakMorphism m_cell = WeakMorphism::strong(fts.span, bang_comp.span, m_fun);

  // --- η_S : η̌_B ⊙ !S ⇒ S ⊙ η̌_A
  GFunctor eta_a = eta(s.left_base(), fa);
  GFunctor eta_b = eta(s.right_base(), fb);
  Span etabar_b(s.right_base(), eta_b, GFunctor::identity_functor(s.right_base()));
  Span etabar_a(s.left_base(), eta_a, GFunctor::identity_functor(s.left_base()));
  ComposedSpan lhs_eta = compose_spans(fs.span, etabar_b);
  ComposedSpan rhs_eta = compose_spans(etabar_a, s);
  std::vector<Obj> eom(lhs_eta.span.support->object_count());
  for (Obj x = 0; x < lhs_eta.span.support->object_count(); ++x) {
    auto [fx, b] = lhs_eta.pb.obj_pairs[x];
    const FamObject& fam_x = fs.support.obj_at(fx);
    if (fam_x.entries.size() != 1 || fam_x.entries[0].first != 0)
      throw GroupoidError("comonad_cells: η pullback support not a singleton");
    Obj sup = fam_x.entries[0].second;  // S-support object
    eom[x] = rhs_eta.pb.obj_of(s.left.on_obj(sup), sup);
    if (eom[x] < 0) throw GroupoidError("comonad_cells: η image missing");
  }
  std::vector<Mor> emm(lhs_eta.span.support->morphism_count());
  for (Mor m = 0; m < lhs_eta.span.support->morphism_count(); ++m) {
    auto [fm, bm] = lhs_eta.pb.mor_pairs[m];
    Mor sub = fs.support.mor_at(fm).comps[0];
    emm[m] = rhs_eta.pb.mor_of(s.left.on_mor(sub), sub);
    if (emm[m] < 0) throw GroupoidError("comonad_cells: η image morphism missing");
  }
  GFunctor eta_fun(lhs_eta.span.support, rhs_eta.span.support, std::move(eom),
                   std::move(emm));
  WeakMorphism eta_cell =
      WeakMorphism::strong(lhs_eta.span, rhs_eta.span, eta_fun);

  // --- μ_S : μ̌_B ⊙ !S ⇒ !!S ⊙ μ̌_A
  const int n = cfg.max_index;
  auto encode_level2 = [&](const Gpd& base, const FamGpd& level1) {
    std::vector<FamObject> objs;
    for (const Tree& t2 : enumerate_in_range_trees(base, 2, n, p)) {
      FamObject fo;
      bool ok = true;
      for (const auto& [i, kid] : t2.kids) {
        FamObject inner;
        for (const auto& [j, lf] : kid.kids) inner.entries.push_back({j, lf.leaf});
        Obj e = level1.obj_of(inner);
        if (e < 0) {
          ok = false;
          break;
        }
        fo.entries.push_back({i, e});
      }
      if (ok) objs.push_back(std::move(fo));
    }
    return fam_fragment(level1.gpd, n, std::move(objs));
  };
  FamGpd ffa = encode_level2(s.left_base(), fa);
  FamGpd ffb = encode_level2(s.right_base(), fb);
  FamGpd ffsup = encode_level2(fs.support.base, fs.support);
  GFunctor mu_a = mu(ffa, fa, fa, p);
  GFunctor mu_b = mu(ffb, fb, fb, p);
  GFunctor bb_left = fam_on(fs.span.left, ffsup, ffa);
  GFunctor bb_right = fam_on(fs.span.right, ffsup, ffb);
  Span mubar_b(ffb.gpd, mu_b, GFunctor::identity_functor(ffb.gpd));
  Span mubar_a(ffa.gpd, mu_a, GFunctor::identity_functor(ffa.gpd));
  Span bbs(ffsup.gpd, bb_left, bb_right);
  ComposedSpan lhs_mu = compose_spans(fs.span, mubar_b);
  ComposedSpan rhs_mu = compose_spans(mubar_a, bbs);
  std::vector<Obj> mom(lhs_mu.span.support->object_count());
  auto nest_obj = [&](Obj fx, Obj yy) {
    // regroup the flat family fx (over S's support) along the nesting of yy
    const FamObject& xfam = fs.support.obj_at(fx);
    std::map<int, Obj> flat_entries(xfam.entries.begin(), xfam.entries.end());
    FamObject nested;
    for (const auto& [i, yi] : ffb.obj_at(yy).entries) {
      FamObject inner;
      for (const auto& [j, be] : fb.obj_at(yi).entries) {
        auto it = flat_entries.find(static_cast<int>(p.pair(i, j)));
        if (it == flat_entries.end())
          throw GroupoidError("comonad_cells: μ nesting mismatch");
        inner.entries.push_back({j, it->second});
      }
      Obj e = fs.support.obj_of(inner);
      if (e < 0) throw GroupoidError("comonad_cells: nested entry missing");
      nested.entries.push_back({i, e});
    }
    Obj w = ffsup.obj_of(nested);
    if (w < 0) throw GroupoidError("comonad_cells: nested support object missing");
    return w;
  };
  for (Obj x = 0; x < lhs_mu.span.support->object_count(); ++x) {
    auto [fx, yy] = lhs_mu.pb.obj_pairs[x];
    Obj w = nest_obj(fx, yy);
    mom[x] = rhs_mu.pb.obj_of(bb_left.on_obj(w), w);
    if (mom[x] < 0) throw GroupoidError("comonad_cells: μ image missing");
  }
  std::vector<Mor> mmm(lhs_mu.span.support->morphism_count());
  for (Mor m = 0; m < lhs_mu.span.support->morphism_count(); ++m) {
    auto [fm, ym] = lhs_mu.pb.mor_pairs[m];
    // nested morphism: outer/inner index maps from ym, components from fm
    auto fview = index_view(fs.support, fm);
    auto yview = index_view(ffb, ym);
    Obj wsrc = nest_obj(lhs_mu.pb.obj_pairs[lhs_mu.span.support->src(m)].first,
                        lhs_mu.pb.obj_pairs[lhs_mu.span.support->src(m)].second);
    Obj wdst = nest_obj(lhs_mu.pb.obj_pairs[lhs_mu.span.support->dst(m)].first,
                        lhs_mu.pb.obj_pairs[lhs_mu.span.support->dst(m)].second);
    const FamObject& wso = ffsup.obj_at(wsrc);
    const FamObject& wdo = ffsup.obj_at(wdst);
    std::map<int, int> wdo_pos;
    for (size_t q = 0; q < wdo.entries.size(); ++q)
      wdo_pos[wdo.entries[q].first] = static_cast<int>(q);
    std::vector<int> pi;
    std::vector<Mor> comps;
    for (const auto& [i, wsi] : wso.entries) {
      auto [ip, yinner] = yview.at(i);
      pi.push_back(wdo_pos.at(ip));
      // inner morphism from wsi to the matching dst entry
      auto iview = index_view(fb, yinner);
      const FamObject& inner_src = fs.support.obj_at(wsi);
      Obj inner_dst = wdo.entries[wdo_pos.at(ip)].second;
      const FamObject& inner_dst_fo = fs.support.obj_at(inner_dst);
      std::map<int, int> idpos;
      for (size_t q = 0; q < inner_dst_fo.entries.size(); ++q)
        idpos[inner_dst_fo.entries[q].first] = static_cast<int>(q);
      std::vector<int> ipi;
      std::vector<Mor> icomps;
      for (const auto& [j, se] : inner_src.entries) {
        auto [jp, unused_c] = iview.at(j);
        (void)unused_c;
        ipi.push_back(idpos.at(jp));
        icomps.push_back(fview.at(static_cast<int>(p.pair(i, j))).second);
      }
      Mor im = fs.support.mor_of(wsi, inner_dst, ipi, icomps);
      if (im < 0) throw GroupoidError("comonad_cells: nested morphism missing");
      comps.push_back(im);
    }
    Mor wm = ffsup.mor_of(wsrc, wdst, pi, comps);
    if (wm < 0) throw GroupoidError("comonad_cells: nested support morphism missing");
    mmm[m] = rhs_mu.pb.mor_of(bb_left.on_mor(wm), wm);
    if (mmm[m] < 0) throw GroupoidError("comonad_cells: μ image morphism missing");
  }
  GFunctor mu_fun(lhs_mu.span.support, rhs_mu.span.support, std::move(mom),
                  std::move(mmm));
  WeakMorphism mu_cell = WeakMorphism::strong(lhs_mu.span, rhs_mu.span, mu_fun);

  return {std::move(m_cell), std::move(eta_cell), std::move(mu_cell)};
}

// ---------------------------------------------------------------------------
// Coherence verification

CertReport verify_pseudomonad(const Gpd& a, const TruncationConfig& cfg,
                              const PairingFunction& p) {
  CertReport rep;
  const int n = cfg.max_index;
  try {
    MonadModifications mods = monad_modifications(a, cfg, p);
    rep.checked.push_back(
        "α, β, γ are natural isomorphisms on their in-range slots (α/β over " +
        std::to_string(mods.unit_dom.gpd()->object_count()) + " objects, γ over " +
        std::to_string(mods.assoc_dom.gpd()->object_count()) + ")");
    // negativity: all components are pure reindexings with identity components
    auto pure = [&](const Slot& cod, const NatIso& iso) {
      for (Mor c : iso.components()) {
        MTree m = cod.decode_mor(c);
        for (const MTree& sub : m.comps)
          if (!a->is_identity(sub.leaf)) return false;
      }
      return true;
    };
    if (pure(mods.unit_cod, mods.alpha) && pure(mods.unit_cod, mods.beta) &&
        pure(mods.assoc_cod, mods.gamma))
      rep.checked.push_back("all modification components are negative symmetries"
                            " (pure reindexings)");
    else
      rep.fail("a modification component has a non-identity entry component");
  } catch (const GroupoidError& e) {
    rep.fail(std::string("modification construction: ") + e.what());
  }

  // strict naturality of μ at μ: μ ∘ !!μ = !μ ∘ μ on depth-4 trees
  std::vector<Tree> d4 = enumerate_in_range_trees(a, 4, n, p);
  int nat_fail = 0;
  for (const Tree& z : d4) {
    Tree lhs = tree_flatten_at(tree_flatten_at(z, 2, p), 0, p);
    Tree rhs = tree_flatten_at(tree_flatten_at(z, 0, p), 1, p);
    if (!(lhs == rhs)) ++nat_fail;
  }
  if (nat_fail == 0)
    rep.checked.push_back("strict naturality μ∘!!μ = !μ∘μ on " +
                          std::to_string(d4.size()) + " in-range depth-4 trees");
  else
    rep.fail("strict naturality of μ fails on " + std::to_string(nat_fail) +
             " trees");

  // pentagon for γ
  int pent_fail = 0;
  // Fam^lvl(γ): identity index maps down to the acting level
  std::function<MTree(const Tree&, int)> gcomp = [&](const Tree& t, int l) {
    if (l == 0) return gamma_component(a, t, p);
    MTree r;
    r.depth = t.depth - 2;
    r.src = tree_flatten_at(tree_flatten_at(t, l, p), l, p);
    r.dst = tree_flatten_at(tree_flatten_at(t, l + 1, p), l, p);
    for (const auto& [i, kid] : t.kids) {
      r.idx.push_back({i, i});
      r.comps.push_back(gcomp(kid, l - 1));
    }
    return r;
  };
  for (const Tree& z : d4) {
    MTree e1 = mtree_flatten_at(gcomp(z, 0), 0, p);           // V1 → V2
    MTree e2 = gamma_component(a, tree_flatten_at(z, 1, p), p);  // V2 → V3
    MTree e3 = mtree_flatten_at(gcomp(z, 1), 0, p);           // V3 → V4
    MTree e4 = gamma_component(a, tree_flatten_at(z, 0, p), p);  // V1 → V5
    MTree e5 = gamma_component(a, tree_flatten_at(z, 2, p), p);  // V5 → V4
    MTree left = mtree_compose(a, e3, mtree_compose(a, e2, e1));
    MTree right = mtree_compose(a, e5, e4);
    if (!(left == right)) ++pent_fail;
  }
  if (pent_fail == 0)
    rep.checked.push_back("pentagon for γ on " + std::to_string(d4.size()) +
                          " in-range depth-4 trees");
  else
    rep.fail("pentagon fails on " + std::to_string(pent_fail) + " trees");

  // unit triangle: γ_{η-inserted} ∘ μ(β_{!A}) = μ(!α)
  int tri_fail = 0, tri_count = 0;
  for (const Tree& x : enumerate_in_range_trees(a, 2, n, p)) {
    Tree zm = tree_eta_at(x, 1);
    if (!tree_in_range(zm, n, p)) continue;
    ++tri_count;
    MTree c1 = mtree_flatten_at(
        reindexing_mtree(a, x, tree_flatten_at(zm, 0, p),
                         [&](int i) { return static_cast<int>(p.pair(i, 0)); }),
        0, p);
    MTree c2 = gamma_component(a, zm, p);
    // !α at x: componentwise α on the kids
    MTree fam_alpha;
    fam_alpha.depth = 2;
    fam_alpha.src = x;
    fam_alpha.dst = tree_flatten_at(zm, 1, p);
    for (const auto& [i, kid] : x.kids) {
      fam_alpha.idx.push_back({i, i});
      fam_alpha.comps.push_back(alpha_component(a, kid, p));
    }
    MTree lhs = mtree_compose(a, c2, c1);
    MTree rhs = mtree_flatten_at(fam_alpha, 0, p);
    if (!(lhs == rhs)) ++tri_fail;
  }
  if (tri_fail == 0)
    rep.checked.push_back("unit triangle on " + std::to_string(tri_count) +
                          " in-range depth-2 trees");
  else
    rep.fail("unit triangle fails on " + std::to_string(tri_fail) + " trees");
  return rep;
}

CertReport verify_pseudocomonad_instances(const std::vector<SpanInstance>& spans,
                                          const TruncationConfig& cfg,
                                          const PairingFunction& p) {
  CertReport rep;
  if (spans.empty()) {
    rep.checked.push_back("no instances: vacuous pass");
    return rep;
  }
  for (size_t k = 0; k < spans.size(); ++k) {
    const SpanInstance& inst = spans[k];
    std::string tag = "instance[" + std::to_string(k) + "]: ";
    try {
      // base-level coherence (the paper's pavings reduce the two span-level
      // equations to these)
      CertReport base_a = verify_pseudomonad(inst.a.base(), cfg, p);
      CertReport base_b = verify_pseudomonad(inst.b.base(), cfg, p);
      if (base_a.pass && base_b.pass)
        rep.checked.push_back(tag + "base-level pseudomonad coherence holds");
      else {
        for (const auto& f : base_a.failures) rep.fail(tag + "base A: " + f);
        for (const auto& f : base_b.failures) rep.fail(tag + "base B: " + f);
      }
      // η is a renaming over both boundaries; its lifting is certified thin
      FamGpd fa = fam(inst.a.base(), cfg);
      FamGpd fb = fam(inst.b.base(), cfg);
      ThinGroupoid bang_a = fam_thin(inst.a, fa);
      ThinGroupoid bang_b = fam_thin(inst.b, fb);
      Renaming ra = check_renaming(eta(inst.a.base(), fa), inst.a, bang_a);
      Renaming rb = check_renaming(eta(inst.b.base(), fb), inst.b, bang_b);
      LiftedSpan la = lift_renaming(ra, bang_a, inst.a);
      LiftedSpan lb = lift_renaming(rb, bang_b, inst.b);
      if (la.cert.pass && lb.cert.pass)
        rep.checked.push_back(tag + "η̌ lifts to certified thin spans");
      else {
        for (const auto& f : la.cert.failures) rep.fail(tag + "η̌_A: " + f);
        for (const auto& f : lb.cert.failures) rep.fail(tag + "η̌_B: " + f);
      }
      // pseudonaturality cells and the comparison m, with the identity on B
      ComonadCells cells =
          comonad_cells(inst.s, Span::identity_span(inst.s.right_base()), cfg, p);
      bool ok = is_strong(cells.m_cell) && is_invertible(cells.m_cell) &&
                is_strong(cells.eta_cell) && is_invertible(cells.eta_cell) &&
                is_strong(cells.mu_cell) && is_invertible(cells.mu_cell);
      if (ok)
        rep.checked.push_back(tag +
                              "m, η_S, μ_S are strong invertible cells");
      else
        rep.fail(tag + "a lifted cell is not strong invertible");
    } catch (const GroupoidError& e) {
      rep.fail(tag + e.what());
    }
  }
  return rep;
}

}  // namespace thinspan
