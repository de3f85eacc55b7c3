#include "gadgets.hpp"

#include <algorithm>

namespace cwcolor {

InstanceBuilder::InstanceBuilder(int k) : inst_(Graph(0), k) {
  if (k < 1 || k > kMaxColors) throw ValidationError("k out of range");
}

int InstanceBuilder::add_vertex(ColorMask list) {
  if (list == 0) list = full_mask(inst_.k);
  if (list & ~full_mask(inst_.k)) throw ValidationError("list exceeds {1..k}");
  int v = inst_.graph.add_vertex();
  inst_.lists.push_back(list);
  return v;
}

void InstanceBuilder::add_edge(int u, int v) { inst_.graph.add_edge(u, v); }

namespace {
int smallest_color_not_in(ColorMask taken, int k) {
  for (int c = 1; c <= k; ++c)
    if (!mask_has(taken, c)) return c;
  throw ValidationError("no spare color exists (k too small)");
}
}  // namespace

std::array<ColorMask, 3> weak_edge_lists(int c1, int c2, int k) {
  if (k < 3) throw ValidationError("weak edges need k >= 3 (no spare color exists)");
  if (c1 < 1 || c1 > k || c2 < 1 || c2 > k) throw ValidationError("color out of range");
  if (c1 != c2) {
    int cp = smallest_color_not_in(color_bit(c1) | color_bit(c2), k);
    ColorMask l2 = color_bit(c2) | color_bit(cp);
    return {color_bit(c1) | color_bit(c2), l2, l2};
  }
  int cp = smallest_color_not_in(color_bit(c1), k);
  int cpp = smallest_color_not_in(color_bit(c1) | color_bit(cp), k);
  return {color_bit(c1) | color_bit(cp), color_bit(cp) | color_bit(cpp),
          color_bit(c1) | color_bit(cpp)};
}

int InstanceBuilder::weak_edge(int u1, int u2, int c1, int c2) {
  if (u1 == u2) throw ValidationError("weak edge endpoints must differ");
  if (u1 < 1 || u1 > inst_.graph.vertex_count() || u2 < 1 || u2 > inst_.graph.vertex_count())
    throw ValidationError("weak edge endpoint does not exist");
  auto [l1, l2, l3] = weak_edge_lists(c1, c2, inst_.k);
  int v1 = add_vertex(l1), v2 = add_vertex(l2), v3 = add_vertex(l3);
  add_edge(u1, v1);
  add_edge(v1, v2);
  add_edge(v2, v3);
  add_edge(v3, u2);
  records_.push_back({GadgetRecord::Kind::WeakEdge, {u1, u2}, c1, c2, {v1, v2, v3}});
  return static_cast<int>(records_.size()) - 1;
}

int InstanceBuilder::implication(int u1, int u2, int c1, int c2) {
  int k = inst_.k;
  if (c2 < 1 || c2 > k) throw ValidationError("color out of range");
  std::vector<int> internals;
  for (int cp = 1; cp <= k; ++cp) {
    if (cp == c2) continue;
    int gid = weak_edge(u1, u2, c1, cp);
    const auto& w = records_[gid].internals;
    internals.insert(internals.end(), w.begin(), w.end());
  }
  records_.push_back({GadgetRecord::Kind::Implication, {u1, u2}, c1, c2, std::move(internals)});
  return static_cast<int>(records_.size()) - 1;
}

int InstanceBuilder::or_gadget(const std::vector<int>& members) {
  int k = inst_.k;
  if (k < 3) throw ValidationError("OR gadgets need k >= 3");
  if (members.empty()) throw ValidationError("OR gadget on an empty set");
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j)
      if (inst_.graph.has_edge(members[i], members[j]))
        throw ValidationError("OR gadget members must be pairwise non-adjacent");
  const ColorMask or_list = color_bit(1) | color_bit(2) | color_bit(3);
  for (int s : members) inst_.lists[s] = or_list;
  // path: w0 - s1 - w1 - s2 - ... - s_t - w_t
  std::vector<int> internals;
  int prev = add_vertex(color_bit(2));
  internals.push_back(prev);
  for (std::size_t i = 0; i < members.size(); ++i) {
    add_edge(prev, members[i]);
    ColorMask wl = (i + 1 == members.size()) ? color_bit(3) : (color_bit(2) | color_bit(3));
    int w = add_vertex(wl);
    add_edge(members[i], w);
    internals.push_back(w);
    prev = w;
  }
  records_.push_back({GadgetRecord::Kind::OrGadget, members, 0, 0, std::move(internals)});
  return static_cast<int>(records_.size()) - 1;
}

Graph delist_graph(const ListColoringInstance& inst) {
  inst.validate();
  int n = inst.graph.vertex_count(), k = inst.k;
  Graph g(n + k);
  for (auto [u, v] : inst.graph.edges()) g.add_edge(u, v);
  for (int i = 1; i <= k; ++i)
    for (int j = i + 1; j <= k; ++j) g.add_edge(n + i, n + j);
  for (int u = 1; u <= n; ++u)
    for (int c = 1; c <= k; ++c)
      if (!mask_has(inst.lists[u], c)) g.add_edge(u, n + c);
  return g;
}

CwExpr delist_cw(const CwExpr& e, int k, int first_fresh_label) {
  if (e.empty()) throw ValidationError("empty expression");
  int max_label = 0;
  for (const auto& n : e.nodes) {
    if (n.kind == CwKind::Intro) max_label = std::max(max_label, n.a);
    else if (n.kind != CwKind::Union) max_label = std::max({max_label, n.a, n.b});
  }
  int fresh = first_fresh_label ? first_fresh_label : max_label + 1;
  if (fresh <= max_label)
    throw ValidationError("fresh labels collide with labels used in the expression");
  ColorMask full = full_mask(k);

  CwExpr out;
  std::vector<std::int32_t> remap(e.nodes.size(), -1);
  // children precede parents in the arena, so a single pass rebuilds the tree
  for (std::size_t t = 0; t < e.nodes.size(); ++t) {
    const CwNode& n = e.nodes[t];
    switch (n.kind) {
      case CwKind::Intro: {
        ColorMask list = n.list ? n.list : full;
        if (list & ~full) throw ValidationError("leaf list exceeds {1..k}");
        std::int32_t acc = out.intro(n.a);
        for (int i = 1; i <= k; ++i)
          acc = out.make_union(acc, out.intro(fresh + i - 1));
        for (int i = 1; i <= k; ++i)
          if (!mask_has(list, i)) acc = out.join(n.a, fresh + i - 1, acc);
        remap[t] = acc;
        break;
      }
      case CwKind::Union:
        remap[t] = out.make_union(remap[n.left], remap[n.right]);
        break;
      case CwKind::Rename:
        remap[t] = out.rename(n.a, n.b, remap[n.left]);
        break;
      case CwKind::Join:
        remap[t] = out.join(n.a, n.b, remap[n.left]);
        break;
    }
  }
  std::int32_t acc = remap[e.root];
  for (int i = 1; i <= k; ++i)
    for (int j = i + 1; j <= k; ++j) acc = out.join(fresh + i - 1, fresh + j - 1, acc);
  out.root = acc;
  return out;
}

}  // namespace cwcolor
