#include "graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace cwcolor {

Graph::Graph(int n) : n_(n), adj_(n + 1) {
  if (n < 0) throw ValidationError("negative vertex count");
}

void Graph::check_vertex(int v) const {
  if (v < 1 || v > n_)
    throw ValidationError("vertex " + std::to_string(v) + " out of range 1.." +
                          std::to_string(n_));
}

int Graph::add_vertex() {
  adj_.emplace_back();
  return ++n_;
}

bool Graph::add_edge(int u, int v) {
  check_vertex(u);
  check_vertex(v);
  if (u == v) throw ValidationError("self-loop at vertex " + std::to_string(u));
  auto& au = adj_[u];
  auto it = std::lower_bound(au.begin(), au.end(), v);
  if (it != au.end() && *it == v) return false;
  au.insert(it, v);
  auto& av = adj_[v];
  av.insert(std::lower_bound(av.begin(), av.end(), u), u);
  ++m_;
  return true;
}

bool Graph::has_edge(int u, int v) const {
  check_vertex(u);
  check_vertex(v);
  const auto& au = adj_[u];
  return std::binary_search(au.begin(), au.end(), v);
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> e;
  e.reserve(m_);
  for (int u = 1; u <= n_; ++u)
    for (int v : adj_[u])
      if (u < v) e.emplace_back(u, v);
  return e;
}

bool Graph::operator==(const Graph& o) const {
  return n_ == o.n_ && m_ == o.m_ && adj_ == o.adj_;
}

ListColoringInstance::ListColoringInstance(Graph g, int k_)
    : graph(std::move(g)), k(k_), lists(graph.vertex_count() + 1, full_mask(k_)) {}

void ListColoringInstance::validate() const {
  if (k < 1 || k > kMaxColors) throw ValidationError("k out of range");
  if (static_cast<int>(lists.size()) != graph.vertex_count() + 1)
    throw ValidationError("list vector size mismatch");
  for (int v = 1; v <= graph.vertex_count(); ++v) {
    if (lists[v] == 0) throw ValidationError("empty list at vertex " + std::to_string(v));
    if (lists[v] & ~full_mask(k))
      throw ValidationError("list at vertex " + std::to_string(v) + " exceeds {1..k}");
  }
}

TwinPartition twin_classes(const Graph& g) {
  int n = g.vertex_count();
  // Group by hashed open/closed neighborhoods, then verify exactly.
  auto nbhd_key = [&](int v, bool closed) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&](int x) { h = fnv1a(&x, sizeof x, h); };
    const auto& nb = g.neighbors(v);
    std::size_t i = 0;
    bool self_done = !closed;
    for (; i < nb.size(); ++i) {
      if (!self_done && nb[i] > v) {
        mix(v);
        self_done = true;
      }
      mix(nb[i]);
    }
    if (!self_done) mix(v);
    return h;
  };
  auto same_open = [&](int u, int v) { return g.neighbors(u) == g.neighbors(v); };
  auto same_closed = [&](int u, int v) {
    // N[u] == N[v] iff u,v adjacent and N(u)\{v} == N(v)\{u}.
    if (!g.has_edge(u, v)) return false;
    const auto& a = g.neighbors(u);
    const auto& b = g.neighbors(v);
    if (a.size() != b.size()) return false;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
      if (a[i] == v) { ++i; continue; }
      if (b[j] == u) { ++j; continue; }
      if (a[i] != b[j]) return false;
      ++i; ++j;
    }
    while (i < a.size() && a[i] == v) ++i;
    while (j < b.size() && b[j] == u) ++j;
    return i == a.size() && j == b.size();
  };

  std::unordered_map<std::uint64_t, std::vector<int>> open_groups, closed_groups;
  for (int v = 1; v <= n; ++v) {
    open_groups[nbhd_key(v, false)].push_back(v);
    closed_groups[nbhd_key(v, true)].push_back(v);
  }

  TwinPartition part;
  part.class_of.assign(n + 1, -1);
  std::vector<std::vector<int>> found;       // members, sorted by lowest
  std::vector<TwinKind> kinds;

  auto collect = [&](std::unordered_map<std::uint64_t, std::vector<int>>& groups,
                     auto&& equal, TwinKind kind) {
    for (auto& [h, verts] : groups) {
      (void)h;
      if (verts.size() < 2) continue;
      std::vector<char> used(verts.size(), 0);
      for (std::size_t i = 0; i < verts.size(); ++i) {
        if (used[i] || part.class_of[verts[i]] != -1) continue;
        std::vector<int> members{verts[i]};
        for (std::size_t j = i + 1; j < verts.size(); ++j) {
          if (used[j] || part.class_of[verts[j]] != -1) continue;
          if (equal(verts[i], verts[j])) {
            members.push_back(verts[j]);
            used[j] = 1;
          }
        }
        if (members.size() >= 2) {
          std::sort(members.begin(), members.end());
          for (int m : members) part.class_of[m] = static_cast<int>(found.size());
          found.push_back(std::move(members));
          kinds.push_back(kind);
        }
      }
    }
  };
  // True classes first: being twins is an equivalence relation, so a vertex
  // cannot sit in both a true and a false class (asserted below).
  collect(closed_groups, same_closed, TwinKind::TRUE_CLASS);
  collect(open_groups, same_open, TwinKind::FALSE_CLASS);

  // Mixed classes are impossible; verify nothing was claimed twice.
  for (std::size_t c = 0; c < found.size(); ++c)
    for (int v : found[c])
      if (part.class_of[v] != static_cast<int>(c))
        throw ValidationError("twin classes are not disjoint (mixed class?)");

  for (int v = 1; v <= n; ++v)
    if (part.class_of[v] == -1) {
      part.class_of[v] = static_cast<int>(found.size());
      found.push_back({v});
      kinds.push_back(TwinKind::SINGLETON);
    }

  // Order classes by lowest member for deterministic output.
  std::vector<std::size_t> order(found.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return found[a][0] < found[b][0]; });
  std::vector<int> remap(found.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    remap[order[i]] = static_cast<int>(i);
    part.classes.push_back({std::move(found[order[i]]), kinds[order[i]]});
  }
  for (int v = 1; v <= n; ++v) part.class_of[v] = remap[part.class_of[v]];
  return part;
}

Graph remove_false_twins(const Graph& g, std::vector<int>* old_to_new) {
  TwinPartition part = twin_classes(g);
  int n = g.vertex_count();
  std::vector<int> keep;
  std::vector<int> map(n + 1, 0);
  for (int v = 1; v <= n; ++v) {
    const auto& cls = part.classes[part.class_of[v]];
    if (cls.kind == TwinKind::FALSE_CLASS && v != cls.members[0]) continue;
    map[v] = static_cast<int>(keep.size()) + 1;
    keep.push_back(v);
  }
  Graph h(static_cast<int>(keep.size()));
  for (auto [u, v] : g.edges())
    if (map[u] && map[v]) h.add_edge(map[u], map[v]);
  if (old_to_new) *old_to_new = std::move(map);
  return h;
}

Quotient contract_true_twins(const Graph& g) {
  TwinPartition part = twin_classes(g);
  for (const auto& cls : part.classes)
    if (cls.kind == TwinKind::FALSE_CLASS)
      throw ValidationError("contract_true_twins: graph still has false twins");
  int n = g.vertex_count();
  Quotient q;
  q.class_map.assign(n + 1, 0);
  q.graph = Graph(static_cast<int>(part.classes.size()));
  q.demand.assign(part.classes.size() + 1, 0);
  for (std::size_t c = 0; c < part.classes.size(); ++c) {
    for (int v : part.classes[c].members) q.class_map[v] = static_cast<int>(c) + 1;
    q.demand[c + 1] = static_cast<int>(part.classes[c].members.size());
  }
  for (auto [u, v] : g.edges()) {
    int cu = q.class_map[u], cv = q.class_map[v];
    if (cu != cv) q.graph.add_edge(cu, cv);
  }
  return q;
}

Graph parse_dimacs(std::istream& in) {
  std::string line;
  int n = -1;
  std::uint64_t m = 0, seen = 0;
  Graph g;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag == "c") continue;
    if (tag == "p") {
      std::string fmt;
      if (!(ls >> fmt >> n >> m) || fmt != "edge" || n < 0)
        throw ParseError("line " + std::to_string(lineno) + ": bad problem line");
      g = Graph(n);
    } else if (tag == "e") {
      if (n < 0) throw ParseError("edge before problem line");
      int u, v;
      if (!(ls >> u >> v))
        throw ParseError("line " + std::to_string(lineno) + ": bad edge line");
      if (!g.add_edge(u, v))
        throw ParseError("line " + std::to_string(lineno) + ": duplicate edge");
      ++seen;
    } else {
      throw ParseError("line " + std::to_string(lineno) + ": unknown line type '" + tag + "'");
    }
  }
  if (n < 0) throw ParseError("missing problem line");
  if (seen != m)
    throw ParseError("edge count mismatch: header says " + std::to_string(m) +
                     ", found " + std::to_string(seen));
  return g;
}

Graph parse_dimacs_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return parse_dimacs(in);
}

void write_dimacs(std::ostream& out, const Graph& g) {
  out << "p edge " << g.vertex_count() << " " << g.edge_count() << "\n";
  for (auto [u, v] : g.edges()) out << "e " << u << " " << v << "\n";
}

std::vector<ColorMask> parse_lists(std::istream& in, int n, int k) {
  std::vector<ColorMask> lists(n + 1, full_mask(k));
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag == "c") continue;
    if (tag != "l") throw ParseError("line " + std::to_string(lineno) + ": expected 'l'");
    int v;
    if (!(ls >> v) || v < 1 || v > n)
      throw ParseError("line " + std::to_string(lineno) + ": bad vertex");
    ColorMask m = 0;
    int c;
    while (ls >> c) {
      if (c < 1 || c > k)
        throw ParseError("line " + std::to_string(lineno) + ": color out of range");
      m |= color_bit(c);
    }
    if (m == 0) throw ParseError("line " + std::to_string(lineno) + ": empty list");
    lists[v] = m;
  }
  return lists;
}

std::vector<ColorMask> parse_lists_file(const std::string& path, int n, int k) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return parse_lists(in, n, k);
}

void write_lists(std::ostream& out, const ListColoringInstance& inst) {
  for (int v = 1; v <= inst.graph.vertex_count(); ++v) {
    if (inst.lists[v] == full_mask(inst.k)) continue;
    out << "l " << v;
    for (int c = 1; c <= inst.k; ++c)
      if (mask_has(inst.lists[v], c)) out << " " << c;
    out << "\n";
  }
}

}  // namespace cwcolor
