#include "mtw_dp.hpp"

#include <algorithm>
#include <cassert>
#include <fstream>
#include <istream>
#include <ostream>
#include <map>
#include <set>
#include <sstream>

namespace cwcolor {

int TreeDecomposition::width() const {
  int w = -1;
  for (const auto& b : bags) w = std::max(w, static_cast<int>(b.size()) - 1);
  return w;
}

TreeDecomposition parse_td(std::istream& in) {
  TreeDecomposition td;
  std::string line;
  int nbags = -1, lineno = 0;
  std::vector<bool> seen;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag == "c") continue;
    if (tag == "s") {
      std::string kind;
      int wplus1;
      if (!(ls >> kind >> nbags >> wplus1 >> td.n) || kind != "td" || nbags < 0)
        throw ParseError("line " + std::to_string(lineno) + ": bad 's td' header");
      td.declared_width = wplus1 - 1;
      td.bags.assign(nbags, {});
      seen.assign(nbags + 1, false);
    } else if (tag == "b") {
      if (nbags < 0) throw ParseError("bag line before header");
      int id;
      if (!(ls >> id) || id < 1 || id > nbags)
        throw ParseError("line " + std::to_string(lineno) + ": bad bag id");
      if (seen[id]) throw ParseError("line " + std::to_string(lineno) + ": duplicate bag");
      seen[id] = true;
      int v;
      std::vector<int> bag;
      while (ls >> v) {
        if (v < 1 || v > td.n)
          throw ParseError("line " + std::to_string(lineno) + ": vertex out of range");
        bag.push_back(v);
      }
      std::sort(bag.begin(), bag.end());
      bag.erase(std::unique(bag.begin(), bag.end()), bag.end());
      td.bags[id - 1] = std::move(bag);
    } else {
      if (nbags < 0) throw ParseError("edge line before header");
      int i = std::stoi(tag), j;
      if (!(ls >> j) || i < 1 || i > nbags || j < 1 || j > nbags)
        throw ParseError("line " + std::to_string(lineno) + ": bad tree edge");
      td.tree_edges.emplace_back(i, j);
    }
  }
  if (nbags < 0) throw ParseError("missing 's td' header");
  return td;
}

TreeDecomposition parse_td_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return parse_td(in);
}

void write_td(std::ostream& out, const TreeDecomposition& td) {
  int wplus1 = td.width() + 1;
  out << "s td " << td.bags.size() << " " << wplus1 << " " << td.n << "\n";
  for (std::size_t i = 0; i < td.bags.size(); ++i) {
    out << "b " << (i + 1);
    for (int v : td.bags[i]) out << " " << v;
    out << "\n";
  }
  for (auto [i, j] : td.tree_edges) out << i << " " << j << "\n";
}

void validate_td(const TreeDecomposition& td, const Graph& g) {
  if (td.n != g.vertex_count())
    throw ValidationError("decomposition is for " + std::to_string(td.n) +
                          " vertices, graph has " + std::to_string(g.vertex_count()));
  std::size_t b = td.bags.size();
  if (b == 0) {
    if (g.vertex_count() == 0) return;
    throw ValidationError("no bags but the graph is nonempty");
  }
  if (td.tree_edges.size() != b - 1)
    throw ValidationError("bag graph has " + std::to_string(td.tree_edges.size()) +
                          " edges; a tree on " + std::to_string(b) + " bags needs " +
                          std::to_string(b - 1));
  // connectivity of the bag tree
  std::vector<std::vector<int>> badj(b + 1);
  for (auto [i, j] : td.tree_edges) {
    badj[i].push_back(j);
    badj[j].push_back(i);
  }
  std::vector<char> vis(b + 1, 0);
  std::vector<int> stack{1};
  vis[1] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (int y : badj[x])
      if (!vis[y]) {
        vis[y] = 1;
        ++reached;
        stack.push_back(y);
      }
  }
  if (reached != b) throw ValidationError("bag graph is disconnected");

  // axiom 1: every vertex appears in some bag; axiom 3: its bags are connected
  std::vector<std::vector<int>> bags_of(td.n + 1);
  for (std::size_t i = 0; i < b; ++i)
    for (int v : td.bags[i]) bags_of[v].push_back(static_cast<int>(i) + 1);
  for (int v = 1; v <= td.n; ++v)
    if (bags_of[v].empty())
      throw ValidationError("vertex " + std::to_string(v) + " appears in no bag");
  for (int v = 1; v <= td.n; ++v) {
    // BFS over bags containing v
    std::vector<int> st{bags_of[v][0]};
    std::set<int> seen{bags_of[v][0]};
    auto contains = [&](int bag_id) {
      const auto& bg = td.bags[bag_id - 1];
      return std::binary_search(bg.begin(), bg.end(), v);
    };
    while (!st.empty()) {
      int x = st.back();
      st.pop_back();
      for (int y : badj[x])
        if (contains(y) && seen.insert(y).second) st.push_back(y);
    }
    if (seen.size() != bags_of[v].size())
      throw ValidationError("bags containing vertex " + std::to_string(v) +
                            " do not form a connected subtree");
  }
  // axiom 2: every edge is inside some bag (scan the sparser endpoint's bags)
  for (auto [u, v] : g.edges()) {
    const auto& cand = bags_of[u].size() <= bags_of[v].size() ? bags_of[u] : bags_of[v];
    int other = bags_of[u].size() <= bags_of[v].size() ? v : u;
    bool covered = false;
    for (int bag_id : cand) {
      const auto& bg = td.bags[bag_id - 1];
      if (std::binary_search(bg.begin(), bg.end(), other)) {
        covered = true;
        break;
      }
    }
    if (!covered)
      throw ValidationError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                            ") is contained in no bag");
  }
}

int NiceTreeDecomposition::width() const {
  int w = -1;
  for (const auto& n : nodes) w = std::max(w, static_cast<int>(n.bag.size()) - 1);
  return w;
}

namespace {

struct NiceBuilder {
  NiceTreeDecomposition out;

  std::int32_t add(NiceTreeDecomposition::Kind kind, int vertex, std::int32_t l,
                   std::int32_t r, std::vector<int> bag) {
    NiceTreeDecomposition::Node n;
    n.kind = kind;
    n.vertex = vertex;
    n.left = l;
    n.right = r;
    n.bag = std::move(bag);
    out.nodes.push_back(std::move(n));
    return static_cast<std::int32_t>(out.nodes.size()) - 1;
  }

  // Chain of introduces from the empty leaf up to `bag`.
  std::int32_t leaf_chain(const std::vector<int>& bag) {
    std::int32_t cur = add(NiceTreeDecomposition::Kind::Leaf, 0, -1, -1, {});
    std::vector<int> acc;
    for (int v : bag) {
      acc.push_back(v);
      cur = add(NiceTreeDecomposition::Kind::IntroduceVertex, v, cur, -1, acc);
    }
    return cur;
  }

  // Forget src\dst then introduce dst\src, ending with bag == dst.
  std::int32_t transform(std::int32_t cur, const std::vector<int>& src,
                         const std::vector<int>& dst) {
    std::vector<int> acc = src;
    for (int v : src)
      if (!std::binary_search(dst.begin(), dst.end(), v)) {
        acc.erase(std::find(acc.begin(), acc.end(), v));
        cur = add(NiceTreeDecomposition::Kind::ForgetVertex, v, cur, -1, acc);
      }
    for (int v : dst)
      if (!std::binary_search(src.begin(), src.end(), v)) {
        acc.insert(std::lower_bound(acc.begin(), acc.end(), v), v);
        cur = add(NiceTreeDecomposition::Kind::IntroduceVertex, v, cur, -1, acc);
      }
    return cur;
  }
};

}  // namespace

NiceTreeDecomposition make_nice(const TreeDecomposition& td) {
  NiceBuilder nb;
  if (td.bags.empty()) {
    nb.out.root = nb.add(NiceTreeDecomposition::Kind::Leaf, 0, -1, -1, {});
    return std::move(nb.out);
  }
  std::size_t b = td.bags.size();
  std::vector<std::vector<int>> badj(b + 1);
  for (auto [i, j] : td.tree_edges) {
    badj[i].push_back(j);
    badj[j].push_back(i);
  }
  // Iterative post-order from bag 1.
  struct Item { int bag; int parent; bool expanded; };
  std::vector<Item> stack{{1, 0, false}};
  std::vector<std::int32_t> done(b + 1, -1);
  while (!stack.empty()) {
    auto [bag, parent, expanded] = stack.back();
    stack.pop_back();
    if (!expanded) {
      stack.push_back({bag, parent, true});
      for (int c : badj[bag])
        if (c != parent) stack.push_back({c, bag, false});
      continue;
    }
    const std::vector<int>& mybag = td.bags[bag - 1];
    std::int32_t cur = -1;
    for (int c : badj[bag]) {
      if (c == parent) continue;
      // child subtree ends at the child's own bag; lift it to this bag
      std::int32_t lifted = nb.transform(done[c], td.bags[c - 1], mybag);
      cur = (cur == -1)
                ? lifted
                : nb.add(NiceTreeDecomposition::Kind::JoinBags, 0, cur, lifted, mybag);
    }
    if (cur == -1) cur = nb.leaf_chain(mybag);
    done[bag] = cur;
  }
  // forget everything above the root bag
  std::int32_t root = nb.transform(done[1], td.bags[0], {});
  nb.out.root = root;
  return std::move(nb.out);
}

TreeDecomposition heuristic_td(const Graph& g) {
  int n = g.vertex_count();
  TreeDecomposition td;
  td.n = n;
  if (n == 0) {
    td.bags.push_back({});
    td.declared_width = -1;
    return td;
  }
  std::vector<std::set<int>> adj(n + 1);
  for (auto [u, v] : g.edges()) {
    adj[u].insert(v);
    adj[v].insert(u);
  }
  std::vector<char> alive(n + 1, 1);
  std::vector<int> elim_index(n + 1, 0);
  std::vector<std::vector<int>> bags;
  bags.reserve(n);
  for (int step = 1; step <= n; ++step) {
    // vertex with minimum fill; ties to the lowest index
    int best = -1;
    long long best_fill = -1;
    for (int v = 1; v <= n; ++v) {
      if (!alive[v]) continue;
      long long fill = 0;
      const auto& nb = adj[v];
      for (auto it = nb.begin(); it != nb.end(); ++it) {
        auto jt = it;
        for (++jt; jt != nb.end(); ++jt)
          if (!adj[*it].count(*jt)) ++fill;
      }
      if (best == -1 || fill < best_fill) {
        best = v;
        best_fill = fill;
      }
      if (best_fill == 0) break;  // cannot improve; lowest index wins
    }
    std::vector<int> bag{best};
    for (int u : adj[best]) bag.push_back(u);
    std::sort(bag.begin(), bag.end());
    bags.push_back(std::move(bag));
    elim_index[best] = step;
    // eliminate: clique-ify the neighborhood, drop the vertex
    std::vector<int> nbrs(adj[best].begin(), adj[best].end());
    for (std::size_t i = 0; i < nbrs.size(); ++i)
      for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
        adj[nbrs[i]].insert(nbrs[j]);
        adj[nbrs[j]].insert(nbrs[i]);
      }
    for (int u : nbrs) adj[u].erase(best);
    adj[best].clear();
    alive[best] = 0;
  }
  td.bags = std::move(bags);
  // connect each bag to the bag of its earliest-eliminated other member
  for (std::size_t i = 0; i < td.bags.size(); ++i) {
    int owner = 0;
    for (int v : td.bags[i])
      if (elim_index[v] == static_cast<int>(i) + 1) owner = v;
    int next = 0;
    for (int v : td.bags[i]) {
      if (v == owner) continue;
      if (!next || elim_index[v] < elim_index[next]) next = v;
    }
    if (next)
      td.tree_edges.emplace_back(static_cast<int>(i) + 1, elim_index[next]);
    else if (i + 1 < td.bags.size())
      td.tree_edges.emplace_back(static_cast<int>(i) + 1, static_cast<int>(i) + 2);
  }
  td.declared_width = td.width();
  return td;
}

// --- multi-coloring DP ------------------------------------------------------

namespace {

// States over a bag are rows of color masks, one per bag vertex (bag kept
// sorted), stored flat and ordered lexicographically.
struct StateSet {
  int width = 0;
  std::size_t nrows = 0;
  std::vector<ColorMask> data;  // nrows * width entries

  const ColorMask* row(std::size_t i) const { return data.data() + i * width; }
};

int compare_rows(const ColorMask* a, const ColorMask* b, int w) {
  for (int i = 0; i < w; ++i) {
    if (a[i] < b[i]) return -1;
    if (a[i] > b[i]) return 1;
  }
  return 0;
}

void sort_unique(StateSet& s) {
  if (s.width == 0) {
    s.nrows = std::min<std::size_t>(s.nrows, 1);
    return;
  }
  std::size_t n = s.nrows;
  std::vector<std::uint32_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = static_cast<std::uint32_t>(i);
  const int w = s.width;
  const ColorMask* d = s.data.data();
  std::sort(idx.begin(), idx.end(), [&](std::uint32_t a, std::uint32_t b) {
    return compare_rows(d + a * w, d + b * w, w) < 0;
  });
  std::vector<ColorMask> out;
  out.reserve(s.data.size());
  for (std::size_t i = 0; i < n; ++i) {
    const ColorMask* r = d + idx[i] * w;
    if (!out.empty() && compare_rows(&out[out.size() - w], r, w) == 0) continue;
    out.insert(out.end(), r, r + w);
  }
  s.data = std::move(out);
  s.nrows = s.data.size() / w;
}

// All masks with popcount `b` inside `allowed`, ascending.
std::vector<ColorMask> subsets_of_size(ColorMask allowed, int b) {
  std::vector<int> bits;
  for (int i = 0; i < kMaxColors; ++i)
    if (allowed >> i & 1) bits.push_back(i);
  std::vector<ColorMask> out;
  int nb = static_cast<int>(bits.size());
  if (b < 0 || b > nb) return out;
  std::vector<int> pick(b);
  for (int i = 0; i < b; ++i) pick[i] = i;
  for (;;) {
    ColorMask m = 0;
    for (int i : pick) m |= ColorMask{1} << bits[i];
    out.push_back(m);
    int i = b - 1;
    while (i >= 0 && pick[i] == nb - b + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < b; ++j) pick[j] = pick[j - 1] + 1;
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

bool decide_multicolor(const Quotient& q, int k, const NiceTreeDecomposition& ntd,
                       const std::vector<ColorMask>* allowed, const MtwOptions& opt,
                       MtwStats* stats) {
  const Graph& g = q.graph;
  int n = g.vertex_count();
  for (int v = 1; v <= n; ++v) {
    if (q.demand[v] < 1) throw ValidationError("demand must be positive");
    if (q.demand[v] > k) return false;  // a clique of size k+1 exists
  }
  auto allowed_of = [&](int v) -> ColorMask {
    ColorMask m = allowed ? (*allowed)[v] : full_mask(k);
    return m ? m : full_mask(k);
  };
  std::uint64_t state_cap = binom_u64(k, k / 2);

  std::vector<StateSet> pending(ntd.nodes.size());
  // children precede parents in the node array; any empty state set decides
  // the instance negatively right away
  for (std::size_t t = 0; t < ntd.nodes.size(); ++t) {
    const auto& node = ntd.nodes[t];
    StateSet cur;
    cur.width = static_cast<int>(node.bag.size());
    switch (node.kind) {
      case NiceTreeDecomposition::Kind::Leaf:
        cur.nrows = 1;  // the single empty state
        break;
      case NiceTreeDecomposition::Kind::IntroduceVertex: {
        StateSet child = std::move(pending[node.left]);
        int v = node.vertex;
        std::size_t pos = static_cast<std::size_t>(
            std::lower_bound(node.bag.begin(), node.bag.end(), v) - node.bag.begin());
        std::vector<ColorMask> options = subsets_of_size(allowed_of(v), q.demand[v]);
        // bag positions adjacent to v (positions in the child bag)
        std::vector<std::size_t> nbr_pos;
        for (std::size_t i = 0; i < node.bag.size(); ++i) {
          if (node.bag[i] == v) continue;
          if (g.has_edge(v, node.bag[i])) nbr_pos.push_back(i < pos ? i : i - 1);
        }
        for (std::size_t rix = 0; rix < child.nrows; ++rix) {
          const ColorMask* r = child.row(rix);
          for (ColorMask m : options) {
            bool ok = true;
            for (std::size_t np : nbr_pos)
              if (r[np] & m) { ok = false; break; }
            if (!ok) continue;
            for (std::size_t i = 0; i < pos; ++i) cur.data.push_back(r[i]);
            cur.data.push_back(m);
            for (std::size_t i = pos; i < static_cast<std::size_t>(child.width); ++i)
              cur.data.push_back(r[i]);
            ++cur.nrows;
          }
        }
        sort_unique(cur);
        break;
      }
      case NiceTreeDecomposition::Kind::ForgetVertex: {
        StateSet child = std::move(pending[node.left]);
        int v = node.vertex;
        const auto& cbag = ntd.nodes[node.left].bag;
        std::size_t pos = static_cast<std::size_t>(
            std::lower_bound(cbag.begin(), cbag.end(), v) - cbag.begin());
        for (std::size_t rix = 0; rix < child.nrows; ++rix) {
          const ColorMask* r = child.row(rix);
          for (std::size_t i = 0; i < static_cast<std::size_t>(child.width); ++i)
            if (i != pos) cur.data.push_back(r[i]);
        }
        cur.nrows = child.nrows;
        sort_unique(cur);
        break;
      }
      case NiceTreeDecomposition::Kind::JoinBags: {
        StateSet a = std::move(pending[node.left]);
        StateSet b = std::move(pending[node.right]);
        if (cur.width == 0) {
          cur.nrows = std::min(a.nrows, b.nrows);
          break;
        }
        std::size_t ia = 0, ib = 0;
        const int w = cur.width;
        while (ia < a.nrows && ib < b.nrows) {
          int c = compare_rows(a.row(ia), b.row(ib), w);
          if (c < 0) ++ia;
          else if (c > 0) ++ib;
          else {
            cur.data.insert(cur.data.end(), a.row(ia), a.row(ia) + w);
            ++cur.nrows;
            ++ia; ++ib;
          }
        }
        break;
      }
    }
    if (stats) {
      stats->peak_states = std::max<std::uint64_t>(stats->peak_states, cur.nrows);
      ++stats->nodes;
    }
    // table bound: states never exceed (k choose floor(k/2))^|bag|
    std::uint64_t bound = 1;
    bool saturated = false;
    for (std::size_t i = 0; i < node.bag.size(); ++i) {
      if (bound > (std::uint64_t{1} << 62) / std::max<std::uint64_t>(state_cap, 1)) {
        saturated = true;
        break;
      }
      bound *= state_cap;
    }
    if (!saturated && cur.nrows > bound)
      throw ValidationError("state count exceeds (k choose k/2)^|bag|");
    if (cur.nrows > opt.max_states)
      throw LimitError("multi-coloring state set exceeds the limit of " +
                       std::to_string(opt.max_states) + " states");
    if (cur.nrows == 0) return false;  // no extension survives
    pending[t] = std::move(cur);
  }
  return pending[ntd.root].nrows > 0;
}

ListContraction contract_for_multicoloring(const Graph& g,
                                           const std::vector<ColorMask>* lists) {
  auto list_of = [&](int v) -> ColorMask { return lists ? (*lists)[v] : 0; };

  // stage 1: drop false-twin duplicates that share a list
  TwinPartition part = twin_classes(g);
  int n = g.vertex_count();
  std::vector<int> old_to_new(n + 1, 0);
  std::vector<int> kept;
  for (int v = 1; v <= n; ++v) {
    const auto& cls = part.classes[part.class_of[v]];
    bool drop = false;
    if (cls.kind == TwinKind::FALSE_CLASS) {
      for (int u : cls.members) {
        if (u >= v) break;
        if (list_of(u) == list_of(v)) {
          drop = true;  // an earlier member with the same list survives
          break;
        }
      }
    }
    if (!drop) {
      old_to_new[v] = static_cast<int>(kept.size()) + 1;
      kept.push_back(v);
    }
  }
  Graph reduced(static_cast<int>(kept.size()));
  for (auto [u, v] : g.edges())
    if (old_to_new[u] && old_to_new[v]) reduced.add_edge(old_to_new[u], old_to_new[v]);
  // representative (same list, same neighborhood) of every dropped vertex
  std::vector<int> surrogate(n + 1, 0);
  for (int v = 1; v <= n; ++v) {
    if (old_to_new[v]) {
      surrogate[v] = v;
      continue;
    }
    for (int u : part.classes[part.class_of[v]].members)
      if (old_to_new[u] && list_of(u) == list_of(v)) {
        surrogate[v] = u;
        break;
      }
  }

  // stage 2: collapse true-twin classes, refined by list
  TwinPartition part2 = twin_classes(reduced);
  std::vector<std::vector<int>> classes;  // refined, each sorted
  for (const auto& cls : part2.classes) {
    if (!lists || cls.members.size() == 1) {
      classes.push_back(cls.members);
      continue;
    }
    std::map<ColorMask, std::vector<int>> by_list;
    for (int v : cls.members) by_list[list_of(kept[v - 1])].push_back(v);
    if (cls.kind == TwinKind::FALSE_CLASS)
      for (auto& [m, members] : by_list) {
        // same-list false duplicates were removed in stage 1
        if (members.size() != 1)
          throw ValidationError("internal: false-twin duplicates survived stage 1");
      }
    for (auto& [m, members] : by_list) classes.push_back(std::move(members));
  }
  std::sort(classes.begin(), classes.end(),
            [](const auto& a, const auto& b) { return a[0] < b[0]; });

  ListContraction c;
  std::vector<int> reduced_to_quot(reduced.vertex_count() + 1, 0);
  c.quotient.graph = Graph(static_cast<int>(classes.size()));
  c.quotient.demand.assign(classes.size() + 1, 1);
  if (lists) c.allowed.assign(classes.size() + 1, 0);
  for (std::size_t i = 0; i < classes.size(); ++i) {
    const auto& cls = classes[i];
    bool adjacent = cls.size() >= 2 && reduced.has_edge(cls[0], cls[1]);
    c.quotient.demand[i + 1] = adjacent ? static_cast<int>(cls.size()) : 1;
    if (!adjacent && cls.size() >= 2)
      throw ValidationError("internal: non-adjacent twins survived stage 1");
    for (int v : cls) reduced_to_quot[v] = static_cast<int>(i) + 1;
    if (lists) c.allowed[i + 1] = list_of(kept[cls[0] - 1]);
  }
  for (auto [u, v] : reduced.edges()) {
    int cu = reduced_to_quot[u], cv = reduced_to_quot[v];
    if (cu != cv) c.quotient.graph.add_edge(cu, cv);
  }
  c.orig_to_quot.assign(n + 1, 0);
  for (int v = 1; v <= n; ++v) c.orig_to_quot[v] = reduced_to_quot[old_to_new[surrogate[v]]];
  c.quotient.class_map = c.orig_to_quot;
  return c;
}

namespace {

TreeDecomposition adapt_td(const TreeDecomposition& td, const Graph& g,
                           const ListContraction& c) {
  if (td.n == c.quotient.graph.vertex_count()) {
    validate_td(td, c.quotient.graph);
    return td;
  }
  if (td.n != g.vertex_count())
    throw ValidationError("decomposition matches neither the graph nor its quotient");
  TreeDecomposition out;
  out.n = c.quotient.graph.vertex_count();
  out.tree_edges = td.tree_edges;
  out.bags.reserve(td.bags.size());
  for (const auto& bag : td.bags) {
    std::vector<int> nb;
    for (int v : bag) nb.push_back(c.orig_to_quot[v]);
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    out.bags.push_back(std::move(nb));
  }
  out.declared_width = out.width();
  validate_td(out, c.quotient.graph);
  return out;
}

bool decide_contracted(const ListContraction& c, int k, const Graph& g,
                       const TreeDecomposition* td, const MtwOptions& opt,
                       MtwStats* stats) {
  const std::vector<ColorMask>* allowed = c.allowed.empty() ? nullptr : &c.allowed;
  if (allowed)
    for (int v = 1; v <= c.quotient.graph.vertex_count(); ++v)
      if (c.quotient.demand[v] > mask_size(c.allowed[v])) return false;
  TreeDecomposition qtd = td ? adapt_td(*td, g, c) : heuristic_td(c.quotient.graph);
  if (!td) validate_td(qtd, c.quotient.graph);
  NiceTreeDecomposition ntd = make_nice(qtd);
  return decide_multicolor(c.quotient, k, ntd, allowed, opt, stats);
}

}  // namespace

bool decide_colorable_mtw(const Graph& g, int k, const TreeDecomposition* td,
                          const MtwOptions& opt, MtwStats* stats) {
  if (k < 1) return g.vertex_count() == 0;
  if (g.vertex_count() == 0) return true;
  ListContraction c = contract_for_multicoloring(g);
  return decide_contracted(c, k, g, td, opt, stats);
}

bool decide_list_colorable_mtw(const ListColoringInstance& inst,
                               const TreeDecomposition* td, const MtwOptions& opt,
                               MtwStats* stats) {
  inst.validate();
  const Graph& g = inst.graph;
  if (g.vertex_count() == 0) return true;
  ListContraction c = contract_for_multicoloring(g, &inst.lists);
  return decide_contracted(c, inst.k, g, td, opt, stats);
}

}  // namespace cwcolor
