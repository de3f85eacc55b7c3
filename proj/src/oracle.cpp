#include "oracle.hpp"

#include <algorithm>
#include <numeric>

namespace cwcolor {

namespace {

// Reverse degeneracy order: each vertex sees as many already-colored
// neighbors as possible when it is reached.
std::vector<int> coloring_order(const Graph& g) {
  int n = g.vertex_count();
  std::vector<int> deg(n + 1), order;
  std::vector<char> removed(n + 1, 0);
  for (int v = 1; v <= n; ++v) deg[v] = g.degree(v);
  for (int step = 0; step < n; ++step) {
    int best = 0;
    for (int v = 1; v <= n; ++v)
      if (!removed[v] && (best == 0 || deg[v] < deg[best])) best = v;
    removed[best] = 1;
    order.push_back(best);
    for (int u : g.neighbors(best))
      if (!removed[u]) --deg[u];
  }
  std::reverse(order.begin(), order.end());
  return order;
}

std::uint64_t search_space(const ListColoringInstance& inst, std::uint64_t guard) {
  unsigned __int128 space = 1;
  for (int v = 1; v <= inst.graph.vertex_count(); ++v) {
    space *= static_cast<unsigned>(mask_size(inst.lists[v]));
    if (space > guard)
      throw LimitError("list-coloring search space exceeds the guard of " +
                       std::to_string(guard));
  }
  return static_cast<std::uint64_t>(space);
}

std::uint64_t count_rec(const ListColoringInstance& inst, const std::vector<int>& order,
                        std::vector<int>& colors, std::size_t idx, bool decide_only) {
  if (idx == order.size()) return 1;
  int v = order[idx];
  std::uint64_t total = 0;
  for (int c = 1; c <= inst.k; ++c) {
    if (!mask_has(inst.lists[v], c)) continue;
    bool ok = true;
    for (int u : inst.graph.neighbors(v))
      if (colors[u] == c) {
        ok = false;
        break;
      }
    if (!ok) continue;
    colors[v] = c;
    total += count_rec(inst, order, colors, idx + 1, decide_only);
    colors[v] = 0;
    if (decide_only && total) return total;
  }
  return total;
}

}  // namespace

mpz_class brute_count_list_colorings(const ListColoringInstance& inst, std::uint64_t guard) {
  inst.validate();
  search_space(inst, guard);
  std::vector<int> order = coloring_order(inst.graph);
  std::vector<int> colors(inst.graph.vertex_count() + 1, 0);
  std::uint64_t cnt = count_rec(inst, order, colors, 0, false);
  mpz_class out;
  mpz_import(out.get_mpz_t(), 1, 1, sizeof cnt, 0, 0, &cnt);
  return out;
}

bool brute_list_colorable(const ListColoringInstance& inst, std::uint64_t guard) {
  inst.validate();
  search_space(inst, guard);
  std::vector<int> order = coloring_order(inst.graph);
  std::vector<int> colors(inst.graph.vertex_count() + 1, 0);
  return count_rec(inst, order, colors, 0, true) > 0;
}

mpz_class brute_count_colorings(const Graph& g, int k, std::uint64_t guard) {
  return brute_count_list_colorings(ListColoringInstance(g, k), guard);
}

bool brute_colorable(const Graph& g, int k, std::uint64_t guard) {
  return brute_list_colorable(ListColoringInstance(g, k), guard);
}

bool brute_csp(const CspInstance& csp, std::uint64_t guard) {
  csp.validate();
  unsigned __int128 space = 1;
  for (int i = 0; i < csp.n; ++i) {
    space *= static_cast<unsigned>(csp.B);
    if (space > guard)
      throw LimitError("CSP search space exceeds the guard of " + std::to_string(guard));
  }
  std::vector<int> assign(csp.n + 1, 1);
  for (;;) {
    bool all_ok = true;
    for (const auto& c : csp.constraints) {
      bool sat = false;
      for (const auto& t : c.tuples) {
        bool match = true;
        for (std::size_t i = 0; i < c.vars.size(); ++i)
          if (assign[c.vars[i]] != t[i]) {
            match = false;
            break;
          }
        if (match) {
          sat = true;
          break;
        }
      }
      if (!sat) {
        all_ok = false;
        break;
      }
    }
    if (all_ok) return true;
    int i = 1;
    while (i <= csp.n && assign[i] == csp.B) assign[i++] = 1;
    if (i > csp.n) return false;
    ++assign[i];
  }
}

bool brute_sat(const CnfFormula& f, int max_vars) {
  f.validate();
  if (f.n > max_vars)
    throw LimitError("SAT enumeration guard: n = " + std::to_string(f.n) + " > " +
                     std::to_string(max_vars));
  for (std::uint64_t a = 0; a < (std::uint64_t{1} << f.n); ++a) {
    bool ok = true;
    for (const auto& cl : f.clauses) {
      bool sat = false;
      for (int lit : cl) {
        bool val = (a >> (std::abs(lit) - 1)) & 1;
        if (lit > 0 ? val : !val) {
          sat = true;
          break;
        }
      }
      if (!sat) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

Graph random_graph(Rng& rng, int n, double p) {
  Graph g(n);
  for (int u = 1; u <= n; ++u)
    for (int v = u + 1; v <= n; ++v)
      if (rng.chance(p)) g.add_edge(u, v);
  return g;
}

CnfFormula random_cnf3(Rng& rng, int n, int m) {
  CnfFormula f;
  f.n = n;
  for (int i = 0; i < m; ++i) {
    int len = std::min(n, rng.range(1, 3));
    std::vector<int> vars;
    while (static_cast<int>(vars.size()) < len) {
      int v = rng.range(1, n);
      if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
    }
    std::vector<int> clause;
    for (int v : vars) clause.push_back(rng.chance(0.5) ? v : -v);
    f.clauses.push_back(std::move(clause));
  }
  return f;
}

CspInstance random_csp(Rng& rng, int n, int m, int B, int max_arity, int max_tuples) {
  CspInstance csp;
  csp.n = n;
  csp.B = B;
  for (int i = 0; i < m; ++i) {
    CspConstraint c;
    int arity = std::min(n, rng.range(1, max_arity));
    std::vector<int> vars;
    while (static_cast<int>(vars.size()) < arity) {
      int v = rng.range(1, n);
      if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
    }
    c.vars = vars;
    int ntup = rng.range(1, max_tuples);
    for (int t = 0; t < ntup; ++t) {
      std::vector<int> tup;
      for (int a = 0; a < arity; ++a) tup.push_back(rng.range(1, B));
      c.tuples.push_back(std::move(tup));
    }
    std::sort(c.tuples.begin(), c.tuples.end());
    c.tuples.erase(std::unique(c.tuples.begin(), c.tuples.end()), c.tuples.end());
    csp.constraints.push_back(std::move(c));
  }
  return csp;
}

// Grows a forest of sub-expressions and merges them, so union nodes appear
// with non-leaf operands on both sides (the transform-based combine), with
// overlapping as well as disjoint label sets.
CwExpr random_cwe(Rng& rng, int max_width, int target_vertices) {
  CwExpr e;
  auto label = [&] { return rng.range(1, max_width); };
  std::vector<std::int32_t> forest{e.intro(label())};
  int vertices = 1;
  auto pick = [&] { return rng.below(forest.size()); };
  while (vertices < target_vertices || forest.size() > 1) {
    int op = rng.range(0, 5);
    if (vertices >= target_vertices && op <= 1) op = 2;
    switch (op) {
      case 0:  // fresh single-vertex tree
        forest.push_back(e.intro(label()));
        ++vertices;
        break;
      case 1: {  // union a leaf onto an existing tree
        std::size_t i = pick();
        forest[i] = e.make_union(forest[i], e.intro(label()));
        ++vertices;
        break;
      }
      case 2: {  // merge two trees
        if (forest.size() < 2) break;
        std::size_t i = pick(), j = pick();
        if (i == j) break;
        forest[i] = e.make_union(forest[i], forest[j]);
        forest.erase(forest.begin() + static_cast<std::ptrdiff_t>(j));
        break;
      }
      case 3: {
        int a = label(), b = label();
        std::size_t i = pick();
        if (a != b) forest[i] = e.join(a, b, forest[i]);
        break;
      }
      case 4: {
        int a = label(), b = label();
        std::size_t i = pick();
        if (a != b) forest[i] = e.rename(a, b, forest[i]);
        break;
      }
    }
  }
  std::int32_t acc = forest[0];
  for (int extra = rng.range(1, 2 + max_width); extra > 0; --extra) {
    int a = label(), b = label();
    if (a != b) acc = e.join(a, b, acc);
  }
  e.root = acc;
  return e;
}

namespace {
Rng stream_rng(const std::string& profile, std::uint64_t seed, int index) {
  std::uint64_t h = fnv1a(profile);
  h = fnv1a(&seed, sizeof seed, h);
  h = fnv1a(&index, sizeof index, h);
  return Rng(h);
}
[[noreturn]] void unknown_profile(const std::string& profile) {
  throw ValidationError("unknown profile '" + profile + "'");
}
}  // namespace

CwExpr random_suite_cwe(const std::string& profile, std::uint64_t seed, int index) {
  Rng rng = stream_rng(profile, seed, index);
  if (profile == "cwe-small") return random_cwe(rng, 4, rng.range(2, 10));
  unknown_profile(profile);
}

Graph random_suite_graph(const std::string& profile, std::uint64_t seed, int index) {
  Rng rng = stream_rng(profile, seed, index);
  if (profile.rfind("graph-n", 0) == 0) {
    auto dash = profile.find("-p");
    if (dash != std::string::npos) {
      int n = std::stoi(profile.substr(7, dash - 7));
      double p = std::stod(profile.substr(dash + 2));
      return random_graph(rng, n, p);
    }
  }
  unknown_profile(profile);
}

CnfFormula random_suite_cnf(const std::string& profile, std::uint64_t seed, int index) {
  Rng rng = stream_rng(profile, seed, index);
  if (profile.rfind("cnf3-n", 0) == 0) {
    int n = std::stoi(profile.substr(6));
    return random_cnf3(rng, n, rng.range(1, 3 * n));
  }
  unknown_profile(profile);
}

CspInstance random_suite_csp(const std::string& profile, std::uint64_t seed, int index) {
  Rng rng = stream_rng(profile, seed, index);
  if (profile == "csp-small") {
    int n = rng.range(1, 2);
    int m = rng.range(1, 2);
    return random_csp(rng, n, m, 6, std::min(n, 2), 4);
  }
  unknown_profile(profile);
}

}  // namespace cwcolor
