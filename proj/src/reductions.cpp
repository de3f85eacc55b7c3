#include "reductions.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace cwcolor {

void CnfFormula::validate() const {
  if (n < 0) throw ValidationError("negative variable count");
  for (std::size_t i = 0; i < clauses.size(); ++i) {
    if (clauses[i].empty())
      throw ValidationError("clause " + std::to_string(i + 1) + " is empty");
    for (int lit : clauses[i])
      if (lit == 0 || std::abs(lit) > n)
        throw ValidationError("clause " + std::to_string(i + 1) + " has literal " +
                              std::to_string(lit) + " out of range");
  }
}

CnfFormula parse_cnf(std::istream& in) {
  CnfFormula f;
  std::string line;
  bool have_header = false;
  std::size_t declared_m = 0;
  std::vector<int> cur;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag == "c") continue;
    if (tag == "p") {
      std::string fmt;
      long long m;
      if (!(ls >> fmt >> f.n >> m) || fmt != "cnf" || f.n < 0 || m < 0)
        throw ParseError("line " + std::to_string(lineno) + ": bad problem line");
      declared_m = static_cast<std::size_t>(m);
      have_header = true;
    } else {
      if (!have_header) throw ParseError("clause before problem line");
      int lit = std::stoi(tag);
      for (;;) {
        if (lit == 0) {
          if (cur.empty())
            throw ParseError("line " + std::to_string(lineno) + ": empty clause");
          f.clauses.push_back(cur);
          cur.clear();
        } else {
          cur.push_back(lit);
        }
        if (!(ls >> lit)) break;
      }
    }
  }
  if (!cur.empty()) throw ParseError("unterminated clause (missing trailing 0)");
  if (!have_header) throw ParseError("missing problem line");
  if (f.clauses.size() != declared_m)
    throw ParseError("clause count mismatch: header says " + std::to_string(declared_m) +
                     ", found " + std::to_string(f.clauses.size()));
  f.validate();
  return f;
}

CnfFormula parse_cnf_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return parse_cnf(in);
}

void write_cnf(std::ostream& out, const CnfFormula& f) {
  out << "p cnf " << f.n << " " << f.clauses.size() << "\n";
  for (const auto& cl : f.clauses) {
    for (int lit : cl) out << lit << " ";
    out << "0\n";
  }
}

int CspInstance::max_arity() const {
  int q = 0;
  for (const auto& c : constraints) q = std::max(q, static_cast<int>(c.vars.size()));
  return q;
}

void CspInstance::validate() const {
  if (n < 0 || B < 2) throw ValidationError("CSP needs n >= 0 and B >= 2");
  for (std::size_t ci = 0; ci < constraints.size(); ++ci) {
    const auto& c = constraints[ci];
    std::string where = "constraint " + std::to_string(ci + 1);
    if (c.vars.empty()) throw ValidationError(where + " has no variables");
    std::vector<int> sorted = c.vars;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw ValidationError(where + " repeats a variable");
    for (int v : c.vars)
      if (v < 1 || v > n) throw ValidationError(where + " references variable out of range");
    if (c.tuples.empty())
      throw ValidationError(where + " has an empty satisfying set (encode unsatisfiability "
                            "with conflicting constraints instead)");
    for (const auto& t : c.tuples) {
      if (t.size() != c.vars.size()) throw ValidationError(where + " has a tuple of wrong arity");
      for (int a : t)
        if (a < 1 || a > B) throw ValidationError(where + " has a tuple value out of range");
    }
  }
}

CspInstance parse_csp(std::istream& in) {
  CspInstance csp;
  std::string line;
  int lineno = 0, declared_m = -1, declared_q = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag == "#") continue;
    auto fail = [&](const std::string& msg) -> void {
      throw ParseError("line " + std::to_string(lineno) + ": " + msg);
    };
    if (tag == "p") {
      std::string fmt;
      if (!(ls >> fmt >> csp.n >> declared_m >> csp.B >> declared_q) || fmt != "csp")
        fail("bad 'p csp' header");
      have_header = true;
    } else if (tag == "c") {
      if (!have_header) fail("constraint before header");
      int arity;
      if (!(ls >> arity) || arity < 1) fail("bad constraint arity");
      CspConstraint c;
      for (int i = 0; i < arity; ++i) {
        int v;
        if (!(ls >> v)) fail("missing constraint variable");
        c.vars.push_back(v);
      }
      csp.constraints.push_back(std::move(c));
    } else if (tag == "t") {
      if (csp.constraints.empty()) fail("tuple before any constraint");
      auto& c = csp.constraints.back();
      std::vector<int> t;
      int a;
      while (ls >> a) t.push_back(a);
      if (t.size() != c.vars.size()) fail("tuple arity mismatch");
      c.tuples.push_back(std::move(t));
    } else {
      fail("unknown line type '" + tag + "'");
    }
  }
  if (!have_header) throw ParseError("missing 'p csp' header");
  if (declared_m != static_cast<int>(csp.constraints.size()))
    throw ParseError("constraint count mismatch with header");
  csp.validate();
  return csp;
}

CspInstance parse_csp_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return parse_csp(in);
}

void write_csp(std::ostream& out, const CspInstance& csp) {
  out << "p csp " << csp.n << " " << csp.constraints.size() << " " << csp.B << " "
      << csp.max_arity() << "\n";
  for (const auto& c : csp.constraints) {
    out << "c " << c.vars.size();
    for (int v : c.vars) out << " " << v;
    out << "\n";
    for (const auto& t : c.tuples) {
      out << "t";
      for (int a : t) out << " " << a;
      out << "\n";
    }
  }
}

CspInstance sat_to_csp(const CnfFormula& f, int B, int t, GroupingParams* params,
                       int max_groups_per_clause) {
  f.validate();
  if (B < 2) throw ValidationError("alphabet size B must be >= 2");
  if (t < 1 || t > 62) throw ValidationError("group size t must be in 1..62");
  // smallest p with B^p >= 2^t
  int p = 0;
  {
    unsigned __int128 target = static_cast<unsigned __int128>(1) << t;
    unsigned __int128 bp = 1;
    while (bp < target) {
      bp *= static_cast<unsigned>(B);
      ++p;
    }
  }
  int gamma = (f.n + t - 1) / t;
  GroupingParams gp;
  gp.B = B;
  gp.t = t;
  gp.p = p;
  gp.gamma = gamma;
  gp.groups.resize(gamma);
  for (int v = 1; v <= f.n; ++v) gp.groups[(v - 1) / t].push_back(v);

  CspInstance csp;
  csp.n = gamma * p;
  csp.B = B;
  for (std::size_t ci = 0; ci < f.clauses.size(); ++ci) {
    const auto& clause = f.clauses[ci];
    std::vector<int> groups;
    for (int lit : clause) groups.push_back((std::abs(lit) - 1) / t);
    std::sort(groups.begin(), groups.end());
    groups.erase(std::unique(groups.begin(), groups.end()), groups.end());
    if (static_cast<int>(groups.size()) > max_groups_per_clause)
      throw LimitError("clause " + std::to_string(ci + 1) + " touches " +
                       std::to_string(groups.size()) + " groups (limit " +
                       std::to_string(max_groups_per_clause) + ")");
    int total_bits = 0;
    std::vector<int> offset(groups.size());
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
      offset[gi] = total_bits;
      total_bits += static_cast<int>(gp.groups[groups[gi]].size());
    }
    if (total_bits > 24)
      throw LimitError("clause " + std::to_string(ci + 1) + " spans " +
                       std::to_string(total_bits) + " variables; enumeration too large");
    // bit position of a SAT variable within the assignment word
    auto bit_of = [&](int var) -> int {
      int g = (var - 1) / t;
      for (std::size_t gi = 0; gi < groups.size(); ++gi)
        if (groups[gi] == g) {
          const auto& members = gp.groups[g];
          auto it = std::find(members.begin(), members.end(), var);
          return offset[gi] + static_cast<int>(it - members.begin());
        }
      throw ValidationError("internal grouping error");
    };
    CspConstraint con;
    for (int g : groups)
      for (int j = 0; j < p; ++j) con.vars.push_back(g * p + j + 1);
    for (std::uint32_t asg = 0; asg < (1u << total_bits); ++asg) {
      bool sat = false;
      for (int lit : clause) {
        bool val = (asg >> bit_of(std::abs(lit))) & 1;
        if (lit > 0 ? val : !val) {
          sat = true;
          break;
        }
      }
      if (!sat) continue;
      // group value (first variable = least significant bit) -> p digits
      // base B, low digit first, offset to 1..B
      std::vector<int> tuple;
      for (std::size_t gi = 0; gi < groups.size(); ++gi) {
        std::uint64_t val = (asg >> offset[gi]) &
                            ((1u << gp.groups[groups[gi]].size()) - 1);
        for (int j = 0; j < p; ++j) {
          tuple.push_back(static_cast<int>(val % B) + 1);
          val /= B;
        }
      }
      con.tuples.push_back(std::move(tuple));
    }
    csp.constraints.push_back(std::move(con));
  }
  if (params) *params = std::move(gp);
  return csp;
}

int TranslationTable::inverse(ColorMask m) const {
  auto it = std::lower_bound(to_set.begin() + 1, to_set.end(), m);
  if (it == to_set.end() || *it != m) return 0;
  return static_cast<int>(it - to_set.begin());
}

TranslationTable value_encoding(int k, SubsetScheme scheme) {
  if (k < 3 || k > kMaxColors) throw ValidationError("value encodings need k >= 3");
  TranslationTable t;
  t.k = k;
  t.scheme = scheme;
  t.to_set.push_back(0);  // index 0 unused
  if (scheme == SubsetScheme::ProperSubsets) {
    if (k > 20) throw LimitError("2^k-2 proper subsets too many to enumerate at k=" +
                                 std::to_string(k));
    for (ColorMask m = 1; m <= full_mask(k) - 1; ++m) t.to_set.push_back(m);
  } else {
    if (binom_u64(k, k / 2) > 4'000'000)
      throw LimitError("(k choose k/2) too large to enumerate at k=" + std::to_string(k));
    int half = k / 2;
    for (ColorMask m = 1; m < full_mask(k); ++m)
      if (mask_size(m) == half) t.to_set.push_back(m);
  }
  return t;
}

void Provenance::set(const std::string& key, const std::string& value) {
  kv.emplace_back(key, value);
}
void Provenance::set(const std::string& key, std::uint64_t value) {
  kv.emplace_back(key, std::to_string(value));
}
std::string Provenance::text() const {
  std::string out;
  for (const auto& [k, v] : kv) out += k + "=" + v + "\n";
  return out;
}

// --- CSP -> coloring with a clique-width expression witness ----------------

namespace {

// Emits the instance graph and its witness expression in lockstep. Work
// labels are a fixed pool reused across iterations: vertices whose edges are
// complete move to the junk label, per-iteration V vertices accumulate on a
// per-variable pending label until the iteration ends. Live labels never
// exceed n + arity + 4.
struct CwEmitter {
  int k, n;
  ColorMask full;
  InstanceBuilder b;
  CwExpr expr;
  std::int32_t acc = -1;
  std::vector<GadgetRecord> records;
  int leaf_count = 0;

  int junk, oa, ow, tgt, w1, w2;

  CwEmitter(int k_, int n_) : k(k_), n(n_), full(full_mask(k_)), b(k_) {
    junk = n + 1;
    oa = 2 * n + 2;
    ow = 2 * n + 3;
    tgt = 2 * n + 4;
    w1 = 2 * n + 5;
    w2 = 2 * n + 6;
  }
  int main_label(int var) const { return var; }
  int pend_label(int var) const { return n + 1 + var; }

  int vertex(int label, ColorMask list) {
    int v = b.add_vertex(list);
    std::int32_t leaf = expr.intro(label, list);
    acc = (acc < 0) ? leaf : expr.make_union(acc, leaf);
    ++leaf_count;
    return v;
  }
  void join(int l1, int l2) { acc = expr.join(l1, l2, acc); }
  void ren(int from, int to) { acc = expr.rename(from, to, acc); }

  // (1 -> c)-implication from the current OA vertex to the current TGT
  // vertex: k-1 weak edges wired with two alternating work labels.
  void implication(int a_vertex, int tgt_vertex, int c) {
    std::vector<int> internals;
    for (int cp = 1; cp <= k; ++cp) {
      if (cp == c) continue;
      auto lists = weak_edge_lists(1, cp, k);
      int v1 = vertex(w1, lists[0]);
      b.add_edge(a_vertex, v1);
      join(oa, w1);
      int v2 = vertex(w2, lists[1]);
      b.add_edge(v1, v2);
      join(w1, w2);
      ren(w1, junk);
      int v3 = vertex(w1, lists[2]);
      b.add_edge(v2, v3);
      join(w2, w1);
      ren(w2, junk);
      b.add_edge(v3, tgt_vertex);
      join(w1, tgt);
      ren(w1, junk);
      records.push_back({GadgetRecord::Kind::WeakEdge, {a_vertex, tgt_vertex}, 1, cp,
                         {v1, v2, v3}});
      internals.insert(internals.end(), {v1, v2, v3});
    }
    records.push_back({GadgetRecord::Kind::Implication, {a_vertex, tgt_vertex}, 1, c,
                       std::move(internals)});
  }
};

}  // namespace

GeneratedCwInstance csp_to_coloring_cw(const CspInstance& csp, int k) {
  csp.validate();
  if (k < 3 || k > 20) throw ValidationError("csp2cw needs 3 <= k <= 20");
  if (static_cast<std::uint64_t>(csp.B) != sig_radix(k))
    throw ValidationError("B mismatch: csp2cw requires B = 2^k-2 = " +
                          std::to_string(sig_radix(k)) + ", got B = " + std::to_string(csp.B));
  if (csp.constraints.empty())
    throw ValidationError("the construction needs at least one constraint");
  TranslationTable T = value_encoding(k, SubsetScheme::ProperSubsets);
  const int n = csp.n;
  const std::uint64_t m = csp.constraints.size();
  const std::uint64_t L = 3 * m * (static_cast<std::uint64_t>(n) * k + 1);

  CwEmitter em(k, n);
  std::vector<std::vector<int>> prev_v(n + 1);  // V_i vertices of earlier iterations
  const ColorMask or_member_list = color_bit(1) | color_bit(2) | color_bit(3);

  for (std::uint64_t it = 0; it < L; ++it) {
    const CspConstraint& c = csp.constraints[it % m];
    std::vector<std::pair<int, int>> vars_sorted;  // (variable, tuple position)
    for (std::size_t pos = 0; pos < c.vars.size(); ++pos)
      vars_sorted.emplace_back(c.vars[pos], static_cast<int>(pos));
    std::sort(vars_sorted.begin(), vars_sorted.end());

    std::vector<std::vector<int>> cur_v(n + 1);
    std::vector<int> or_members, or_internals;
    int w_prev = em.vertex(em.ow, color_bit(2));
    or_internals.push_back(w_prev);
    for (std::size_t ti = 0; ti < c.tuples.size(); ++ti) {
      const auto& tuple = c.tuples[ti];
      int a_v = em.vertex(em.oa, or_member_list);
      or_members.push_back(a_v);
      em.b.add_edge(w_prev, a_v);
      em.join(em.oa, em.ow);
      em.ren(em.ow, em.junk);
      for (auto [var, pos] : vars_sorted) {
        ColorMask tv = T(tuple[pos]);
        for (int col = 1; col <= k; ++col) {
          if (!mask_has(tv, col)) continue;
          int tv_vertex = em.vertex(em.tgt, em.full);
          cur_v[var].push_back(tv_vertex);
          em.implication(a_v, tv_vertex, col);
          em.ren(em.tgt, em.pend_label(var));
        }
        for (int col = 1; col <= k; ++col) {
          if (mask_has(tv, col)) continue;
          int u_vertex = em.vertex(em.tgt, em.full);
          em.implication(a_v, u_vertex, col);
          for (int pv : prev_v[var]) em.b.add_edge(u_vertex, pv);
          em.join(em.tgt, em.main_label(var));
          em.ren(em.tgt, em.junk);
        }
      }
      ColorMask wl = (ti + 1 == c.tuples.size()) ? color_bit(3)
                                                 : (color_bit(2) | color_bit(3));
      int w_next = em.vertex(em.ow, wl);
      em.b.add_edge(a_v, w_next);
      em.join(em.oa, em.ow);
      em.ren(em.oa, em.junk);
      or_internals.push_back(w_next);
      w_prev = w_next;
    }
    em.ren(em.ow, em.junk);
    for (auto [var, pos] : vars_sorted) {
      em.ren(em.pend_label(var), em.main_label(var));
      auto& pv = prev_v[var];
      pv.insert(pv.end(), cur_v[var].begin(), cur_v[var].end());
    }
    em.records.push_back({GadgetRecord::Kind::OrGadget, std::move(or_members), 0, 0,
                          std::move(or_internals)});
  }
  em.expr.root = em.acc;

  GeneratedCwInstance gen;
  gen.instance = em.b.take_instance();
  gen.witness = std::move(em.expr);
  gen.gadget_records = std::move(em.records);
  gen.label_count = width(gen.witness);
  gen.iterations = L;
  gen.provenance.set("generator", "csp2cw");
  gen.provenance.set("k", static_cast<std::uint64_t>(k));
  gen.provenance.set("B", static_cast<std::uint64_t>(csp.B));
  gen.provenance.set("n", static_cast<std::uint64_t>(n));
  gen.provenance.set("m", m);
  gen.provenance.set("q", static_cast<std::uint64_t>(csp.max_arity()));
  gen.provenance.set("L", L);
  gen.provenance.set("labels", static_cast<std::uint64_t>(gen.label_count));
  gen.provenance.set("vertices", static_cast<std::uint64_t>(gen.instance.graph.vertex_count()));
  gen.provenance.set("edges", gen.instance.graph.edge_count());
  return gen;
}

// --- CSP -> coloring with a modular path decomposition witness -------------

GeneratedMpwInstance csp_to_coloring_mpw(const CspInstance& csp, int k,
                                         bool allow_smaller_alphabet) {
  csp.validate();
  if (k < 3 || k > kMaxColors) throw ValidationError("csp2mpw needs k >= 3");
  std::uint64_t half_count = binom_u64(k, k / 2);
  if (allow_smaller_alphabet ? static_cast<std::uint64_t>(csp.B) > half_count
                             : static_cast<std::uint64_t>(csp.B) != half_count)
    throw ValidationError("B mismatch: csp2mpw requires B = (k choose floor(k/2)) = " +
                          std::to_string(half_count) + ", got B = " + std::to_string(csp.B));
  TranslationTable T = value_encoding(k, SubsetScheme::HalfSubsets);
  const int n = csp.n;
  const int half = k / 2;

  InstanceBuilder b(k);
  MpwLayout layout;
  layout.T = T;
  layout.var_clique.assign(n + 1, {});
  for (int i = 1; i <= n; ++i) {
    for (int j = 0; j < half; ++j) layout.var_clique[i].push_back(b.add_vertex());
    for (std::size_t x = 0; x < layout.var_clique[i].size(); ++x)
      for (std::size_t y = x + 1; y < layout.var_clique[i].size(); ++y)
        b.add_edge(layout.var_clique[i][x], layout.var_clique[i][y]);
  }
  for (std::size_t j = 0; j < csp.constraints.size(); ++j) {
    const CspConstraint& c = csp.constraints[j];
    MpwLayout::Block block;
    block.constraint = static_cast<int>(j);
    for (std::size_t ti = 0; ti < c.tuples.size(); ++ti)
      block.or_members.push_back(b.add_vertex());
    int gid = b.or_gadget(block.or_members);
    block.or_internals = b.gadgets()[gid].internals;
    std::vector<std::pair<int, int>> vars_sorted;
    for (std::size_t pos = 0; pos < c.vars.size(); ++pos)
      vars_sorted.emplace_back(c.vars[pos], static_cast<int>(pos));
    std::sort(vars_sorted.begin(), vars_sorted.end());
    for (std::size_t ti = 0; ti < c.tuples.size(); ++ti) {
      const auto& tuple = c.tuples[ti];
      std::vector<MpwLayout::Incidence> incs;
      for (auto [var, pos] : vars_sorted) {
        MpwLayout::Incidence inc;
        inc.var = var;
        inc.value = tuple[pos];
        ColorMask tv = T(inc.value);
        for (int col = 1; col <= k; ++col) {
          if (mask_has(tv, col)) continue;
          int u = b.add_vertex();
          b.implication(block.or_members[ti], u, 1, col);
          for (int vc : layout.var_clique[var]) b.add_edge(u, vc);
          inc.u_vertices.emplace_back(u, col);
        }
        incs.push_back(std::move(inc));
      }
      block.per_tuple.push_back(std::move(incs));
    }
    layout.blocks.push_back(std::move(block));
  }

  GeneratedMpwInstance gen;
  gen.instance = b.take_instance();
  gen.gadget_records = b.take_gadgets();
  gen.layout = std::move(layout);

  // quotient under the list-aware contraction: the V_i cliques collapse
  // (twins with different lists, like the pinned endpoints of one-member OR
  // paths, stay apart)
  ListContraction lc = contract_for_multicoloring(gen.instance.graph, &gen.instance.lists);
  gen.quotient = lc.quotient;
  const std::vector<int>& orig_to_quot = lc.orig_to_quot;

  // path decomposition of the quotient: every var representative in every
  // bag; one bag per OR-path edge pair; per incidence one bag for the U set
  // and one per weak edge carrying its three internal vertices
  std::vector<int> base;
  for (int i = 1; i <= n; ++i)
    if (!gen.layout.var_clique[i].empty())
      base.push_back(orig_to_quot[gen.layout.var_clique[i][0]]);
  std::sort(base.begin(), base.end());
  base.erase(std::unique(base.begin(), base.end()), base.end());

  TreeDecomposition td;
  td.n = gen.quotient.graph.vertex_count();
  // bag arguments are original vertex ids; they are mapped through the
  // contraction and the var representatives are added to every bag
  auto push_bag = [&](std::vector<int> bag) {
    std::vector<int> mapped = base;
    for (int v : bag) mapped.push_back(orig_to_quot[v]);
    std::sort(mapped.begin(), mapped.end());
    mapped.erase(std::unique(mapped.begin(), mapped.end()), mapped.end());
    td.bags.push_back(std::move(mapped));
  };
  // weak-edge records grouped by endpoints for bag emission
  std::map<std::pair<int, int>, std::vector<const GadgetRecord*>> weak_by_pair;
  for (const auto& rec : gen.gadget_records)
    if (rec.kind == GadgetRecord::Kind::WeakEdge)
      weak_by_pair[{rec.endpoints[0], rec.endpoints[1]}].push_back(&rec);

  for (const auto& block : gen.layout.blocks) {
    const auto& w = block.or_internals;
    for (std::size_t ti = 0; ti < block.or_members.size(); ++ti) {
      int a_v = block.or_members[ti];
      push_bag({w[ti], a_v, w[ti + 1]});
      for (const auto& inc : block.per_tuple[ti]) {
        std::vector<int> uset;
        for (auto [u, col] : inc.u_vertices) uset.push_back(u);
        std::vector<int> anchor{a_v, w[ti + 1]};
        anchor.insert(anchor.end(), uset.begin(), uset.end());
        push_bag(anchor);
        for (auto [u, col] : inc.u_vertices) {
          for (const GadgetRecord* rec : weak_by_pair[{a_v, u}]) {
            std::vector<int> bag = anchor;
            bag.insert(bag.end(), rec->internals.begin(), rec->internals.end());
            push_bag(std::move(bag));
          }
        }
      }
    }
  }
  if (td.bags.empty()) push_bag({});
  for (std::size_t i = 0; i + 1 < td.bags.size(); ++i)
    td.tree_edges.emplace_back(static_cast<int>(i) + 1, static_cast<int>(i) + 2);
  td.declared_width = td.width();
  gen.witness = std::move(td);

  gen.provenance.set("generator", "csp2mpw");
  gen.provenance.set("k", static_cast<std::uint64_t>(k));
  gen.provenance.set("B", static_cast<std::uint64_t>(csp.B));
  gen.provenance.set("n", static_cast<std::uint64_t>(n));
  gen.provenance.set("m", static_cast<std::uint64_t>(csp.constraints.size()));
  gen.provenance.set("q", static_cast<std::uint64_t>(csp.max_arity()));
  gen.provenance.set("vertices", static_cast<std::uint64_t>(gen.instance.graph.vertex_count()));
  gen.provenance.set("edges", gen.instance.graph.edge_count());
  gen.provenance.set("quotient_vertices",
                     static_cast<std::uint64_t>(gen.quotient.graph.vertex_count()));
  gen.provenance.set("witness_width", static_cast<std::uint64_t>(gen.witness.width()));
  gen.provenance.set("witness_bags", static_cast<std::uint64_t>(gen.witness.bags.size()));
  return gen;
}

GeneratedMpwInstance eth_pipeline(const CnfFormula& f, EthParams* params) {
  f.validate();
  for (std::size_t i = 0; i < f.clauses.size(); ++i)
    if (f.clauses[i].size() > 3)
      throw ValidationError("clause " + std::to_string(i + 1) + " has arity > 3");
  if (f.n > (1 << 20))
    throw LimitError("eth pipeline guard: formulas above 2^20 variables are not supported");
  EthParams ep;
  ep.n_orig = f.n;
  ep.n_padded = 4;
  while (ep.n_padded < f.n) ep.n_padded <<= 1;
  ep.t = 0;
  while ((1 << (ep.t + 1)) <= ep.n_padded) ++ep.t;
  ep.B = ep.n_padded;
  ep.k = 2 * ep.t;

  CnfFormula padded = f;
  padded.n = ep.n_padded;
  GroupingParams gp;
  CspInstance csp = sat_to_csp(padded, ep.B, ep.t, &gp, 3);
  ep.gamma = gp.gamma;
  ep.p = gp.p;
  if (gp.p != 1) throw ValidationError("internal: B = 2^t must give p = 1");

  GeneratedMpwInstance gen = csp_to_coloring_mpw(csp, ep.k, /*allow_smaller_alphabet=*/true);
  gen.provenance.set("generator", "eth");
  gen.provenance.set("n_orig", static_cast<std::uint64_t>(ep.n_orig));
  gen.provenance.set("n_padded", static_cast<std::uint64_t>(ep.n_padded));
  gen.provenance.set("t", static_cast<std::uint64_t>(ep.t));
  gen.provenance.set("gamma", static_cast<std::uint64_t>(ep.gamma));
  gen.provenance.set("p", static_cast<std::uint64_t>(ep.p));
  gen.provenance.set("eth_k", static_cast<std::uint64_t>(ep.k));
  if (params) *params = ep;
  return gen;
}

void verify_witness(const GeneratedCwInstance& gen) {
  LabeledGraph lg = evaluate(gen.witness);
  if (!(lg.graph == gen.instance.graph))
    throw ValidationError("witness expression does not evaluate to the generated graph");
  std::vector<ColorMask> lists = leaf_lists_in_order(gen.witness);
  if (static_cast<int>(lists.size()) != gen.instance.graph.vertex_count())
    throw ValidationError("witness leaf count differs from the vertex count");
  for (std::size_t i = 0; i < lists.size(); ++i) {
    ColorMask expect = gen.instance.lists[i + 1];
    ColorMask got = lists[i] ? lists[i] : full_mask(gen.instance.k);
    if (expect != got)
      throw ValidationError("witness leaf list differs at vertex " + std::to_string(i + 1));
  }
}

void verify_witness(const GeneratedMpwInstance& gen) {
  ListContraction lc = contract_for_multicoloring(gen.instance.graph, &gen.instance.lists);
  if (!(lc.quotient.graph == gen.quotient.graph) || lc.quotient.demand != gen.quotient.demand)
    throw ValidationError("stored quotient disagrees with a fresh contraction");
  validate_td(gen.witness, gen.quotient.graph);
}

// --- certificates -----------------------------------------------------------

namespace {

// Backtracking extension over `order`, each vertex constrained by its list
// and already-colored neighbors. Only used on gadget-internal paths.
bool extend_on(const ListColoringInstance& inst, std::vector<int>& colors,
               const std::vector<int>& order, std::size_t idx) {
  if (idx == order.size()) return true;
  int v = order[idx];
  if (colors[v] != 0) return extend_on(inst, colors, order, idx + 1);
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
    if (extend_on(inst, colors, order, idx + 1)) return true;
    colors[v] = 0;
  }
  return false;
}

}  // namespace

bool check_coloring(const ListColoringInstance& inst, const std::vector<int>& colors) {
  for (int v = 1; v <= inst.graph.vertex_count(); ++v) {
    if (colors[v] < 1 || colors[v] > inst.k) return false;
    if (!mask_has(inst.lists[v], colors[v])) return false;
  }
  for (auto [u, v] : inst.graph.edges())
    if (colors[u] == colors[v]) return false;
  return true;
}

std::vector<int> certificate_coloring(const GeneratedMpwInstance& gen,
                                      const std::vector<int>& assignment) {
  const ListColoringInstance& inst = gen.instance;
  const MpwLayout& lay = gen.layout;
  std::vector<int> colors(inst.graph.vertex_count() + 1, 0);

  // V_i cliques use the colors of T(v_i)
  for (std::size_t i = 1; i < lay.var_clique.size(); ++i) {
    if (lay.var_clique[i].empty()) continue;
    ColorMask tv = lay.T(assignment[i]);
    int idx = 0;
    for (int c = 1; c <= inst.k && idx < static_cast<int>(lay.var_clique[i].size()); ++c)
      if (mask_has(tv, c)) colors[lay.var_clique[i][idx++]] = c;
    if (idx != static_cast<int>(lay.var_clique[i].size()))
      throw ValidationError("translation set smaller than the clique");
  }

  ListColoringInstance restricted = inst;

  for (const auto& block : lay.blocks) {
    // the satisfied tuple indexed by the assignment
    int chosen = -1;
    const auto& per_tuple = block.per_tuple;
    for (std::size_t ti = 0; ti < per_tuple.size(); ++ti) {
      bool match = true;
      for (const auto& inc : per_tuple[ti])
        if (assignment[inc.var] != inc.value) {
          match = false;
          break;
        }
      if (match) {
        chosen = static_cast<int>(ti);
        break;
      }
    }
    if (chosen < 0)
      throw ValidationError("assignment does not satisfy constraint " +
                            std::to_string(block.constraint + 1));
    colors[block.or_members[chosen]] = 1;
    // the other members take colors in {2,3} (never 1, which would activate
    // their implications)
    for (std::size_t ti = 0; ti < block.or_members.size(); ++ti)
      if (static_cast<int>(ti) != chosen)
        restricted.lists[block.or_members[ti]] = color_bit(2) | color_bit(3);
    // color the OR path greedily with backtracking
    std::vector<int> order;
    for (std::size_t ti = 0; ti < block.or_members.size(); ++ti) {
      order.push_back(block.or_internals[ti]);
      order.push_back(block.or_members[ti]);
    }
    order.push_back(block.or_internals.back());
    if (!extend_on(restricted, colors, order, 0))
      throw ValidationError("OR gadget extension failed");
    // U sets: activated incidences take the implied color, the rest any
    // color outside T(actual value)
    for (std::size_t ti = 0; ti < per_tuple.size(); ++ti) {
      for (const auto& inc : per_tuple[ti]) {
        ColorMask actual = lay.T(assignment[inc.var]);
        for (auto [u, col] : inc.u_vertices) {
          if (static_cast<int>(ti) == chosen) {
            colors[u] = col;
          } else {
            int c = 1;
            while (c <= inst.k && mask_has(actual, c)) ++c;
            if (c > inst.k) throw ValidationError("no color outside T(v)");
            colors[u] = c;
          }
        }
      }
    }
  }
  // weak-edge internals extend independently once endpoints are colored
  for (const auto& rec : gen.gadget_records) {
    if (rec.kind != GadgetRecord::Kind::WeakEdge) continue;
    if (!extend_on(restricted, colors, rec.internals, 0))
      throw ValidationError("weak edge extension failed");
  }
  if (!check_coloring(inst, colors))
    throw ValidationError("certificate coloring is not proper");
  return colors;
}

// --- output files -----------------------------------------------------------

void write_file_atomic(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw ParseError("cannot open " + tmp + " for writing");
    out << content;
    if (!out) throw ParseError("write failed for " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw ParseError("cannot rename " + tmp + " into place");
}

namespace {

std::string dimacs_text(const Graph& g) {
  std::ostringstream ss;
  write_dimacs(ss, g);
  return ss.str();
}
std::string lists_text(const ListColoringInstance& inst) {
  std::ostringstream ss;
  write_lists(ss, inst);
  return ss.str();
}

}  // namespace

std::vector<std::string> write_generated(const GeneratedCwInstance& gen,
                                         const std::string& base) {
  std::vector<std::string> paths{base + ".col", base + ".lists", base + ".cwe",
                                 base + ".prov"};
  write_file_atomic(paths[0], dimacs_text(gen.instance.graph));
  write_file_atomic(paths[1], lists_text(gen.instance));
  write_file_atomic(paths[2], serialize(gen.witness) + "\n");
  write_file_atomic(paths[3], gen.provenance.text());
  return paths;
}

std::vector<std::string> write_generated(const GeneratedMpwInstance& gen,
                                         const std::string& base) {
  std::vector<std::string> paths{base + ".col", base + ".lists", base + ".td",
                                 base + ".prov"};
  write_file_atomic(paths[0], dimacs_text(gen.instance.graph));
  write_file_atomic(paths[1], lists_text(gen.instance));
  std::ostringstream td;
  write_td(td, gen.witness);
  write_file_atomic(paths[2], td.str());
  write_file_atomic(paths[3], gen.provenance.text());
  return paths;
}

}  // namespace cwcolor
