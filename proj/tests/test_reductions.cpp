#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <set>
#include <sstream>

#include "cw_dp.hpp"
#include "doctest.h"
#include "mtw_dp.hpp"
#include "oracle.hpp"
#include "reductions.hpp"

using namespace cwcolor;

namespace {
CnfFormula cnf(int n, std::vector<std::vector<int>> clauses) {
  CnfFormula f;
  f.n = n;
  f.clauses = std::move(clauses);
  f.validate();
  return f;
}
}  // namespace

TEST_CASE("CNF parsing") {
  std::istringstream in("c sample\np cnf 3 2\n1 -2 0\n2 3 0\n");
  CnfFormula f = parse_cnf(in);
  CHECK(f.n == 3);
  REQUIRE(f.clauses.size() == 2);
  CHECK(f.clauses[0] == std::vector<int>{1, -2});

  std::istringstream bad("p cnf 2 1\n0\n");
  CHECK_THROWS_AS(parse_cnf(bad), ParseError);
  std::istringstream range("p cnf 2 1\n5 0\n");
  CHECK_THROWS_AS(parse_cnf(range), ValidationError);
}

TEST_CASE("CSP text format round trip") {
  CspInstance csp;
  csp.n = 2;
  csp.B = 4;
  csp.constraints.push_back({{1, 2}, {{1, 2}, {3, 4}}});
  csp.constraints.push_back({{2}, {{1}}});
  std::ostringstream out;
  write_csp(out, csp);
  std::istringstream in(out.str());
  CspInstance back = parse_csp(in);
  CHECK(back.n == 2);
  CHECK(back.B == 4);
  REQUIRE(back.constraints.size() == 2);
  CHECK(back.constraints[0].tuples == csp.constraints[0].tuples);
  CHECK(back.max_arity() == 2);

  // empty satisfying sets are rejected
  CspInstance bad = csp;
  bad.constraints[1].tuples.clear();
  CHECK_THROWS_AS(bad.validate(), ValidationError);
}

TEST_CASE("sat_to_csp grouping") {
  // n=4, t=2, B=4: p=1, two CSP variables
  CnfFormula f = cnf(4, {{1, 3}});
  GroupingParams gp;
  CspInstance csp = sat_to_csp(f, 4, 2, &gp);
  CHECK(gp.p == 1);
  CHECK(gp.gamma == 2);
  CHECK(csp.n == 2);
  REQUIRE(csp.constraints.size() == 1);
  // clause (x1 or x3) spans both groups: 12 of the 16 pairs satisfy it
  CHECK(csp.constraints[0].vars == std::vector<int>{1, 2});
  CHECK(csp.constraints[0].tuples.size() == 12);

  // empty clause set
  CnfFormula empty = cnf(3, {});
  CspInstance ec = sat_to_csp(empty, 4, 2);
  CHECK(ec.constraints.empty());
  CHECK(brute_csp(ec));

  // grouping guard
  CnfFormula wide = cnf(9, {{1, 2, 3, 4, 5, 6, 7, 8, 9}});
  CHECK_THROWS_AS(sat_to_csp(wide, 2, 1, nullptr, 8), LimitError);
}

TEST_CASE("sat_to_csp equisatisfiability (random)") {
  for (int seed = 0; seed < 100; ++seed) {
    Rng rng(6000 + seed);
    int n = rng.range(1, 10);
    CnfFormula f = random_cnf3(rng, n, rng.range(1, 3 * n));
    int B = rng.range(2, 5);
    int t = rng.range(1, 4);
    CspInstance csp = sat_to_csp(f, B, t);
    CHECK(brute_sat(f) == brute_csp(csp));
  }
}

TEST_CASE("value encodings") {
  TranslationTable tp = value_encoding(3, SubsetScheme::ProperSubsets);
  CHECK(tp.size() == 6);
  CHECK(tp(1) == color_bit(1));
  CHECK(tp(2) == color_bit(2));
  CHECK(tp(3) == (color_bit(1) | color_bit(2)));
  CHECK(tp(4) == color_bit(3));
  CHECK(tp(5) == (color_bit(1) | color_bit(3)));
  CHECK(tp(6) == (color_bit(2) | color_bit(3)));

  TranslationTable th = value_encoding(4, SubsetScheme::HalfSubsets);
  CHECK(th.size() == 6);
  CHECK(th(1) == (color_bit(1) | color_bit(2)));
  CHECK(th(2) == (color_bit(1) | color_bit(3)));
  CHECK(th(3) == (color_bit(2) | color_bit(3)));
  CHECK(th(4) == (color_bit(1) | color_bit(4)));
  CHECK(th(5) == (color_bit(2) | color_bit(4)));
  CHECK(th(6) == (color_bit(3) | color_bit(4)));

  for (int v = 1; v <= th.size(); ++v) CHECK(th.inverse(th(v)) == v);
  CHECK(th.inverse(color_bit(1)) == 0);
}

TEST_CASE("csp2cw: iteration count and witness fidelity") {
  // n=2, m=1, k=3 -> L = 3*1*(2*3+1) = 21
  CspInstance csp;
  csp.n = 2;
  csp.B = 6;
  csp.constraints.push_back({{1, 2}, {{2, 5}}});
  GeneratedCwInstance gen = csp_to_coloring_cw(csp, 3);
  CHECK(gen.iterations == 21);
  CHECK_NOTHROW(verify_witness(gen));
  CHECK(width(gen.witness) == gen.label_count);
  // satisfiable single-tuple CSP: colorable
  CHECK(count_colorings_mod(gen.witness, 3, 1) != 0);

  // B mismatch
  CspInstance wrong = csp;
  wrong.B = 5;
  CHECK_THROWS_AS(csp_to_coloring_cw(wrong, 3), ValidationError);
  CHECK_THROWS_AS(csp_to_coloring_cw(CspInstance{2, 6, {}}, 3), ValidationError);
}

TEST_CASE("csp2cw: soundness and completeness vs brute_csp") {
  for (int seed = 0; seed < 8; ++seed) {
    Rng rng(6500 + seed);
    CspInstance csp = random_csp(rng, rng.range(1, 2), 1, 6, 1, 3);
    GeneratedCwInstance gen = csp_to_coloring_cw(csp, 3);
    verify_witness(gen);
    bool dp = count_colorings_mod(gen.witness, 3, 17 + seed) != 0;
    CHECK(dp == brute_csp(csp));
  }
  // the unsatisfiable unary pair x1 in {1} and x1 in {2}
  CspInstance unsat;
  unsat.n = 1;
  unsat.B = 6;
  unsat.constraints.push_back({{1}, {{1}}});
  unsat.constraints.push_back({{1}, {{2}}});
  CHECK_FALSE(brute_csp(unsat));
  GeneratedCwInstance gen = csp_to_coloring_cw(unsat, 3);
  verify_witness(gen);
  CHECK(count_colorings_mod(gen.witness, 3, 5) == 0);
}

TEST_CASE("csp2cw: label count is independent of m") {
  auto shape = [](int m) {
    CspInstance csp;
    csp.n = 2;
    csp.B = 6;
    for (int i = 0; i < m; ++i)
      csp.constraints.push_back({{1, 2}, {{1, 4}, {2, 2}}});
    return csp;
  };
  int labels1 = csp_to_coloring_cw(shape(1), 3).label_count;
  int labels2 = csp_to_coloring_cw(shape(2), 3).label_count;
  int labels4 = csp_to_coloring_cw(shape(4), 3).label_count;
  CHECK(labels1 == labels2);
  CHECK(labels2 == labels4);
  // regression values: per constrained variable a main and a pending label,
  // plus junk and the five work labels
  CHECK(labels1 == 2 * 2 + 6);
  // budget bound: n + 1 + B^q + q(k^2 + 3(k-1)k)B^q with n=2,k=3,B=6,q=2
  std::uint64_t budget = 2 + 1 + 36 + 2 * (9 + 18) * 36;
  CHECK(static_cast<std::uint64_t>(labels1) <= budget);

  // only constrained variables contribute labels
  CspInstance sparse;
  sparse.n = 3;
  sparse.B = 6;
  sparse.constraints.push_back({{2}, {{1}, {6}}});
  CHECK(csp_to_coloring_cw(sparse, 3).label_count == 2 * 1 + 6);
}

TEST_CASE("generation is deterministic") {
  CspInstance csp;
  csp.n = 2;
  csp.B = 6;
  csp.constraints.push_back({{1, 2}, {{2, 5}, {4, 1}}});
  GeneratedCwInstance a = csp_to_coloring_cw(csp, 3);
  GeneratedCwInstance b = csp_to_coloring_cw(csp, 3);
  CHECK(serialize(a.witness) == serialize(b.witness));
  CHECK(a.instance.graph == b.instance.graph);
  CHECK(a.instance.lists == b.instance.lists);

  GeneratedMpwInstance ma = csp_to_coloring_mpw(csp, 4);
  GeneratedMpwInstance mb = csp_to_coloring_mpw(csp, 4);
  CHECK(ma.instance.graph == mb.instance.graph);
  std::ostringstream ta, tb;
  write_td(ta, ma.witness);
  write_td(tb, mb.witness);
  CHECK(ta.str() == tb.str());
}

TEST_CASE("csp2mpw: structure, fidelity and solving") {
  // k=4, B=6, n=2, m=1: V cliques of size 2, U sets of size 2
  CspInstance csp;
  csp.n = 2;
  csp.B = 6;
  csp.constraints.push_back({{1, 2}, {{1, 2}, {6, 3}}});
  GeneratedMpwInstance gen = csp_to_coloring_mpw(csp, 4);
  CHECK(gen.layout.var_clique[1].size() == 2);
  CHECK(gen.layout.var_clique[2].size() == 2);
  for (const auto& block : gen.layout.blocks)
    for (const auto& per_var : block.per_tuple)
      for (const auto& inc : per_var) CHECK(inc.u_vertices.size() == 2);
  CHECK_NOTHROW(verify_witness(gen));
  CHECK(decide_list_colorable_mtw(gen.instance, &gen.witness) == brute_csp(csp));

  // the V classes carry demand floor(k/2) in the quotient
  for (int i = 1; i <= 2; ++i) {
    int rep = gen.quotient.class_map[gen.layout.var_clique[i][0]];
    CHECK(gen.quotient.demand[rep] == 2);
  }
  CHECK_THROWS_AS(csp_to_coloring_mpw(CspInstance{2, 5, csp.constraints}, 4),
                  ValidationError);
}

TEST_CASE("csp2mpw soundness and completeness (random)") {
  for (int seed = 0; seed < 10; ++seed) {
    Rng rng(6700 + seed);
    CspInstance csp = random_csp(rng, rng.range(1, 2), rng.range(1, 2), 6, 2, 4);
    GeneratedMpwInstance gen = csp_to_coloring_mpw(csp, 4);
    verify_witness(gen);
    CHECK(decide_list_colorable_mtw(gen.instance, &gen.witness) == brute_csp(csp));
  }
}

TEST_CASE("eth pipeline parameters") {
  EthParams ep;
  GeneratedMpwInstance gen = eth_pipeline(cnf(4, {{1, 2, 3}}), &ep);
  CHECK(ep.n_padded == 4);
  CHECK(ep.B == 4);
  CHECK(ep.t == 2);
  CHECK(ep.k == 4);
  CHECK(ep.p == 1);
  CHECK(ep.gamma == 2);
  // satisfiable: colorable output
  CHECK(decide_list_colorable_mtw(gen.instance, &gen.witness));

  // unsatisfiable: (x1) and (not x1); padding keeps k >= 4
  GeneratedMpwInstance un = eth_pipeline(cnf(1, {{1}, {-1}}), &ep);
  CHECK(ep.n_padded == 4);
  CHECK_FALSE(decide_list_colorable_mtw(un.instance, &un.witness));

  // clause arity guard
  CHECK_THROWS_AS(eth_pipeline(cnf(5, {{1, 2, 3, 4}})), ValidationError);
}

TEST_CASE("eth end-to-end on random 3-CNFs") {
  for (int seed = 0; seed < 10; ++seed) {
    Rng rng(6900 + seed);
    CnfFormula f = random_cnf3(rng, rng.range(1, 4), rng.range(1, 9));
    GeneratedMpwInstance gen = eth_pipeline(f);
    verify_witness(gen);
    CHECK(decide_list_colorable_mtw(gen.instance, &gen.witness) == brute_sat(f));
  }
}

TEST_CASE("certificate coloring from a satisfying assignment") {
  for (int seed = 0; seed < 10; ++seed) {
    Rng rng(7200 + seed);
    int n = rng.range(2, 6);
    CnfFormula f = random_cnf3(rng, n, rng.range(1, 2));
    if (!brute_sat(f)) continue;
    EthParams ep;
    GeneratedMpwInstance gen = eth_pipeline(f, &ep);
    // a satisfying assignment, found by enumeration, mapped to CSP values
    GroupingParams gp;
    CnfFormula padded = f;
    padded.n = ep.n_padded;
    CspInstance csp = sat_to_csp(padded, ep.B, ep.t, &gp);
    std::vector<int> assign;
    for (std::uint64_t a = 0; a < (1ull << padded.n); ++a) {
      bool ok = true;
      for (const auto& cl : f.clauses) {
        bool sat = false;
        for (int lit : cl)
          if (((a >> (std::abs(lit) - 1)) & 1) == (lit > 0)) sat = true;
        if (!sat) { ok = false; break; }
      }
      if (!ok) continue;
      assign.assign(csp.n + 1, 0);
      for (int g = 0; g < gp.gamma; ++g) {
        std::uint64_t val = 0;
        for (std::size_t i = 0; i < gp.groups[g].size(); ++i)
          val |= ((a >> (gp.groups[g][i] - 1)) & 1) << i;
        assign[g + 1] = static_cast<int>(val % ep.B) + 1;
      }
      break;
    }
    REQUIRE(!assign.empty());
    std::vector<int> colors = certificate_coloring(gen, assign);
    CHECK(check_coloring(gen.instance, colors));
  }
}

TEST_CASE("witness verification rejects tampering") {
  CspInstance csp;
  csp.n = 1;
  csp.B = 6;
  csp.constraints.push_back({{1}, {{2}, {4}}});
  GeneratedCwInstance gen = csp_to_coloring_cw(csp, 3);
  CHECK_NOTHROW(verify_witness(gen));
  GeneratedCwInstance broken = gen;
  broken.instance.graph.add_edge(1, broken.instance.graph.vertex_count());
  CHECK_THROWS_AS(verify_witness(broken), ValidationError);
  GeneratedCwInstance relisted = gen;
  relisted.instance.lists[2] = color_bit(1);
  CHECK_THROWS_AS(verify_witness(relisted), ValidationError);

  GeneratedMpwInstance mg = csp_to_coloring_mpw(csp, 4, true);
  CHECK_NOTHROW(verify_witness(mg));
  GeneratedMpwInstance mbroken = mg;
  mbroken.witness.bags[0].clear();
  CHECK_THROWS_AS(verify_witness(mbroken), ValidationError);
}

TEST_CASE("generated files and provenance") {
  CspInstance csp;
  csp.n = 1;
  csp.B = 6;
  csp.constraints.push_back({{1}, {{3}}});
  GeneratedCwInstance gen = csp_to_coloring_cw(csp, 3);
  auto paths = write_generated(gen, "/tmp/cwc_test_gen");
  REQUIRE(paths.size() == 4);
  Graph g = parse_dimacs_file(paths[0]);
  CHECK(g == gen.instance.graph);
  auto lists = parse_lists_file(paths[1], g.vertex_count(), 3);
  for (int v = 1; v <= g.vertex_count(); ++v) CHECK(lists[v] == gen.instance.lists[v]);
  CwExpr witness = parse_expr_file(paths[2]);
  CHECK(serialize(witness) == serialize(gen.witness));
  std::string prov = gen.provenance.text();
  CHECK(prov.find("generator=csp2cw") != std::string::npos);
  CHECK(prov.find("L=12") != std::string::npos);
}
