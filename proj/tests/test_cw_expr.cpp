#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <map>

#include "cw_expr.hpp"
#include "doctest.h"
#include "oracle.hpp"

using namespace cwcolor;

namespace {
const char* kK2 = "(join 1 2 (union (intro 1) (intro 2)))";
const char* kK3 =
    "(join 1 2 (join 1 3 (join 2 3 (union (intro 1) (union (intro 2) (intro 3))))))";
}  // namespace

TEST_CASE("parsing textbook cases") {
  CwExpr e = parse_expr(kK2);
  REQUIRE(!e.empty());
  const CwNode& root = e.nodes[e.root];
  CHECK(root.kind == CwKind::Join);
  CHECK(e.nodes[root.left].kind == CwKind::Union);

  CHECK_THROWS_AS(parse_expr("(join 1 1 (intro 1))"), ParseError);
  CHECK_NOTHROW(parse_expr("(rename 2 1 (join 1 2 (union (intro 1) (intro 2))))"));
}

TEST_CASE("parse errors carry positions") {
  auto check_fails = [](const std::string& text, const std::string& needle) {
    try {
      parse_expr(text);
      FAIL("expected a parse error for: " << text);
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };
  check_fails("(intro 0)", "label 0");
  check_fails("(intro x)", "decimal");
  check_fails("(intro 1", "unclosed");
  check_fails("(intro 1))", "unmatched");
  check_fails("(frob 1)", "unknown operator");
  check_fails("(union (intro 1))", "missing sub-expression");
  check_fails("(intro 1) (intro 2)", "more than one top-level");
  check_fails("(intro 99999999999)", "2^31");
  check_fails("", "empty input");
}

TEST_CASE("serialize round trip and whitespace normalization") {
  CHECK(serialize(parse_expr("  ( intro\n 7 )  # trailing comment")) == "(intro 7)");
  for (int seed = 0; seed < 30; ++seed) {
    Rng rng(100 + seed);
    CwExpr e = random_cwe(rng, 4, rng.range(2, 8));
    std::string s = serialize(e);
    CHECK(serialize(parse_expr(s)) == s);
  }
}

TEST_CASE("evaluate on textbook cases") {
  LabeledGraph k2 = evaluate(parse_expr(kK2));
  CHECK(k2.graph.vertex_count() == 2);
  CHECK(k2.graph.has_edge(1, 2));

  LabeledGraph k3 = evaluate(parse_expr(kK3));
  CHECK(k3.graph.vertex_count() == 3);
  CHECK(k3.graph.edge_count() == 3);

  LabeledGraph two = evaluate(parse_expr("(union (intro 1) (intro 1))"));
  CHECK(two.graph.vertex_count() == 2);
  CHECK(two.graph.edge_count() == 0);
  CHECK(two.label[1] == 1);
  CHECK(two.label[2] == 1);

  // joins are idempotent; vacuous joins allowed
  LabeledGraph rep =
      evaluate(parse_expr("(join 1 2 (join 1 2 (join 1 3 (union (intro 1) (intro 2)))))"));
  CHECK(rep.graph.edge_count() == 1);
}

TEST_CASE("width counts distinct labels") {
  CHECK(width(parse_expr(kK2)) == 2);
  CHECK(width(parse_expr(kK3)) == 3);
  CHECK(width(parse_expr("(intro 7)")) == 1);
  CHECK(width(parse_expr("(rename 5 9 (intro 7))")) == 3);
}

TEST_CASE("liveness annotation on textbook cases") {
  CwExpr k2 = parse_expr(kK2);
  LivenessMap lm = annotate_liveness(k2);
  const CwNode& root = k2.nodes[k2.root];
  CHECK(lm.at(root.left) == std::vector<int>{1, 2});  // union node
  CHECK(lm.at(k2.root).empty());

  CwExpr k3 = parse_expr(kK3);
  lm = annotate_liveness(k3);
  // the union joining all three leaves has {1,2,3} live
  std::int32_t u = k3.nodes[k3.nodes[k3.nodes[k3.root].left].left].left;
  REQUIRE(k3.nodes[u].kind == CwKind::Union);
  CHECK(lm.at(u) == std::vector<int>{1, 2, 3});
  CHECK(lm.at(k3.root).empty());

  CwExpr nolive = parse_expr("(union (intro 1) (intro 1))");
  lm = annotate_liveness(nolive);
  for (const auto& l : lm.live) CHECK(l.empty());
}

TEST_CASE("evaluate is label-permutation equivariant") {
  for (int seed = 0; seed < 20; ++seed) {
    Rng rng(4200 + seed);
    CwExpr e = random_cwe(rng, 4, rng.range(2, 9));
    // permute labels 1..4
    std::vector<int> perm{0, 2, 4, 1, 3};
    CwExpr p = e;
    for (auto& n : p.nodes) {
      if (n.kind == CwKind::Intro) n.a = perm[n.a];
      else if (n.kind != CwKind::Union) {
        n.a = perm[n.a];
        n.b = perm[n.b];
      }
    }
    LabeledGraph ge = evaluate(e), gp = evaluate(p);
    CHECK(ge.graph == gp.graph);
    for (int v = 1; v <= ge.graph.vertex_count(); ++v)
      CHECK(gp.label[v] == perm[ge.label[v]]);
  }
}

TEST_CASE("family builders") {
  LabeledGraph k5 = evaluate(make_clique_expr(5));
  CHECK(k5.graph.vertex_count() == 5);
  CHECK(k5.graph.edge_count() == 10);
  CHECK(width(make_clique_expr(5)) == 2);

  for (int n = 3; n <= 7; ++n) {
    LabeledGraph c = evaluate(make_cycle_expr(n));
    CHECK(c.graph.vertex_count() == n);
    CHECK(c.graph.edge_count() == static_cast<std::uint64_t>(n));
    for (int v = 1; v <= n; ++v) CHECK(c.graph.degree(v) == 2);
    CHECK(width(make_cycle_expr(n)) <= 4);
  }

  LabeledGraph p4 = evaluate(make_path_expr(4));
  CHECK(p4.graph.edge_count() == 3);
  CHECK(p4.graph.degree(1) == 1);

  CwExpr wide = make_clique_expr_wide(4);
  CHECK(evaluate(wide).graph.edge_count() == 6);
  CHECK(annotate_liveness(wide).max_live() == 4);
}

TEST_CASE("parser survives garbage input") {
  Rng rng(77);
  const char charset[] = "()intro union rename join 0123456789 #\n";
  for (int trial = 0; trial < 300; ++trial) {
    std::string s;
    int len = rng.range(0, 40);
    for (int i = 0; i < len; ++i) s += charset[rng.below(sizeof charset - 1)];
    try {
      CwExpr e = parse_expr(s);
      evaluate(e);  // whatever parses must evaluate
    } catch (const ParseError&) {
      // expected for most inputs
    }
  }
}

TEST_CASE("liveness flags joins into finished classes") {
  // join repeated after the class is finished adds no edges and is fine;
  // a hand-built broken expression cannot arise through the public builders,
  // so exercise the accounting through a long random sweep instead
  for (int seed = 0; seed < 25; ++seed) {
    Rng rng(900 + seed);
    CwExpr e = random_cwe(rng, 4, rng.range(2, 10));
    LivenessMap lm = annotate_liveness(e);
    CHECK(lm.at(e.root).empty());
  }
}
