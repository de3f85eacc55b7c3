#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "oracle.hpp"

using namespace cwcolor;

namespace {
Graph clique(int n) {
  Graph g(n);
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) g.add_edge(i, j);
  return g;
}
Graph cycle(int n) {
  Graph g(n);
  for (int i = 1; i < n; ++i) g.add_edge(i, i + 1);
  g.add_edge(n, 1);
  return g;
}
}  // namespace

TEST_CASE("brute list-coloring counts") {
  CHECK(brute_count_colorings(clique(3), 3) == 6);

  ListColoringInstance two(clique(3), 3);
  for (int v = 1; v <= 3; ++v) two.lists[v] = color_bit(1) | color_bit(2);
  CHECK(brute_count_list_colorings(two) == 0);

  ListColoringInstance single(Graph(1), 3);
  single.lists[1] = color_bit(2) | color_bit(3);
  CHECK(brute_count_list_colorings(single) == 2);

  // guard fails loudly
  ListColoringInstance big(Graph(40), 4);
  CHECK_THROWS_AS(brute_count_list_colorings(big), LimitError);
}

TEST_CASE("brute_csp") {
  CspInstance none;
  none.n = 2;
  none.B = 3;
  CHECK(brute_csp(none));

  CspInstance conflict;
  conflict.n = 1;
  conflict.B = 3;
  conflict.constraints.push_back({{1}, {{1}}});
  conflict.constraints.push_back({{1}, {{2}}});
  CHECK_FALSE(brute_csp(conflict));

  CspInstance full;
  full.n = 2;
  full.B = 2;
  full.constraints.push_back({{1, 2}, {{1, 1}, {1, 2}, {2, 1}, {2, 2}}});
  CHECK(brute_csp(full));

  CspInstance big;
  big.n = 30;
  big.B = 10;
  big.constraints.push_back({{1}, {{1}}});
  CHECK_THROWS_AS(brute_csp(big), LimitError);
}

TEST_CASE("brute_sat") {
  CnfFormula f;
  f.n = 1;
  f.clauses = {{1}, {-1}};
  CHECK_FALSE(brute_sat(f));
  f.clauses = {{1, -1}};
  CHECK(brute_sat(f));
  CnfFormula g;
  g.n = 2;
  g.clauses = {{1, 2}};
  CHECK(brute_sat(g));
  CnfFormula empty;
  empty.n = 0;
  CHECK(brute_sat(empty));
  CnfFormula big;
  big.n = 27;
  CHECK_THROWS_AS(brute_sat(big), LimitError);
}

TEST_CASE("oracle matches the cycle chromatic polynomial") {
  for (int n = 3; n <= 8; ++n)
    for (int k = 2; k <= 5; ++k) {
      mpz_class expect = 0;
      mpz_class a = 1;
      for (int i = 0; i < n; ++i) a *= (k - 1);
      expect = a + ((n % 2 == 0) ? (k - 1) : -(k - 1));
      CHECK(brute_count_colorings(cycle(n), k) == expect);
    }
}

TEST_CASE("generators are deterministic per seed") {
  CwExpr a = random_suite_cwe("cwe-small", 1, 0);
  CwExpr b = random_suite_cwe("cwe-small", 1, 0);
  CHECK(serialize(a) == serialize(b));
  CwExpr c = random_suite_cwe("cwe-small", 2, 0);
  CHECK(serialize(a) != serialize(c));

  Graph g = random_suite_graph("graph-n8-p0.5", 3, 1);
  CHECK(g.vertex_count() == 8);
  CHECK(g == random_suite_graph("graph-n8-p0.5", 3, 1));

  CnfFormula f = random_suite_cnf("cnf3-n8", 4, 2);
  CHECK(f.n == 8);
  for (const auto& cl : f.clauses) CHECK(cl.size() <= 3);

  CspInstance csp = random_suite_csp("csp-small", 5, 3);
  CHECK(csp.B == 6);
  CHECK(csp.n <= 2);
  CHECK_NOTHROW(csp.validate());

  CHECK_THROWS_AS(random_suite_cwe("no-such-profile", 1, 0), ValidationError);
}

TEST_CASE("random expressions meet their profile bounds") {
  for (int i = 0; i < 50; ++i) {
    CwExpr e = random_suite_cwe("cwe-small", 11, i);
    CHECK(width(e) <= 4);
    CHECK(leaf_count(e) <= 10);
    CHECK_NOTHROW(evaluate(e));
  }
}
