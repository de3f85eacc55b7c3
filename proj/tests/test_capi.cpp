// Exercises the shared-library surface end to end through the C header only.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <fstream>
#include <string>

#include "cwcolor.h"
#include "doctest.h"

namespace {
std::string write_temp(const std::string& name, const std::string& content) {
  std::string path = "/tmp/cwc_capi_" + name;
  std::ofstream out(path);
  out << content;
  return path;
}
}  // namespace

TEST_CASE("expression parse, serialize, count") {
  cwc_expr* e = nullptr;
  REQUIRE(cwc_expr_parse("(join 1 2 (union (intro 1) (intro 2)))", &e) == CWC_OK);
  CHECK(cwc_expr_width(e) == 2);
  CHECK(cwc_expr_vertex_count(e) == 2);

  char* text = nullptr;
  REQUIRE(cwc_expr_serialize(e, &text) == CWC_OK);
  CHECK(std::string(text) == "(join 1 2 (union (intro 1) (intro 2)))");
  cwc_string_free(text);

  char* count = nullptr;
  int colorable = -1;
  cwc_run_stats stats;
  REQUIRE(cwc_count_colorings(e, 3, 0, 0, &count, &colorable, &stats) == CWC_OK);
  CHECK(std::string(count) == "6");
  CHECK(colorable == 1);
  CHECK(stats.peak_table_entries == 36);
  cwc_string_free(count);

  // mod-prime mode
  REQUIRE(cwc_count_colorings(e, 3, 1, 7, &count, &colorable, &stats) == CWC_OK);
  CHECK(std::string(count).find(" mod ") != std::string::npos);
  CHECK(colorable == 1);
  cwc_string_free(count);

  // k out of range surfaces as an invalid-argument status
  CHECK(cwc_count_colorings(e, 1, 0, 0, &count, &colorable, nullptr) == CWC_ERROR_INVALID);
  CHECK(std::string(cwc_last_error()).find("k out of range") != std::string::npos);
  cwc_expr_free(e);

  cwc_expr* bad = nullptr;
  CHECK(cwc_expr_parse("(join 1 1 (intro 1))", &bad) == CWC_ERROR_PARSE);
  CHECK(std::string(cwc_last_error()).find("equal") != std::string::npos);
}

TEST_CASE("expression lists via companion file") {
  cwc_expr* e = nullptr;
  REQUIRE(cwc_expr_parse("(union (intro 1) (intro 1))", &e) == CWC_OK);
  std::string lists = write_temp("lists.txt", "l 1 2\nl 2 2 3\n");
  REQUIRE(cwc_expr_attach_lists(e, lists.c_str(), 3) == CWC_OK);
  char* count = nullptr;
  REQUIRE(cwc_count_colorings(e, 3, 0, 0, &count, nullptr, nullptr) == CWC_OK);
  CHECK(std::string(count) == "2");  // 1 option times 2 options
  cwc_string_free(count);
  cwc_expr_free(e);
}

TEST_CASE("graphs, decompositions and the mtw solver") {
  std::string col = write_temp("c4.col", "p edge 4 4\ne 1 2\ne 2 3\ne 3 4\ne 1 4\n");
  cwc_graph* g = nullptr;
  REQUIRE(cwc_graph_load_dimacs(col.c_str(), nullptr, 0, &g) == CWC_OK);
  CHECK(cwc_graph_vertex_count(g) == 4);
  CHECK(cwc_graph_edge_count(g) == 4);

  int colorable = -1;
  cwc_run_stats stats;
  REQUIRE(cwc_decide_mtw(g, 2, nullptr, &colorable, &stats) == CWC_OK);
  CHECK(colorable == 1);

  std::string tdp = write_temp("c4.td", "s td 2 3 4\nb 1 1 2 4\nb 2 2 3 4\n1 2\n");
  cwc_td* td = nullptr;
  REQUIRE(cwc_td_load(tdp.c_str(), &td) == CWC_OK);
  CHECK(cwc_td_width(td) == 2);
  REQUIRE(cwc_decide_mtw(g, 2, td, &colorable, &stats) == CWC_OK);
  CHECK(colorable == 1);

  // mismatched decomposition -> invalid
  std::string badtd = write_temp("bad.td", "s td 2 1 2\nb 1 1\nb 2 2\n1 2\n");
  cwc_td* btd = nullptr;
  REQUIRE(cwc_td_load(badtd.c_str(), &btd) == CWC_OK);
  CHECK(cwc_decide_mtw(g, 2, btd, &colorable, nullptr) == CWC_ERROR_INVALID);
  cwc_td_free(btd);
  cwc_td_free(td);

  char* count = nullptr;
  REQUIRE(cwc_brute_count_colorings(g, 2, &count) == CWC_OK);
  CHECK(std::string(count) == "2");
  cwc_string_free(count);
  cwc_graph_free(g);

  cwc_graph* missing = nullptr;
  CHECK(cwc_graph_load_dimacs("/nonexistent/x.col", nullptr, 0, &missing) == CWC_ERROR_PARSE);
}

TEST_CASE("reductions through the C API") {
  std::string cnf = write_temp("f.cnf", "p cnf 3 2\n1 2 3 0\n-1 -2 0\n");
  cwc_cnf* f = nullptr;
  REQUIRE(cwc_cnf_load(cnf.c_str(), &f) == CWC_OK);
  int sat = -1;
  REQUIRE(cwc_brute_sat(f, &sat) == CWC_OK);
  CHECK(sat == 1);

  // sat2csp and back in
  std::string csp_path = "/tmp/cwc_capi_out.csp";
  REQUIRE(cwc_reduce_sat2csp(f, 4, 2, csp_path.c_str()) == CWC_OK);
  cwc_csp* c = nullptr;
  REQUIRE(cwc_csp_load(csp_path.c_str(), &c) == CWC_OK);
  int csat = -1;
  REQUIRE(cwc_brute_csp(c, &csat) == CWC_OK);
  CHECK(csat == 1);
  cwc_csp_free(c);

  // full eth reduction with verification
  REQUIRE(cwc_reduce_eth(f, "/tmp/cwc_capi_eth", 1) == CWC_OK);
  cwc_graph* g = nullptr;
  REQUIRE(cwc_graph_load_dimacs("/tmp/cwc_capi_eth.col", "/tmp/cwc_capi_eth.lists", 4,
                                &g) == CWC_OK);
  cwc_td* td = nullptr;
  REQUIRE(cwc_td_load("/tmp/cwc_capi_eth.td", &td) == CWC_OK);
  int colorable = -1;
  REQUIRE(cwc_decide_mtw(g, 4, td, &colorable, nullptr) == CWC_OK);
  CHECK(colorable == 1);
  cwc_td_free(td);
  cwc_graph_free(g);
  cwc_cnf_free(f);
}

TEST_CASE("csp2cw through the C API") {
  std::string csp = write_temp("small.csp", "p csp 1 1 6 1\nc 1 1\nt 3\nt 5\n");
  cwc_csp* c = nullptr;
  REQUIRE(cwc_csp_load(csp.c_str(), &c) == CWC_OK);
  REQUIRE(cwc_reduce_csp2cw(c, 3, "/tmp/cwc_capi_cw", 1) == CWC_OK);
  cwc_expr* e = nullptr;
  REQUIRE(cwc_expr_load("/tmp/cwc_capi_cw.cwe", &e) == CWC_OK);
  REQUIRE(cwc_expr_attach_lists(e, "/tmp/cwc_capi_cw.lists", 3) == CWC_OK);
  char* count = nullptr;
  int colorable = -1;
  REQUIRE(cwc_count_colorings(e, 3, 1, 9, &count, &colorable, nullptr) == CWC_OK);
  CHECK(colorable == 1);
  cwc_string_free(count);
  cwc_expr_free(e);
  // wrong k for this B
  CHECK(cwc_reduce_csp2cw(c, 4, "/tmp/cwc_capi_cw2", 0) == CWC_ERROR_INVALID);
  cwc_csp_free(c);
}

TEST_CASE("random expressions and version") {
  char* text = nullptr;
  REQUIRE(cwc_random_expr("cwe-small", 5, 0, &text) == CWC_OK);
  cwc_expr* e = nullptr;
  REQUIRE(cwc_expr_parse(text, &e) == CWC_OK);
  CHECK(cwc_expr_width(e) <= 4);
  cwc_expr_free(e);
  cwc_string_free(text);
  CHECK(cwc_random_expr("bogus", 1, 0, &text) == CWC_ERROR_INVALID);
  CHECK(std::string(cwc_version()).find("cwcolor") != std::string::npos);
}
