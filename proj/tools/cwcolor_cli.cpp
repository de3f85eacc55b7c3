// cwcolor_cli.cpp
// Command-line front end. Links the C API only.
//
// Exit codes: 0 = colorable / success, 1 = not colorable, 2 = error.
#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cwcolor.h"

namespace {

int die(cwc_status) {
  std::cerr << "error: " << cwc_last_error() << "\n";
  return 2;
}

void print_stats(const cwc_run_stats& s, int k) {
  std::printf("input_hash: %016" PRIx64 "\n", s.input_hash);
  std::printf("k: %d\n", k);
  std::printf("peak_table_entries: %" PRIu64 "\n", s.peak_table_entries);
  std::printf("nodes_intro: %" PRIu64 "\n", s.nodes_intro);
  std::printf("nodes_union: %" PRIu64 "\n", s.nodes_union);
  std::printf("nodes_rename: %" PRIu64 "\n", s.nodes_rename);
  std::printf("nodes_join: %" PRIu64 "\n", s.nodes_join);
  std::printf("wall_ms: %.3f\n", s.wall_ms);
}

struct ExprHandle {
  cwc_expr* e = nullptr;
  ~ExprHandle() { cwc_expr_free(e); }
};
struct GraphHandle {
  cwc_graph* g = nullptr;
  ~GraphHandle() { cwc_graph_free(g); }
};
struct TdHandle {
  cwc_td* td = nullptr;
  ~TdHandle() { cwc_td_free(td); }
};
struct CnfHandle {
  cwc_cnf* f = nullptr;
  ~CnfHandle() { cwc_cnf_free(f); }
};
struct CspHandle {
  cwc_csp* c = nullptr;
  ~CspHandle() { cwc_csp_free(c); }
};

int run_solve_cw(const std::string& path, int k, bool count, bool decide,
                 bool use_mod, std::uint64_t seed, const std::string& lists) {
  ExprHandle h;
  if (cwc_expr_load(path.c_str(), &h.e) != CWC_OK) return die(CWC_ERROR_PARSE);
  if (!lists.empty() && cwc_expr_attach_lists(h.e, lists.c_str(), k) != CWC_OK)
    return die(CWC_ERROR_PARSE);
  int mode = use_mod ? 1 : (decide && !count ? 2 : 0);
  char* count_text = nullptr;
  int colorable = 0;
  cwc_run_stats stats;
  if (cwc_count_colorings(h.e, k, mode, seed, &count_text, &colorable, &stats) != CWC_OK)
    return die(CWC_ERROR_INVALID);
  std::printf("colorable: %s\n", colorable ? "yes" : "no");
  if (mode == 0)
    std::printf("count: %s\n", count_text);
  else if (mode == 1)
    std::printf("count_mod: %s\n", count_text);
  cwc_string_free(count_text);
  print_stats(stats, k);
  return colorable ? 0 : 1;
}

int run_solve_mtw(const std::string& path, int k, const std::string& td_path,
                  const std::string& lists) {
  GraphHandle g;
  if (cwc_graph_load_dimacs(path.c_str(), lists.empty() ? nullptr : lists.c_str(), k,
                            &g.g) != CWC_OK)
    return die(CWC_ERROR_PARSE);
  TdHandle td;
  if (!td_path.empty() && cwc_td_load(td_path.c_str(), &td.td) != CWC_OK)
    return die(CWC_ERROR_PARSE);
  int colorable = 0;
  cwc_run_stats stats;
  if (cwc_decide_mtw(g.g, k, td.td, &colorable, &stats) != CWC_OK)
    return die(CWC_ERROR_INVALID);
  std::printf("colorable: %s\n", colorable ? "yes" : "no");
  std::printf("input_hash: %016" PRIx64 "\n", stats.input_hash);
  std::printf("k: %d\n", k);
  std::printf("peak_states: %" PRIu64 "\n", stats.peak_table_entries);
  std::printf("dp_nodes: %" PRIu64 "\n", stats.nodes_intro);
  std::printf("wall_ms: %.3f\n", stats.wall_ms);
  return colorable ? 0 : 1;
}

std::string clique_expr_two_labels(int n) {
  std::string acc = "(intro 1)";
  for (int i = 2; i <= n; ++i)
    acc = "(rename 2 1 (join 1 2 (union " + acc + " (intro 2))))";
  return acc;
}

std::string clique_expr_wide(int w) {
  std::string acc = "(intro 1)";
  for (int i = 2; i <= w; ++i)
    acc = "(union " + acc + " (intro " + std::to_string(i) + "))";
  for (int i = 1; i <= w; ++i)
    for (int j = i + 1; j <= w; ++j)
      acc = "(join " + std::to_string(i) + " " + std::to_string(j) + " " + acc + ")";
  return acc;
}

int run_bench(const std::string& profile, int k, int seeds, std::uint64_t seed,
              const std::string& out_csv) {
  std::ostringstream csv;
  csv << "k,width,n,peak_entries,wall_ms\n";
  auto bench_one = [&](const std::string& text, int kk) -> int {
    ExprHandle h;
    if (cwc_expr_parse(text.c_str(), &h.e) != CWC_OK) return 2;
    cwc_run_stats stats;
    int colorable;
    char* residue = nullptr;
    if (cwc_count_colorings(h.e, kk, 1, seed, &residue, &colorable, &stats) != CWC_OK)
      return 2;
    cwc_string_free(residue);
    int w = cwc_expr_width(h.e);
    // table entries can never exceed (2^k-2)^width
    std::uint64_t bound = 1, radix = (std::uint64_t{1} << kk) - 2;
    for (int i = 0; i < w; ++i) bound *= radix;
    if (stats.peak_table_entries > bound) {
      std::cerr << "error: peak entries exceed the table bound\n";
      return 2;
    }
    csv << kk << "," << w << "," << cwc_expr_vertex_count(h.e) << ","
        << stats.peak_table_entries << "," << stats.wall_ms << "\n";
    return 0;
  };
  if (profile == "width-scaling") {
    for (int w = 2; w <= 5; ++w)
      if (int rc = bench_one(clique_expr_wide(w), k)) return rc;
  } else if (profile == "k-scaling") {
    for (int kk = 2; kk <= 6; ++kk)
      if (int rc = bench_one(clique_expr_two_labels(6), kk)) return rc;
  } else if (profile == "cwe-small") {
    for (int i = 0; i < seeds; ++i) {
      char* text = nullptr;
      if (cwc_random_expr("cwe-small", seed, i, &text) != CWC_OK)
        return die(CWC_ERROR_INVALID);
      int rc = bench_one(text, k);
      cwc_string_free(text);
      if (rc) return rc;
    }
  } else if (profile == "empty") {
    // header only
  } else {
    std::cerr << "error: unknown bench profile '" << profile << "'\n";
    return 2;
  }
  if (out_csv.empty()) {
    std::cout << csv.str();
  } else {
    std::string tmp = out_csv + ".tmp";
    {
      std::ofstream out(tmp, std::ios::binary);
      if (!out) {
        std::cerr << "error: cannot write " << tmp << "\n";
        return 2;
      }
      out << csv.str();
    }
    if (std::rename(tmp.c_str(), out_csv.c_str()) != 0) {
      std::cerr << "error: cannot rename " << tmp << "\n";
      return 2;
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact k-coloring via clique-width / modular-treewidth dynamic "
               "programming, with hard-instance generators"};
  app.require_subcommand(1);

  // solve-cw
  std::string expr_path, lists_path;
  int k = 3;
  bool flag_count = false, flag_decide = false;
  std::uint64_t mod_seed = 1;
  auto* solve_cw = app.add_subcommand("solve-cw", "count/decide k-colorings of a .cwe expression");
  solve_cw->add_option("expr", expr_path, "clique-width expression file")->required();
  solve_cw->add_option("-k", k, "number of colors")->required();
  solve_cw->add_flag("--count", flag_count, "print the exact count (default)");
  solve_cw->add_flag("--decide", flag_decide, "decide only, with early exit");
  solve_cw->add_option("--mod-prime", mod_seed, "count modulo a random 62-bit prime (seed)")
      ->expected(1);
  solve_cw->add_option("--lists", lists_path, "per-vertex color lists (list coloring)");

  // solve-mtw
  std::string graph_path, td_path, mtw_lists;
  int mk = 3;
  auto* solve_mtw = app.add_subcommand("solve-mtw", "decide k-colorability via modular treewidth");
  solve_mtw->add_option("graph", graph_path, "DIMACS graph file")->required();
  solve_mtw->add_option("-k", mk, "number of colors")->required();
  solve_mtw->add_option("--td", td_path, "tree decomposition (.td, PACE 2017)");
  solve_mtw->add_option("--lists", mtw_lists, "per-vertex color lists (list coloring)");

  // reduce
  auto* reduce = app.add_subcommand("reduce", "instance generators (SAT/CSP reductions)");
  reduce->require_subcommand(1);
  std::string in_path, out_path = "out";
  int rB = 4, rt = 2;
  auto* sat2csp = reduce->add_subcommand("sat2csp", "group a CNF into a q-CSP-B instance");
  sat2csp->add_option("cnf", in_path, "DIMACS CNF input")->required();
  sat2csp->add_option("-B", rB, "alphabet size")->required();
  sat2csp->add_option("-t", rt, "SAT variables per group")->required();
  sat2csp->add_option("-o", out_path, "output .csp path")->required();

  std::string cw_in, cw_out = "out";
  int cwk = 3;
  bool cw_verify = false;
  auto* csp2cw = reduce->add_subcommand("csp2cw", "CSP -> coloring with a clique-width witness");
  csp2cw->add_option("csp", cw_in, "CSP input (p csp format)")->required();
  csp2cw->add_option("-k", cwk, "colors; needs B = 2^k-2")->required();
  csp2cw->add_option("-o", cw_out, "output base path")->required();
  csp2cw->add_flag("--verify", cw_verify, "re-check witness fidelity and small-size equivalence");

  std::string mpw_in, mpw_out = "out";
  int mpwk = 4;
  bool mpw_verify = false;
  auto* csp2mpw = reduce->add_subcommand("csp2mpw", "CSP -> coloring with a modular path decomposition");
  csp2mpw->add_option("csp", mpw_in, "CSP input (p csp format)")->required();
  csp2mpw->add_option("-k", mpwk, "colors; needs B = (k choose floor(k/2))")->required();
  csp2mpw->add_option("-o", mpw_out, "output base path")->required();
  csp2mpw->add_flag("--verify", mpw_verify, "re-check witness fidelity and small-size equivalence");

  std::string eth_in, eth_out = "out";
  bool eth_verify = false;
  auto* eth = reduce->add_subcommand("eth", "3-CNF -> coloring at B=n, k=2*log2(n)");
  eth->add_option("cnf", eth_in, "DIMACS 3-CNF input")->required();
  eth->add_option("-o", eth_out, "output base path")->required();
  eth->add_flag("--verify", eth_verify, "re-check witness fidelity and small-size equivalence");

  // bench
  std::string profile = "width-scaling", csv_out;
  int bk = 3, bseeds = 10;
  std::uint64_t bseed = 1;
  auto* bench = app.add_subcommand("bench", "table-growth benchmarks (CSV)");
  bench->add_option("--profile", profile, "width-scaling | k-scaling | cwe-small | empty");
  bench->add_option("-k", bk, "colors for width-scaling / cwe-small");
  bench->add_option("--seeds", bseeds, "instances for random profiles");
  bench->add_option("--seed", bseed, "base seed");
  bench->add_option("--out", csv_out, "CSV output path (stdout when absent)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  if (solve_cw->parsed())
    return run_solve_cw(expr_path, k, flag_count, flag_decide,
                        solve_cw->count("--mod-prime") > 0, mod_seed, lists_path);
  if (solve_mtw->parsed()) return run_solve_mtw(graph_path, mk, td_path, mtw_lists);
  if (reduce->parsed()) {
    if (sat2csp->parsed()) {
      CnfHandle f;
      if (cwc_cnf_load(in_path.c_str(), &f.f) != CWC_OK) return die(CWC_ERROR_PARSE);
      if (cwc_reduce_sat2csp(f.f, rB, rt, out_path.c_str()) != CWC_OK)
        return die(CWC_ERROR_INVALID);
      std::printf("wrote: %s\n", out_path.c_str());
      return 0;
    }
    if (csp2cw->parsed()) {
      CspHandle c;
      if (cwc_csp_load(cw_in.c_str(), &c.c) != CWC_OK) return die(CWC_ERROR_PARSE);
      if (cwc_reduce_csp2cw(c.c, cwk, cw_out.c_str(), cw_verify ? 1 : 0) != CWC_OK)
        return die(CWC_ERROR_INVALID);
      if (cw_verify) std::printf("verify: ok\n");
      std::printf("wrote: %s.col %s.lists %s.cwe %s.prov\n", cw_out.c_str(), cw_out.c_str(),
                  cw_out.c_str(), cw_out.c_str());
      return 0;
    }
    if (csp2mpw->parsed()) {
      CspHandle c;
      if (cwc_csp_load(mpw_in.c_str(), &c.c) != CWC_OK) return die(CWC_ERROR_PARSE);
      if (cwc_reduce_csp2mpw(c.c, mpwk, mpw_out.c_str(), mpw_verify ? 1 : 0) != CWC_OK)
        return die(CWC_ERROR_INVALID);
      if (mpw_verify) std::printf("verify: ok\n");
      std::printf("wrote: %s.col %s.lists %s.td %s.prov\n", mpw_out.c_str(), mpw_out.c_str(),
                  mpw_out.c_str(), mpw_out.c_str());
      return 0;
    }
    if (eth->parsed()) {
      CnfHandle f;
      if (cwc_cnf_load(eth_in.c_str(), &f.f) != CWC_OK) return die(CWC_ERROR_PARSE);
      if (cwc_reduce_eth(f.f, eth_out.c_str(), eth_verify ? 1 : 0) != CWC_OK)
        return die(CWC_ERROR_INVALID);
      if (eth_verify) std::printf("verify: ok\n");
      std::printf("wrote: %s.col %s.lists %s.td %s.prov\n", eth_out.c_str(), eth_out.c_str(),
                  eth_out.c_str(), eth_out.c_str());
      return 0;
    }
  }
  if (bench->parsed()) return run_bench(profile, bk, bseeds, bseed, csv_out);
  return 2;
}
