// capi.cpp
// The extern-C shared-library surface: opaque handles over the C++ core,
// exceptions mapped to status codes with a thread-local message.
#include "cwcolor.h"

#include <chrono>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "cw_dp.hpp"
#include "cw_expr.hpp"
#include "gadgets.hpp"
#include "graph.hpp"
#include "mtw_dp.hpp"
#include "oracle.hpp"
#include "reductions.hpp"
#include "util.hpp"

using namespace cwcolor;

namespace {

thread_local std::string g_last_error;

cwc_status fail(cwc_status code, const std::string& msg) {
  g_last_error = msg;
  return code;
}

template <typename Fn>
cwc_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const ParseError& e) {
    return fail(CWC_ERROR_PARSE, e.what());
  } catch (const LimitError& e) {
    return fail(CWC_ERROR_LIMIT, e.what());
  } catch (const ValidationError& e) {
    return fail(CWC_ERROR_INVALID, e.what());
  } catch (const std::exception& e) {
    return fail(CWC_ERROR_INTERNAL, e.what());
  }
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
  }
};

}  // namespace

struct cwc_expr {
  CwExpr e;
  std::uint64_t hash = 0;
};
struct cwc_graph {
  ListColoringInstance inst;  // k = 0 means "no lists attached"
  std::uint64_t hash = 0;
};
struct cwc_td {
  TreeDecomposition td;
};
struct cwc_cnf {
  CnfFormula f;
  std::uint64_t hash = 0;
};
struct cwc_csp {
  CspInstance c;
  std::uint64_t hash = 0;
};

extern "C" {

const char* cwc_last_error(void) { return g_last_error.c_str(); }
const char* cwc_version(void) { return "cwcolor 1.0.0"; }
void cwc_string_free(char* s) { delete[] s; }

cwc_status cwc_expr_parse(const char* text, cwc_expr** out) {
  return guarded([&]() -> cwc_status {
    if (!text || !out) return fail(CWC_ERROR_INVALID, "null argument");
    auto* h = new cwc_expr{parse_expr(text), fnv1a(std::string(text))};
    *out = h;
    return CWC_OK;
  });
}

cwc_status cwc_expr_load(const char* path, cwc_expr** out) {
  return guarded([&]() -> cwc_status {
    if (!path || !out) return fail(CWC_ERROR_INVALID, "null argument");
    std::string text = read_file(path);
    auto* h = new cwc_expr{parse_expr(text), fnv1a(text)};
    *out = h;
    return CWC_OK;
  });
}

void cwc_expr_free(cwc_expr* e) { delete e; }

int cwc_expr_width(const cwc_expr* e) { return e ? width(e->e) : -1; }

int64_t cwc_expr_vertex_count(const cwc_expr* e) { return e ? leaf_count(e->e) : -1; }

cwc_status cwc_expr_serialize(const cwc_expr* e, char** out_text) {
  return guarded([&]() -> cwc_status {
    if (!e || !out_text) return fail(CWC_ERROR_INVALID, "null argument");
    *out_text = dup_string(serialize(e->e));
    return CWC_OK;
  });
}

cwc_status cwc_expr_attach_lists(cwc_expr* e, const char* lists_path, int k) {
  return guarded([&]() -> cwc_status {
    if (!e || !lists_path) return fail(CWC_ERROR_INVALID, "null argument");
    if (k < 2 || k > kMaxColors) return fail(CWC_ERROR_INVALID, "k out of range");
    std::int64_t n = leaf_count(e->e);
    std::vector<ColorMask> lists = parse_lists_file(lists_path, static_cast<int>(n), k);
    // collect leaf node ids in vertex (postorder) order
    std::vector<std::int32_t> leaves;
    leaves.reserve(n);
    struct Item { std::int32_t node; bool expanded; };
    std::vector<Item> stack{{e->e.root, false}};
    while (!stack.empty()) {
      auto [t, expanded] = stack.back();
      stack.pop_back();
      const CwNode& node = e->e.nodes[t];
      if (node.kind == CwKind::Intro) {
        leaves.push_back(t);
        continue;
      }
      if (expanded) continue;
      stack.push_back({t, true});
      if (node.kind == CwKind::Union) stack.push_back({node.right, false});
      stack.push_back({node.left, false});
    }
    for (std::size_t i = 0; i < leaves.size(); ++i)
      e->e.nodes[leaves[i]].list = lists[i + 1];
    return CWC_OK;
  });
}

cwc_status cwc_count_colorings(const cwc_expr* e, int k, int mode, uint64_t seed,
                               char** out_count, int* out_colorable,
                               cwc_run_stats* stats) {
  return guarded([&]() -> cwc_status {
    if (!e) return fail(CWC_ERROR_INVALID, "null expression");
    Timer timer;
    DpStats ds;
    DpOptions opt;
    std::string count_text;
    bool colorable;
    if (mode == 1) {
      std::uint64_t prime = 0;
      std::uint64_t residue = count_colorings_mod(e->e, k, seed, &prime, opt, &ds);
      count_text = std::to_string(residue) + " mod " + std::to_string(prime);
      colorable = residue != 0;
    } else if (mode == 2) {
      colorable = decide_colorable(e->e, k, opt, &ds);
      count_text = colorable ? "nonzero" : "0";
    } else {
      mpz_class c = count_colorings(e->e, k, opt, &ds);
      count_text = c.get_str();
      colorable = c != 0;
    }
    if (out_count) *out_count = dup_string(count_text);
    if (out_colorable) *out_colorable = colorable ? 1 : 0;
    if (stats) {
      *stats = {};
      stats->peak_table_entries = ds.peak_entries;
      stats->nodes_intro = ds.intro_nodes;
      stats->nodes_union = ds.union_nodes;
      stats->nodes_rename = ds.rename_nodes;
      stats->nodes_join = ds.join_nodes;
      stats->input_hash = e->hash;
      stats->wall_ms = timer.ms();
    }
    return CWC_OK;
  });
}

cwc_status cwc_graph_load_dimacs(const char* path, const char* lists_path_or_null,
                                 int k_for_lists, cwc_graph** out) {
  return guarded([&]() -> cwc_status {
    if (!path || !out) return fail(CWC_ERROR_INVALID, "null argument");
    std::string text = read_file(path);
    std::istringstream in(text);
    Graph g = parse_dimacs(in);
    auto* h = new cwc_graph;
    h->hash = fnv1a(text);
    if (lists_path_or_null) {
      h->inst = ListColoringInstance(std::move(g), k_for_lists);
      h->inst.lists = parse_lists_file(lists_path_or_null,
                                       h->inst.graph.vertex_count(), k_for_lists);
      h->inst.validate();
    } else {
      h->inst.graph = std::move(g);
      h->inst.k = 0;
    }
    *out = h;
    return CWC_OK;
  });
}

void cwc_graph_free(cwc_graph* g) { delete g; }
int cwc_graph_vertex_count(const cwc_graph* g) { return g ? g->inst.graph.vertex_count() : -1; }
uint64_t cwc_graph_edge_count(const cwc_graph* g) { return g ? g->inst.graph.edge_count() : 0; }

cwc_status cwc_td_load(const char* path, cwc_td** out) {
  return guarded([&]() -> cwc_status {
    if (!path || !out) return fail(CWC_ERROR_INVALID, "null argument");
    *out = new cwc_td{parse_td_file(path)};
    return CWC_OK;
  });
}

void cwc_td_free(cwc_td* td) { delete td; }
int cwc_td_width(const cwc_td* td) { return td ? td->td.width() : -1; }

cwc_status cwc_decide_mtw(const cwc_graph* g, int k, const cwc_td* td,
                          int* out_colorable, cwc_run_stats* stats) {
  return guarded([&]() -> cwc_status {
    if (!g || !out_colorable) return fail(CWC_ERROR_INVALID, "null argument");
    Timer timer;
    MtwStats ms;
    bool res;
    if (g->inst.k > 0)
      res = decide_list_colorable_mtw(g->inst, td ? &td->td : nullptr, {}, &ms);
    else
      res = decide_colorable_mtw(g->inst.graph, k, td ? &td->td : nullptr, {}, &ms);
    *out_colorable = res ? 1 : 0;
    if (stats) {
      *stats = {};
      stats->peak_table_entries = ms.peak_states;
      stats->nodes_intro = ms.nodes;
      stats->input_hash = g->hash;
      stats->wall_ms = timer.ms();
    }
    return CWC_OK;
  });
}

cwc_status cwc_cnf_load(const char* path, cwc_cnf** out) {
  return guarded([&]() -> cwc_status {
    if (!path || !out) return fail(CWC_ERROR_INVALID, "null argument");
    std::string text = read_file(path);
    std::istringstream in(text);
    *out = new cwc_cnf{parse_cnf(in), fnv1a(text)};
    return CWC_OK;
  });
}

void cwc_cnf_free(cwc_cnf* f) { delete f; }

cwc_status cwc_csp_load(const char* path, cwc_csp** out) {
  return guarded([&]() -> cwc_status {
    if (!path || !out) return fail(CWC_ERROR_INVALID, "null argument");
    std::string text = read_file(path);
    std::istringstream in(text);
    *out = new cwc_csp{parse_csp(in), fnv1a(text)};
    return CWC_OK;
  });
}

void cwc_csp_free(cwc_csp* c) { delete c; }

cwc_status cwc_reduce_sat2csp(const cwc_cnf* f, int B, int t, const char* out_path) {
  return guarded([&]() -> cwc_status {
    if (!f || !out_path) return fail(CWC_ERROR_INVALID, "null argument");
    GroupingParams gp;
    CspInstance csp = sat_to_csp(f->f, B, t, &gp);
    std::ostringstream ss;
    ss << "# sat2csp B=" << gp.B << " t=" << gp.t << " p=" << gp.p
       << " gamma=" << gp.gamma << " source_hash=" << f->hash << "\n";
    write_csp(ss, csp);
    write_file_atomic(out_path, ss.str());
    return CWC_OK;
  });
}

namespace {

void maybe_verify_cw(const GeneratedCwInstance& gen, int k, std::uint64_t seed) {
  verify_witness(gen);
  // oracle equivalence on desk-scale instances only
  unsigned __int128 space = 1;
  bool small = true;
  for (int v = 1; v <= gen.instance.graph.vertex_count() && small; ++v) {
    space *= static_cast<unsigned>(mask_size(gen.instance.lists[v]));
    if (space > 200'000'000) small = false;
  }
  std::uint64_t dp = count_colorings_mod(gen.witness, k, seed);
  if (small) {
    bool brute = brute_list_colorable(gen.instance);
    if (brute != (dp != 0))
      throw ValidationError("verification failed: DP and brute force disagree");
  }
}

void maybe_verify_mpw(const GeneratedMpwInstance& gen) {
  verify_witness(gen);
  unsigned __int128 space = 1;
  bool small = true;
  for (int v = 1; v <= gen.instance.graph.vertex_count() && small; ++v) {
    space *= static_cast<unsigned>(mask_size(gen.instance.lists[v]));
    if (space > 200'000'000) small = false;
  }
  if (small) {
    bool brute = brute_list_colorable(gen.instance);
    bool dp = decide_list_colorable_mtw(gen.instance, &gen.witness);
    if (brute != dp)
      throw ValidationError("verification failed: DP and brute force disagree");
  }
}

}  // namespace

cwc_status cwc_reduce_csp2cw(const cwc_csp* c, int k, const char* out_base, int verify) {
  return guarded([&]() -> cwc_status {
    if (!c || !out_base) return fail(CWC_ERROR_INVALID, "null argument");
    GeneratedCwInstance gen = csp_to_coloring_cw(c->c, k);
    gen.provenance.set("source_hash", c->hash);
    if (verify) maybe_verify_cw(gen, k, /*seed=*/c->hash);
    write_generated(gen, out_base);
    return CWC_OK;
  });
}

cwc_status cwc_reduce_csp2mpw(const cwc_csp* c, int k, const char* out_base, int verify) {
  return guarded([&]() -> cwc_status {
    if (!c || !out_base) return fail(CWC_ERROR_INVALID, "null argument");
    GeneratedMpwInstance gen = csp_to_coloring_mpw(c->c, k);
    gen.provenance.set("source_hash", c->hash);
    if (verify) maybe_verify_mpw(gen);
    write_generated(gen, out_base);
    return CWC_OK;
  });
}

cwc_status cwc_reduce_eth(const cwc_cnf* f, const char* out_base, int verify) {
  return guarded([&]() -> cwc_status {
    if (!f || !out_base) return fail(CWC_ERROR_INVALID, "null argument");
    GeneratedMpwInstance gen = eth_pipeline(f->f);
    gen.provenance.set("source_hash", f->hash);
    if (verify) maybe_verify_mpw(gen);
    write_generated(gen, out_base);
    return CWC_OK;
  });
}

cwc_status cwc_brute_count_colorings(const cwc_graph* g, int k, char** out_count) {
  return guarded([&]() -> cwc_status {
    if (!g || !out_count) return fail(CWC_ERROR_INVALID, "null argument");
    mpz_class c = g->inst.k > 0 ? brute_count_list_colorings(g->inst)
                                : brute_count_colorings(g->inst.graph, k);
    *out_count = dup_string(c.get_str());
    return CWC_OK;
  });
}

cwc_status cwc_brute_sat(const cwc_cnf* f, int* out_sat) {
  return guarded([&]() -> cwc_status {
    if (!f || !out_sat) return fail(CWC_ERROR_INVALID, "null argument");
    *out_sat = brute_sat(f->f) ? 1 : 0;
    return CWC_OK;
  });
}

cwc_status cwc_brute_csp(const cwc_csp* c, int* out_sat) {
  return guarded([&]() -> cwc_status {
    if (!c || !out_sat) return fail(CWC_ERROR_INVALID, "null argument");
    *out_sat = brute_csp(c->c) ? 1 : 0;
    return CWC_OK;
  });
}

cwc_status cwc_random_expr(const char* profile, uint64_t seed, int index, char** out_text) {
  return guarded([&]() -> cwc_status {
    if (!profile || !out_text) return fail(CWC_ERROR_INVALID, "null argument");
    CwExpr e = random_suite_cwe(profile, seed, index);
    *out_text = dup_string(serialize(e));
    return CWC_OK;
  });
}

}  // extern "C"
