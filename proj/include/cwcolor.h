/* cwcolor.h
 *
 * C interface to the cwcolor solver/generator library.
 *
 * All objects are opaque handles created by cwc_*_load/parse functions and
 * released with the matching cwc_*_free. Functions return CWC_OK on success;
 * on failure cwc_last_error() describes the problem (the message is
 * thread-local and valid until the next failing call on that thread).
 *
 * Strings returned through char** are heap-allocated; release them with
 * cwc_string_free.
 */
#ifndef CWCOLOR_H
#define CWCOLOR_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cwc_status {
  CWC_OK = 0,
  CWC_ERROR_PARSE = 1,    /* malformed input file or text */
  CWC_ERROR_INVALID = 2,  /* precondition or validation failure */
  CWC_ERROR_LIMIT = 3,    /* a guarded search space or table limit was hit */
  CWC_ERROR_IO = 4,       /* file could not be read or written */
  CWC_ERROR_INTERNAL = 5
} cwc_status;

const char* cwc_last_error(void);
const char* cwc_version(void);
void cwc_string_free(char* s);

typedef struct cwc_expr cwc_expr;    /* clique-width expression (+ leaf lists) */
typedef struct cwc_graph cwc_graph;  /* graph with optional color lists */
typedef struct cwc_td cwc_td;        /* tree decomposition */
typedef struct cwc_cnf cwc_cnf;
typedef struct cwc_csp cwc_csp;

typedef struct cwc_run_stats {
  uint64_t peak_table_entries; /* or peak DP states for the mtw solver */
  uint64_t nodes_intro;
  uint64_t nodes_union;
  uint64_t nodes_rename;
  uint64_t nodes_join;
  uint64_t input_hash;         /* FNV-1a of the input text/file */
  double wall_ms;
} cwc_run_stats;

/* --- clique-width expressions ------------------------------------------- */

cwc_status cwc_expr_parse(const char* text, cwc_expr** out);
cwc_status cwc_expr_load(const char* path, cwc_expr** out);
void cwc_expr_free(cwc_expr* e);
int cwc_expr_width(const cwc_expr* e);
int64_t cwc_expr_vertex_count(const cwc_expr* e);
cwc_status cwc_expr_serialize(const cwc_expr* e, char** out_text);

/* Attach per-vertex color lists ("l <v> <c...>" lines) to the leaves of e,
 * matching vertices by leaf order. */
cwc_status cwc_expr_attach_lists(cwc_expr* e, const char* lists_path, int k);

/* mode 0: exact count (out_count receives the decimal string).
 * mode 1: count modulo a random 62-bit prime derived from `seed`; out_count
 *         receives "<residue> mod <prime>". A nonzero residue proves
 *         colorability; a zero residue is wrong with negligible probability.
 * mode 2: decide only (early exit; out_count may be NULL).
 * out_colorable (may be NULL) receives 1 or 0. */
cwc_status cwc_count_colorings(const cwc_expr* e, int k, int mode, uint64_t seed,
                               char** out_count, int* out_colorable,
                               cwc_run_stats* stats);

/* --- graphs and tree decompositions --------------------------------------- */

cwc_status cwc_graph_load_dimacs(const char* path, const char* lists_path_or_null,
                                 int k_for_lists, cwc_graph** out);
void cwc_graph_free(cwc_graph* g);
int cwc_graph_vertex_count(const cwc_graph* g);
uint64_t cwc_graph_edge_count(const cwc_graph* g);

cwc_status cwc_td_load(const char* path, cwc_td** out);
void cwc_td_free(cwc_td* td);
int cwc_td_width(const cwc_td* td);

/* k-colorability via the multi-coloring DP on the twin-contracted graph.
 * td may be NULL (a min-fill decomposition of the quotient is used). */
cwc_status cwc_decide_mtw(const cwc_graph* g, int k, const cwc_td* td,
                          int* out_colorable, cwc_run_stats* stats);

/* --- reductions ------------------------------------------------------------ */

cwc_status cwc_cnf_load(const char* path, cwc_cnf** out);
void cwc_cnf_free(cwc_cnf* f);
cwc_status cwc_csp_load(const char* path, cwc_csp** out);
void cwc_csp_free(cwc_csp* c);

/* Writes a q-CSP-B instance ("p csp ..." format) to out_path. */
cwc_status cwc_reduce_sat2csp(const cwc_cnf* f, int B, int t, const char* out_path);

/* Each writes <out_base>.col, .lists, .cwe or .td and .prov and returns the
 * generated sizes. verify = 1 re-checks witness fidelity (and at small sizes
 * oracle equivalence); pass 0 to skip. */
cwc_status cwc_reduce_csp2cw(const cwc_csp* c, int k, const char* out_base, int verify);
cwc_status cwc_reduce_csp2mpw(const cwc_csp* c, int k, const char* out_base, int verify);
cwc_status cwc_reduce_eth(const cwc_cnf* f, const char* out_base, int verify);

/* --- oracles & generators (small sizes; used for verification) ----------- */

cwc_status cwc_brute_count_colorings(const cwc_graph* g, int k, char** out_count);
cwc_status cwc_brute_sat(const cwc_cnf* f, int* out_sat);
cwc_status cwc_brute_csp(const cwc_csp* c, int* out_sat);

/* Deterministic random instance from a named profile (e.g. "cwe-small"),
 * serialized as expression text. */
cwc_status cwc_random_expr(const char* profile, uint64_t seed, int index, char** out_text);

#ifdef __cplusplus
}
#endif

#endif /* CWCOLOR_H */
