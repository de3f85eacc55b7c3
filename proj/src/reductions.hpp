// reductions.hpp
// Hard-instance generators: SAT -> q-CSP-B grouping, CSP -> coloring with a
// certified clique-width expression (label-reuse discipline, live labels
// bounded by n + arity + O(1)), CSP -> coloring with a certified modular path
// decomposition, and the ETH pipeline composing the two at B=n, k=2*log2(n).
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "cw_expr.hpp"
#include "gadgets.hpp"
#include "graph.hpp"
#include "mtw_dp.hpp"
#include "util.hpp"

namespace cwcolor {

struct CnfFormula {
  int n = 0;
  std::vector<std::vector<int>> clauses;  // nonzero literals, |lit| <= n
  void validate() const;
};

// DIMACS CNF: "p cnf <n> <m>", clauses as 0-terminated literal lists.
CnfFormula parse_cnf(std::istream& in);
CnfFormula parse_cnf_file(const std::string& path);
void write_cnf(std::ostream& out, const CnfFormula& f);

struct CspConstraint {
  std::vector<int> vars;                 // ordered tuple V(c), distinct
  std::vector<std::vector<int>> tuples;  // satisfying assignments, values 1..B
};

struct CspInstance {
  int n = 0, B = 0;
  std::vector<CspConstraint> constraints;
  int max_arity() const;
  void validate() const;  // also rejects empty satisfying sets
};

// Text format: "p csp <n> <m> <B> <q>"; per constraint one header
// "c <arity> <v1> ... <v_arity>" followed by "t <a1> ... <a_arity>" lines.
CspInstance parse_csp(std::istream& in);
CspInstance parse_csp_file(const std::string& path);
void write_csp(std::ostream& out, const CspInstance& csp);

struct GroupingParams {
  int B = 0, t = 0, p = 0, gamma = 0;
  std::vector<std::vector<int>> groups;  // SAT variables per group
};

// Groups the n SAT variables into ceil(n/t) groups of at most t variables;
// each group becomes p CSP variables (p minimal with B^p >= 2^t). A clause
// touching g groups becomes one constraint on g*p variables whose satisfying
// tuples are the encodings of the clause-satisfying group assignments.
// Equisatisfiable with the input.
CspInstance sat_to_csp(const CnfFormula& f, int B, int t,
                       GroupingParams* params = nullptr, int max_groups_per_clause = 8);

enum class SubsetScheme { ProperSubsets, HalfSubsets };

// Bijection between CSP values and eligible color subsets, enumerated by
// increasing bit-set value. ProperSubsets covers all 2^k-2 nonempty proper
// subsets; HalfSubsets the (k choose floor(k/2)) subsets of that size.
struct TranslationTable {
  int k = 0;
  SubsetScheme scheme = SubsetScheme::ProperSubsets;
  std::vector<ColorMask> to_set;  // 1-indexed; to_set[0] unused

  int size() const { return static_cast<int>(to_set.size()) - 1; }
  ColorMask operator()(int v) const { return to_set[v]; }
  int inverse(ColorMask m) const;  // 0 if m is not an image
};

TranslationTable value_encoding(int k, SubsetScheme scheme);

struct Provenance {
  std::vector<std::pair<std::string, std::string>> kv;
  void set(const std::string& key, const std::string& value);
  void set(const std::string& key, std::uint64_t value);
  std::string text() const;  // key=value lines
};

struct GeneratedCwInstance {
  ListColoringInstance instance;
  CwExpr witness;  // listed leaves mirror the instance lists
  std::vector<GadgetRecord> gadget_records;
  Provenance provenance;
  int label_count = 0;
  std::uint64_t iterations = 0;  // L
};

// Layout bookkeeping for the mpw construction; enough to rebuild an explicit
// coloring from a satisfying assignment.
struct MpwLayout {
  TranslationTable T;
  std::vector<std::vector<int>> var_clique;  // [var] = V_i vertex ids
  struct Incidence {
    int var = 0;
    int value = 0;
    std::vector<std::pair<int, int>> u_vertices;  // (vertex, implied color)
  };
  struct Block {
    int constraint = 0;
    std::vector<int> or_members;    // a-vertex per satisfying tuple
    std::vector<int> or_internals;  // w0..w_s in path order
    std::vector<std::vector<Incidence>> per_tuple;
  };
  std::vector<Block> blocks;
};

struct GeneratedMpwInstance {
  ListColoringInstance instance;
  TreeDecomposition witness;  // path decomposition of the quotient
  Quotient quotient;
  std::vector<GadgetRecord> gadget_records;
  MpwLayout layout;
  Provenance provenance;
};

// Iterated-block construction with L = 3m(nk+1) rounds; requires
// B = 2^k-2 and at least one constraint, every constraint nonempty.
GeneratedCwInstance csp_to_coloring_cw(const CspInstance& csp, int k);

// Clique-per-variable construction; requires B = (k choose floor(k/2)), or any
// B <= that when allow_smaller_alphabet (the ETH pipeline's prefix use).
GeneratedMpwInstance csp_to_coloring_mpw(const CspInstance& csp, int k,
                                         bool allow_smaller_alphabet = false);

struct EthParams {
  int n_orig = 0, n_padded = 0, t = 0, B = 0, k = 0, gamma = 0, p = 0;
};

// 3-CNF -> q-CSP-n (q=3, one CSP variable per group of log2(n) SAT
// variables) -> mpw construction at k = 2*log2(n). n is padded to a power of
// two, at least 4 so that k >= 3 admits the gadgets.
GeneratedMpwInstance eth_pipeline(const CnfFormula& f, EthParams* params = nullptr);

// Witness fidelity: the expression must evaluate to exactly the generated
// graph (same vertex numbering) with matching leaf lists; the decomposition
// must satisfy all axioms against the generated graph's quotient.
void verify_witness(const GeneratedCwInstance& gen);
void verify_witness(const GeneratedMpwInstance& gen);

// Explicit proper list coloring built from a satisfying CSP assignment
// (1-indexed values). Throws if the assignment does not satisfy the CSP or a
// gadget extension fails; validate with check_coloring.
std::vector<int> certificate_coloring(const GeneratedMpwInstance& gen,
                                      const std::vector<int>& assignment);
bool check_coloring(const ListColoringInstance& inst, const std::vector<int>& colors);

// Writes <base>.col, <base>.lists, <base>.cwe|.td and <base>.prov; returns
// the paths. Files are written to a temp name and renamed into place.
std::vector<std::string> write_generated(const GeneratedCwInstance& gen,
                                         const std::string& base);
std::vector<std::string> write_generated(const GeneratedMpwInstance& gen,
                                         const std::string& base);

void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace cwcolor
