// oracle.hpp
// Independent brute-force ground truth (kept deliberately unsophisticated)
// and seeded random instance generators for property tests.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "cw_expr.hpp"
#include "graph.hpp"
#include "reductions.hpp"
#include "util.hpp"

namespace cwcolor {

// Exact count by backtracking over vertices in degeneracy order. The search
// space (product of list sizes) is guarded; exceeding it fails loudly.
mpz_class brute_count_list_colorings(const ListColoringInstance& inst,
                                     std::uint64_t guard = 1'000'000'000);
bool brute_list_colorable(const ListColoringInstance& inst,
                          std::uint64_t guard = 1'000'000'000);
mpz_class brute_count_colorings(const Graph& g, int k,
                                std::uint64_t guard = 1'000'000'000);
bool brute_colorable(const Graph& g, int k, std::uint64_t guard = 1'000'000'000);

// Plain enumeration; B^n respectively 2^n guarded.
bool brute_csp(const CspInstance& csp, std::uint64_t guard = 100'000'000);
bool brute_sat(const CnfFormula& f, int max_vars = 26);

// Deterministic generators (identical output for identical seeds/arguments).
Graph random_graph(Rng& rng, int n, double p);
CnfFormula random_cnf3(Rng& rng, int n, int m);
CspInstance random_csp(Rng& rng, int n, int m, int B, int max_arity, int max_tuples);
CwExpr random_cwe(Rng& rng, int max_width, int target_vertices);

// Named profiles ("cwe-small", "graph-n8-p0.5", "cnf3-n8", "csp-small"):
// instance #index of the stream for the given seed.
CwExpr random_suite_cwe(const std::string& profile, std::uint64_t seed, int index);
Graph random_suite_graph(const std::string& profile, std::uint64_t seed, int index);
CnfFormula random_suite_cnf(const std::string& profile, std::uint64_t seed, int index);
CspInstance random_suite_csp(const std::string& profile, std::uint64_t seed, int index);

}  // namespace cwcolor
