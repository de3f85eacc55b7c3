// cw_dp.hpp
// Counting/deciding proper k-colorings over a clique-width expression with
// tables indexed by signatures over live labels only. A signature assigns to
// every live label the exact set of colors used on it; the per-coordinate
// alphabet is C = 2^{1..k} minus the empty and the full set, so each table
// holds exactly (2^k-2)^(#live) entries.
//
// Union nodes combine children through per-coordinate subset-sum (zeta)
// transforms, pointwise products, and the inverse (Moebius) transforms.
// Counts are exact big integers, or residues mod a random 62-bit prime when
// speed matters more than certainty (nonzero residue still proves
// colorability).
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "cw_expr.hpp"
#include "util.hpp"

namespace cwcolor {

struct ExactRing {
  using Elem = mpz_class;
  Elem from_u64(std::uint64_t x) const { Elem e; mpz_import(e.get_mpz_t(), 1, 1, sizeof x, 0, 0, &x); return e; }
  void add_to(Elem& a, const Elem& b) const { a += b; }
  void sub_from(Elem& a, const Elem& b) const {
    a -= b;
    if (a < 0) throw ValidationError("negative count after Moebius step");
  }
  void mul_to(Elem& a, const Elem& b) const { a *= b; }
  bool is_zero(const Elem& a) const { return a == 0; }
};

struct ModRing {
  using Elem = std::uint64_t;
  std::uint64_t p;
  explicit ModRing(std::uint64_t prime) : p(prime) {}
  Elem from_u64(std::uint64_t x) const { return x % p; }
  void add_to(Elem& a, Elem b) const { a += b; if (a >= p) a -= p; }
  void sub_from(Elem& a, Elem b) const { a = (a >= b) ? a - b : a + (p - b); }
  void mul_to(Elem& a, Elem b) const {
    a = static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
  }
  bool is_zero(Elem a) const { return a == 0; }
};

// Dense mixed-radix table. Coordinate order follows `live` (increasing label
// ids); the digit for a coordinate is sig_rank(mask) = mask - 1.
template <typename Ring>
struct DpTable {
  int k = 0;
  std::vector<int> live;
  std::vector<typename Ring::Elem> a;

  std::uint64_t radix() const { return sig_radix(k); }
  std::size_t coord_pos(int label) const;  // npos when absent
  bool is_live(int label) const { return coord_pos(label) != static_cast<std::size_t>(-1); }
  std::uint64_t stride(std::size_t pos) const;
};

std::uint64_t table_size_for(int k, std::size_t live_count, std::uint64_t limit);

template <typename Ring>
DpTable<Ring> dp_introduce(const Ring& ring, int label, int k, bool live,
                           ColorMask allowed = 0);

// Zeroes signatures with S(i1) intersecting S(i2), then sums out every label
// of {i1,i2} missing from live_after.
template <typename Ring>
DpTable<Ring> dp_join(const Ring& ring, DpTable<Ring>&& t, int i1, int i2,
                      const std::vector<int>& live_after, int threads = 1);

template <typename Ring>
DpTable<Ring> dp_rename(const Ring& ring, DpTable<Ring>&& t, int i1, int i2,
                        const std::vector<int>& live_after, int threads = 1);

// One-coordinate subset-sum: afterwards B[S] = sum of A over T subseteq
// S(coord), T ranging over C. moebius_in_place is its exact inverse.
template <typename Ring>
void zeta_in_place(const Ring& ring, DpTable<Ring>& t, int coord_label, int threads = 1);
template <typename Ring>
void moebius_in_place(const Ring& ring, DpTable<Ring>& t, int coord_label, int threads = 1);

// General union combine: zeta both children over their own coordinates,
// broadcast onto the union's live set, multiply pointwise, Moebius-invert.
template <typename Ring>
DpTable<Ring> dp_union(const Ring& ring, DpTable<Ring>&& a, DpTable<Ring>&& b,
                       const std::vector<int>& live, int threads = 1);

struct DpStats {
  std::uint64_t peak_entries = 1;
  std::uint64_t intro_nodes = 0, union_nodes = 0, rename_nodes = 0, join_nodes = 0;
  bool early_exit = false;
};

struct DpOptions {
  int threads = 0;                       // 0 = CWCOLOR_THREADS or hardware
  std::uint64_t max_table_entries = std::uint64_t{1} << 28;
  bool early_exit = false;               // stop once a table is all zero
};

// Exact number of proper k-colorings of evaluate(e); leaf lists restrict the
// colors of the introduced vertex. 2 <= k <= 30.
mpz_class count_colorings(const CwExpr& e, int k, const DpOptions& opt = {},
                          DpStats* stats = nullptr);

// Count modulo a random 62-bit prime derived from `seed`. A nonzero residue
// proves colorability; zero is wrong with probability <= bits(count)/2^61.
std::uint64_t count_colorings_mod(const CwExpr& e, int k, std::uint64_t seed,
                                  std::uint64_t* prime_out = nullptr,
                                  const DpOptions& opt = {}, DpStats* stats = nullptr);

bool decide_colorable(const CwExpr& e, int k, const DpOptions& opt = {},
                      DpStats* stats = nullptr);

std::uint64_t random_prime_62(std::uint64_t seed);
bool is_prime_u64(std::uint64_t n);

}  // namespace cwcolor
