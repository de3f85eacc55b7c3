#include "cw_dp.hpp"

#include <algorithm>
#include <cassert>
#include <cstdlib>

namespace cwcolor {

namespace {
constexpr std::size_t npos = static_cast<std::size_t>(-1);
}

int default_thread_count() {
  if (const char* env = std::getenv("CWCOLOR_THREADS")) {
    int v = std::atoi(env);
    if (v >= 1) return std::min(v, 64);
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc ? static_cast<int>(std::min(hc, 8u)) : 1;
}

template <typename Ring>
std::size_t DpTable<Ring>::coord_pos(int label) const {
  auto it = std::lower_bound(live.begin(), live.end(), label);
  if (it == live.end() || *it != label) return npos;
  return static_cast<std::size_t>(it - live.begin());
}

template <typename Ring>
std::uint64_t DpTable<Ring>::stride(std::size_t pos) const {
  std::uint64_t s = 1, r = radix();
  for (std::size_t i = 0; i < pos; ++i) s *= r;
  return s;
}

std::uint64_t table_size_for(int k, std::size_t live_count, std::uint64_t limit) {
  std::uint64_t r = sig_radix(k), s = 1;
  for (std::size_t i = 0; i < live_count; ++i) {
    if (s > limit / r)
      throw LimitError("DP table of " + std::to_string(live_count) + " live labels at k=" +
                       std::to_string(k) + " exceeds the entry limit " + std::to_string(limit));
    s *= r;
  }
  return s;
}

template <typename Ring>
DpTable<Ring> dp_introduce(const Ring& ring, int label, int k, bool live, ColorMask allowed) {
  if (k < 2 || k > kMaxColors)
    throw ValidationError("k out of range 2.." + std::to_string(kMaxColors));
  ColorMask all = full_mask(k);
  if (allowed == 0) allowed = all;
  if (allowed & ~all) throw ValidationError("leaf list exceeds {1..k}");
  DpTable<Ring> t;
  t.k = k;
  if (live) {
    t.live = {label};
    t.a.assign(sig_radix(k), ring.from_u64(0));
    for (int c = 1; c <= k; ++c)
      if (mask_has(allowed, c)) t.a[sig_rank(color_bit(c))] = ring.from_u64(1);
  } else {
    t.a.assign(1, ring.from_u64(static_cast<std::uint64_t>(mask_size(allowed))));
  }
  return t;
}

template <typename Ring, bool Inverse>
static void zeta_moebius(const Ring& ring, DpTable<Ring>& t, int coord_label, int threads) {
  std::size_t pos = t.coord_pos(coord_label);
  if (pos == npos) throw ValidationError("transform coordinate is not live");
  const std::uint64_t r = t.radix();
  const std::uint64_t s = t.stride(pos);
  const std::uint64_t block = s * r;
  const std::uint64_t nblocks = t.a.size() / block;
  for (int j = 1; j <= t.k; ++j) {
    // dst digit has color j and a nonempty remainder when j is removed
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    for (ColorMask m = 1; m <= r; ++m)
      if (mask_has(m, j) && m != color_bit(j))
        pairs.emplace_back(static_cast<std::uint32_t>(m - 1),
                           static_cast<std::uint32_t>((m ^ color_bit(j)) - 1));
    if (pairs.empty()) continue;
    parallel_for(nblocks, threads, [&](std::size_t b0, std::size_t b1) {
      for (std::size_t b = b0; b < b1; ++b) {
        std::uint64_t base = b * block;
        for (auto [d, dsrc] : pairs) {
          auto* dst = &t.a[base + d * s];
          auto* src = &t.a[base + dsrc * s];
          for (std::uint64_t lo = 0; lo < s; ++lo) {
            if constexpr (Inverse)
              ring.sub_from(dst[lo], src[lo]);
            else
              ring.add_to(dst[lo], src[lo]);
          }
        }
      }
    });
  }
}

template <typename Ring>
void zeta_in_place(const Ring& ring, DpTable<Ring>& t, int coord_label, int threads) {
  if (t.live.empty()) return;  // scalar tables are untouched
  zeta_moebius<Ring, false>(ring, t, coord_label, threads);
}

template <typename Ring>
void moebius_in_place(const Ring& ring, DpTable<Ring>& t, int coord_label, int threads) {
  if (t.live.empty()) return;
  zeta_moebius<Ring, true>(ring, t, coord_label, threads);
}

// Sums out one coordinate.
template <typename Ring>
static DpTable<Ring> marginalize(const Ring& ring, DpTable<Ring>&& t, int label,
                                 int threads = 1) {
  std::size_t pos = t.coord_pos(label);
  if (pos == npos) throw ValidationError("marginalized label is not live");
  const std::uint64_t r = t.radix();
  const std::uint64_t s = t.stride(pos);
  DpTable<Ring> out;
  out.k = t.k;
  out.live = t.live;
  out.live.erase(out.live.begin() + static_cast<std::ptrdiff_t>(pos));
  out.a.assign(t.a.size() / r, ring.from_u64(0));
  const std::uint64_t hi_count = t.a.size() / (s * r);
  parallel_for(hi_count, threads, [&](std::size_t h0, std::size_t h1) {
    for (std::uint64_t hi = h0; hi < h1; ++hi)
      for (std::uint64_t d = 0; d < r; ++d) {
        const auto* src = &t.a[hi * s * r + d * s];
        auto* dst = &out.a[hi * s];
        for (std::uint64_t lo = 0; lo < s; ++lo) ring.add_to(dst[lo], src[lo]);
      }
  });
  return out;
}

template <typename Ring>
DpTable<Ring> dp_join(const Ring& ring, DpTable<Ring>&& t, int i1, int i2,
                      const std::vector<int>& live_after, int threads) {
  if (i1 == i2) throw ValidationError("join with equal labels");
  std::size_t p1 = t.coord_pos(i1), p2 = t.coord_pos(i2);
  if (p1 == npos || p2 == npos) throw ValidationError("join label not live in table");
  if (p1 > p2) std::swap(p1, p2);
  const std::uint64_t r = t.radix();
  const std::uint64_t s1 = t.stride(p1), s2 = t.stride(p2);
  const std::uint64_t mid_count = s2 / (s1 * r);
  const std::uint64_t hi_count = t.a.size() / (s2 * r);
  parallel_for(hi_count, threads, [&](std::size_t h0, std::size_t h1) {
    for (std::uint64_t hi = h0; hi < h1; ++hi)
      for (std::uint64_t d2 = 0; d2 < r; ++d2)
        for (std::uint64_t mid = 0; mid < mid_count; ++mid)
          for (std::uint64_t d1 = 0; d1 < r; ++d1) {
            if (((d1 + 1) & (d2 + 1)) == 0) continue;
            auto* dst = &t.a[hi * s2 * r + d2 * s2 + mid * s1 * r + d1 * s1];
            for (std::uint64_t lo = 0; lo < s1; ++lo) dst[lo] = ring.from_u64(0);
          }
  });
  DpTable<Ring> out = std::move(t);
  for (int dead : {i1, i2})
    if (!std::binary_search(live_after.begin(), live_after.end(), dead))
      out = marginalize(ring, std::move(out), dead, threads);
  if (out.live != live_after)
    throw ValidationError("live set after join does not match the annotation");
  return out;
}

// Re-sorts after replacing coordinate label i1 by i2 (i2 previously absent).
template <typename Ring>
static DpTable<Ring> relabel_coord(const Ring& ring, DpTable<Ring>&& t, int i1, int i2) {
  std::size_t pa = t.coord_pos(i1);
  std::vector<int> nl = t.live;
  nl.erase(nl.begin() + static_cast<std::ptrdiff_t>(pa));
  std::size_t pb = static_cast<std::size_t>(
      std::lower_bound(nl.begin(), nl.end(), i2) - nl.begin());
  nl.insert(nl.begin() + static_cast<std::ptrdiff_t>(pb), i2);
  if (pb == pa) {  // order preserved; data untouched
    t.live = std::move(nl);
    return std::move(t);
  }
  const std::uint64_t r = t.radix();
  DpTable<Ring> out;
  out.k = t.k;
  out.live = std::move(nl);
  out.a.assign(t.a.size(), ring.from_u64(0));
  const std::uint64_t sa = t.stride(pa), sb = t.stride(pb);
  const std::uint64_t outer_count = t.a.size() / r;
  auto insert_at = [r](std::uint64_t outer, std::uint64_t s, std::uint64_t d) {
    std::uint64_t lo = outer % s, hi = outer / s;
    return lo + d * s + hi * s * r;
  };
  for (std::uint64_t outer = 0; outer < outer_count; ++outer)
    for (std::uint64_t d = 0; d < r; ++d)
      out.a[insert_at(outer, sb, d)] = std::move(t.a[insert_at(outer, sa, d)]);
  return out;
}

template <typename Ring>
DpTable<Ring> dp_rename(const Ring& ring, DpTable<Ring>&& t, int i1, int i2,
                        const std::vector<int>& live_after, int threads) {
  if (i1 == i2) throw ValidationError("rename with equal labels");
  std::size_t pa = t.coord_pos(i1);
  if (pa == npos) {
    // i1 carries no tracked state: the table is unchanged.
    if (t.live != live_after)
      throw ValidationError("live set after rename does not match the annotation");
    return std::move(t);
  }
  std::size_t pb = t.coord_pos(i2);
  DpTable<Ring> out;
  if (pb == npos) {
    out = relabel_coord(ring, std::move(t), i1, i2);
  } else {
    // Both live: merge color sets, dropping unions equal to {1..k}.
    const std::uint64_t r = t.radix();
    const ColorMask full = full_mask(t.k);
    out.k = t.k;
    out.live = t.live;
    out.live.erase(out.live.begin() + static_cast<std::ptrdiff_t>(pa));
    out.a.assign(t.a.size() / r, ring.from_u64(0));
    const bool removed_lower = pa < pb;
    const std::size_t pl = std::min(pa, pb), ph = std::max(pa, pb);
    const std::uint64_t sl = t.stride(pl), sh = t.stride(ph);
    const std::uint64_t mid_count = sh / (sl * r);
    const std::uint64_t hi_count = t.a.size() / (sh * r);
    parallel_for(hi_count, threads, [&](std::size_t h0, std::size_t h1) {
      for (std::uint64_t hi = h0; hi < h1; ++hi)
        for (std::uint64_t dh = 0; dh < r; ++dh)
          for (std::uint64_t mid = 0; mid < mid_count; ++mid)
            for (std::uint64_t dl = 0; dl < r; ++dl) {
              ColorMask m = static_cast<ColorMask>((dl + 1) | (dh + 1));
              if (m == full) continue;
              const std::uint64_t dm = m - 1;
              const auto* src = &t.a[hi * sh * r + dh * sh + mid * sl * r + dl * sl];
              auto* dst = removed_lower
                              ? &out.a[hi * sh + dm * (sh / r) + mid * sl]
                              : &out.a[hi * sh + mid * sl * r + dm * sl];
              for (std::uint64_t lo = 0; lo < sl; ++lo) ring.add_to(dst[lo], src[lo]);
            }
    });
  }
  if (out.live != live_after)
    throw ValidationError("live set after rename does not match the annotation");
  return out;
}

// Copies (or multiplies) src into dst where dst ranges over `live` and src
// over a subset of it, constant on the missing coordinates.
template <typename Ring, bool Multiply>
static void broadcast_into(const Ring& ring, std::vector<typename Ring::Elem>& dst,
                           const std::vector<int>& live, const DpTable<Ring>& src) {
  const std::uint64_t r = sig_radix(src.k);
  const std::size_t l = live.size();
  std::vector<std::uint64_t> sstride(l, 0);
  for (std::size_t c = 0; c < l; ++c) {
    std::size_t p = src.coord_pos(live[c]);
    if (p != npos) sstride[c] = src.stride(p);
  }
  std::vector<std::uint64_t> digit(l, 0);
  std::uint64_t sidx = 0;
  const std::uint64_t n = dst.size();
  for (std::uint64_t i = 0; i < n; ++i) {
    if constexpr (Multiply)
      ring.mul_to(dst[i], src.a[sidx]);
    else
      dst[i] = src.a[sidx];
    // mixed-radix odometer
    for (std::size_t c = 0; c < l; ++c) {
      if (++digit[c] < r) {
        sidx += sstride[c];
        break;
      }
      digit[c] = 0;
      sidx -= sstride[c] * (r - 1);
    }
  }
}

template <typename Ring>
DpTable<Ring> dp_union(const Ring& ring, DpTable<Ring>&& a, DpTable<Ring>&& b,
                       const std::vector<int>& live, int threads) {
  if (a.k != b.k) throw ValidationError("union of tables with different k");
  for (int lbl : a.live)
    if (!std::binary_search(live.begin(), live.end(), lbl))
      throw ValidationError("child live label missing from the union live set");
  for (int lbl : b.live)
    if (!std::binary_search(live.begin(), live.end(), lbl))
      throw ValidationError("child live label missing from the union live set");

  for (int lbl : a.live) zeta_in_place(ring, a, lbl, threads);
  for (int lbl : b.live) zeta_in_place(ring, b, lbl, threads);

  DpTable<Ring> out;
  out.k = a.k;
  out.live = live;
  std::uint64_t size = 1, r = sig_radix(a.k);
  for (std::size_t i = 0; i < live.size(); ++i) size *= r;
  out.a.assign(size, ring.from_u64(0));
  broadcast_into<Ring, false>(ring, out.a, live, a);
  broadcast_into<Ring, true>(ring, out.a, live, b);

  for (int lbl : out.live) moebius_in_place(ring, out, lbl, threads);
  return out;
}

// --- primality / random prime -------------------------------------------

static std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

static std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t res = 1;
  a %= m;
  while (e) {
    if (e & 1) res = mulmod_u64(res, a, m);
    a = mulmod_u64(a, a, m);
    e >>= 1;
  }
  return res;
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) { d >>= 1; ++s; }
  // Deterministic witness set for all 64-bit integers.
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) { composite = false; break; }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t random_prime_62(std::uint64_t seed) {
  std::uint64_t state = seed ^ 0x6a09e667f3bcc908ULL;
  for (;;) {
    std::uint64_t c = splitmix64(state);
    c = (c & ((std::uint64_t{1} << 62) - 1)) | (std::uint64_t{1} << 61) | 1;
    if (is_prime_u64(c)) return c;
  }
}

// --- expression walker ----------------------------------------------------

namespace {

template <typename Ring>
class DpWalker {
 public:
  DpWalker(const Ring& ring, const CwExpr& e, int k, const DpOptions& opt, DpStats* stats)
      : ring_(ring), e_(e), k_(k), opt_(opt), stats_(stats),
        lm_((check_k(k), annotate_liveness(e))) {
    threads_ = opt.threads > 0 ? opt.threads : default_thread_count();
  }

  static void check_k(int k) {
    if (k < 2 || k > kMaxColors)
      throw ValidationError("k out of range 2.." + std::to_string(kMaxColors));
  }

  typename Ring::Elem run() {
    std::vector<DpTable<Ring>> pending(e_.nodes.size());
    struct Item { std::int32_t node; bool expanded; };
    std::vector<Item> stack{{e_.root, false}};
    while (!stack.empty()) {
      auto [t, expanded] = stack.back();
      stack.pop_back();
      const CwNode& n = e_.nodes[t];
      if (!expanded && n.kind != CwKind::Intro) {
        stack.push_back({t, true});
        if (n.kind == CwKind::Union) stack.push_back({n.right, false});
        stack.push_back({n.left, false});
        continue;
      }
      DpTable<Ring> table = compute(t, pending);
      check_table(t, table);
      if (opt_.early_exit && all_zero(table)) {
        if (stats_) stats_->early_exit = true;
        return ring_.from_u64(0);
      }
      pending[t] = std::move(table);
    }
    DpTable<Ring>& root = pending[e_.root];
    if (!root.live.empty()) throw ValidationError("root table still has live labels");
    return std::move(root.a[0]);
  }

 private:
  DpTable<Ring> compute(std::int32_t t, std::vector<DpTable<Ring>>& pending) {
    const CwNode& n = e_.nodes[t];
    const std::vector<int>& live_after = lm_.at(t);
    switch (n.kind) {
      case CwKind::Intro: {
        if (stats_) ++stats_->intro_nodes;
        bool live = !live_after.empty();
        return dp_introduce(ring_, n.a, k_, live, n.list);
      }
      case CwKind::Join: {
        if (stats_) ++stats_->join_nodes;
        DpTable<Ring> child = std::move(pending[n.left]);
        if (child.is_live(n.a) && child.is_live(n.b))
          return dp_join(ring_, std::move(child), n.a, n.b, live_after, threads_);
        // vacuous join: no edge can have been added (checked by the liveness
        // pass), so the table is unchanged
        if (child.live != live_after)
          throw ValidationError("vacuous join changed the live set");
        return child;
      }
      case CwKind::Rename: {
        if (stats_) ++stats_->rename_nodes;
        return dp_rename(ring_, std::move(pending[n.left]), n.a, n.b, live_after, threads_);
      }
      case CwKind::Union: {
        if (stats_) ++stats_->union_nodes;
        table_size_for(k_, live_after.size(), opt_.max_table_entries);
        // Fast path: union with a bare introduce adds one coordinate holding
        // singleton color sets only; no transforms are needed.
        if (e_.nodes[n.right].kind == CwKind::Intro)
          return union_with_leaf(std::move(pending[n.left]), n.right, live_after);
        if (e_.nodes[n.left].kind == CwKind::Intro)
          return union_with_leaf(std::move(pending[n.right]), n.left, live_after);
        return dp_union(ring_, std::move(pending[n.left]), std::move(pending[n.right]),
                        live_after, threads_);
      }
    }
    throw ValidationError("unreachable node kind");
  }

  DpTable<Ring> union_with_leaf(DpTable<Ring>&& other, std::int32_t leaf,
                                const std::vector<int>& live_after) {
    const CwNode& n = e_.nodes[leaf];
    ColorMask allowed = n.list ? n.list : full_mask(k_);
    bool leaf_live = !lm_.at(leaf).empty();
    if (!leaf_live) {
      auto factor = ring_.from_u64(static_cast<std::uint64_t>(mask_size(allowed)));
      for (auto& x : other.a) ring_.mul_to(x, factor);
      if (other.live != live_after)
        throw ValidationError("live set after scalar union does not match");
      return std::move(other);
    }
    if (other.is_live(n.a))  // label collision: general union handles merging
      return dp_union(ring_, std::move(other), dp_introduce(ring_, n.a, k_, true, allowed),
                      live_after, threads_);
    const std::uint64_t r = sig_radix(k_);
    DpTable<Ring> out;
    out.k = k_;
    out.live = other.live;
    std::size_t pb = static_cast<std::size_t>(
        std::lower_bound(out.live.begin(), out.live.end(), n.a) - out.live.begin());
    out.live.insert(out.live.begin() + static_cast<std::ptrdiff_t>(pb), n.a);
    // single sequential write: the new coordinate holds the other table on
    // singleton digits of the leaf's list and zero elsewhere
    out.a.resize(other.a.size() * r);
    const std::uint64_t s = out.stride(pb);
    std::vector<char> is_allowed_singleton(r, 0);
    for (int c = 1; c <= k_; ++c)
      if (mask_has(allowed, c)) is_allowed_singleton[sig_rank(color_bit(c))] = 1;
    const std::uint64_t hi_count = other.a.size() / s;
    const auto zero = ring_.from_u64(0);
    parallel_for(hi_count, threads_, [&](std::size_t h0, std::size_t h1) {
      for (std::uint64_t hi = h0; hi < h1; ++hi) {
        auto* dst = &out.a[hi * s * r];
        const auto* src = &other.a[hi * s];
        for (std::uint64_t d = 0; d < r; ++d, dst += s) {
          if (is_allowed_singleton[d])
            for (std::uint64_t lo = 0; lo < s; ++lo) dst[lo] = src[lo];
          else
            for (std::uint64_t lo = 0; lo < s; ++lo) dst[lo] = zero;
        }
      }
    });
    if (out.live != live_after)
      throw ValidationError("live set after leaf union does not match");
    return out;
  }

  void check_table(std::int32_t t, const DpTable<Ring>& table) {
    std::uint64_t expected = table_size_for(k_, table.live.size(), opt_.max_table_entries);
    if (table.a.size() != expected)
      throw ValidationError("table size " + std::to_string(table.a.size()) +
                            " != (2^k-2)^live = " + std::to_string(expected));
    if (table.live != lm_.at(t))
      throw ValidationError("table live set disagrees with the liveness annotation");
    if (stats_) stats_->peak_entries = std::max(stats_->peak_entries, expected);
  }

  bool all_zero(const DpTable<Ring>& t) const {
    for (const auto& x : t.a)
      if (!ring_.is_zero(x)) return false;
    return true;
  }

  const Ring& ring_;
  const CwExpr& e_;
  int k_;
  DpOptions opt_;
  DpStats* stats_;
  LivenessMap lm_;
  int threads_ = 1;
};

}  // namespace

mpz_class count_colorings(const CwExpr& e, int k, const DpOptions& opt, DpStats* stats) {
  ExactRing ring;
  return DpWalker<ExactRing>(ring, e, k, opt, stats).run();
}

std::uint64_t count_colorings_mod(const CwExpr& e, int k, std::uint64_t seed,
                                  std::uint64_t* prime_out, const DpOptions& opt,
                                  DpStats* stats) {
  ModRing ring(random_prime_62(seed));
  if (prime_out) *prime_out = ring.p;
  return DpWalker<ModRing>(ring, e, k, opt, stats).run();
}

bool decide_colorable(const CwExpr& e, int k, const DpOptions& opt, DpStats* stats) {
  DpOptions o = opt;
  o.early_exit = true;
  return count_colorings(e, k, o, stats) > 0;
}

// Explicit instantiations for the two rings; tests use these directly.
template struct DpTable<ExactRing>;
template struct DpTable<ModRing>;
#define CWC_INSTANTIATE(RING)                                                              \
  template DpTable<RING> dp_introduce<RING>(const RING&, int, int, bool, ColorMask);       \
  template DpTable<RING> dp_join<RING>(const RING&, DpTable<RING>&&, int, int,             \
                                       const std::vector<int>&, int);                     \
  template DpTable<RING> dp_rename<RING>(const RING&, DpTable<RING>&&, int, int,           \
                                         const std::vector<int>&, int);                   \
  template void zeta_in_place<RING>(const RING&, DpTable<RING>&, int, int);                \
  template void moebius_in_place<RING>(const RING&, DpTable<RING>&, int, int);             \
  template DpTable<RING> dp_union<RING>(const RING&, DpTable<RING>&&, DpTable<RING>&&,     \
                                        const std::vector<int>&, int);
CWC_INSTANTIATE(ExactRing)
CWC_INSTANTIATE(ModRing)
#undef CWC_INSTANTIATE

}  // namespace cwcolor
