// util.hpp
// Shared small helpers: color masks, the signature alphabet, deterministic
// hashing/rng, and a minimal parallel_for used by the DP transforms.
#pragma once

#include <cstdint>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace cwcolor {

// Colors 1..k are bits 0..k-1 of a mask. The signature alphabet C consists of
// every mask in [1, 2^k-2], i.e. all nonempty proper subsets of {1..k}.
using ColorMask = std::uint32_t;

constexpr int kMaxColors = 30;

inline ColorMask full_mask(int k) { return (ColorMask{1} << k) - 1; }
inline ColorMask color_bit(int c) { return ColorMask{1} << (c - 1); }
inline bool mask_has(ColorMask m, int c) { return (m >> (c - 1)) & 1; }
inline int mask_size(ColorMask m) { return __builtin_popcount(m); }

// Number of signature values per coordinate: |C| = 2^k - 2.
inline std::uint64_t sig_radix(int k) { return (std::uint64_t{1} << k) - 2; }

// Rank of a mask within C, enumerating by increasing bit-set value.
inline std::uint64_t sig_rank(ColorMask m) { return m - 1; }
inline ColorMask sig_unrank(std::uint64_t r) { return static_cast<ColorMask>(r + 1); }

inline std::string mask_to_string(ColorMask m, int k) {
  std::string s = "{";
  bool first = true;
  for (int c = 1; c <= k; ++c)
    if (mask_has(m, c)) {
      if (!first) s += ",";
      s += std::to_string(c);
      first = false;
    }
  return s + "}";
}

// Errors thrown by parsers and validators; the C API maps these to statuses.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// Raised when a guarded search space or table would exceed its limit.
struct LimitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// FNV-1a, used for input-identity hashes in run reports and provenance.
inline std::uint64_t fnv1a(const void* data, std::size_t len,
                           std::uint64_t h = 0xcbf29ce484222325ULL) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}
inline std::uint64_t fnv1a(const std::string& s) { return fnv1a(s.data(), s.size()); }

// splitmix64, used to derive independent rng streams from one seed.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Deterministic, platform-independent rng (std distributions are not portable).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() { return splitmix64(state_); }
  // Uniform in [0, n), n > 0.
  std::uint64_t below(std::uint64_t n) { return next() % n; }
  int range(int lo, int hi) { return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1))); }
  bool chance(double p) { return static_cast<double>(next() >> 11) * 0x1.0p-53 < p; }

 private:
  std::uint64_t state_;
};

// Runs fn(begin, end) over [0, n) split into contiguous chunks. threads <= 1
// or small n degrades to a plain call.
inline void parallel_for(std::size_t n, int threads,
                         const std::function<void(std::size_t, std::size_t)>& fn) {
  // thread spawns only pay off on large ranges
  if (threads <= 1 || n < (1u << 20)) {
    fn(0, n);
    return;
  }
  std::size_t nthreads = std::min<std::size_t>(threads, (n + 1) / 2);
  std::vector<std::thread> pool;
  pool.reserve(nthreads);
  std::size_t chunk = (n + nthreads - 1) / nthreads;
  for (std::size_t t = 0; t < nthreads; ++t) {
    std::size_t lo = t * chunk, hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&fn, lo, hi] { fn(lo, hi); });
  }
  for (auto& th : pool) th.join();
}

int default_thread_count();

inline std::uint64_t binom_u64(int n, int r) {
  if (r < 0 || r > n) return 0;
  if (r > n - r) r = n - r;
  std::uint64_t res = 1;
  for (int i = 1; i <= r; ++i) res = res * static_cast<std::uint64_t>(n - r + i) / i;
  return res;
}

}  // namespace cwcolor
