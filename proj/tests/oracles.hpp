#pragma once

// Test-only reference computations, written directly from the definitions
// and kept independent of the library's bit tricks.

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "setfam/family.hpp"

namespace oracle {

inline std::set<std::uint64_t> trace_set(const setfam::SetFamily& f, std::uint64_t a) {
  std::set<std::uint64_t> t;
  for (auto e : f.members()) t.insert(e.mask() & a);
  return t;
}

inline bool shatters(const setfam::SetFamily& f, std::uint64_t a) {
  const auto t = trace_set(f, a);
  // Every subset of a must appear.
  for (std::uint64_t p = a;; p = (p - 1) & a) {
    if (!t.count(p)) return false;
    if (p == 0) break;
  }
  return true;
}

inline int vc_dimension(const setfam::SetFamily& f) {
  const int n = f.ground().size();
  int best = -1;
  for (std::uint64_t a = 0; a < (std::uint64_t{1} << n); ++a) {
    const int w = __builtin_popcountll(a);
    if (w > best && shatters(f, a)) best = w;
  }
  return best;
}

inline int index_of(const setfam::SetFamily& f) {
  const int n = f.ground().size();
  int d = 0;
  for (int w = 1; w <= n; ++w) {
    for (std::uint64_t a = 0; a < (std::uint64_t{1} << n); ++a) {
      if (__builtin_popcountll(a) == w && !shatters(f, a)) return d;
    }
    d = w;
  }
  return d;
}

// Pascal's triangle.
inline std::uint64_t binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::vector<std::vector<std::uint64_t>> c(n + 1);
  for (int i = 0; i <= n; ++i) {
    c[i].assign(i + 1, 1);
    for (int j = 1; j < i; ++j) c[i][j] = c[i - 1][j - 1] + c[i - 1][j];
  }
  return c[n][k];
}

inline setfam::SetFamily random_family(std::mt19937_64& rng, int n, int max_size) {
  std::uniform_int_distribution<int> size_dist(1, max_size);
  const std::uint64_t full = n >= 64 ? ~0ull : (1ull << n) - 1;
  std::vector<std::uint64_t> masks;
  const int size = size_dist(rng);
  for (int i = 0; i < size; ++i) masks.push_back(rng() & full);
  return setfam::SetFamily::from_masks(n, masks);
}

// Random antichain: sample sets, keep those incomparable with all kept ones.
inline setfam::SetFamily random_antichain(std::mt19937_64& rng, int n, int tries) {
  const std::uint64_t full = (1ull << n) - 1;
  std::vector<std::uint64_t> kept;
  std::binomial_distribution<int> weight(n, 0.5);
  for (int t = 0; t < tries; ++t) {
    std::uint64_t m = 0;
    if (rng() % 3 == 0) {
      m = rng() & full;
    } else {
      // Concentrate near a random level so antichains get large.
      const int w = weight(rng);
      std::vector<int> idx(n);
      for (int i = 0; i < n; ++i) idx[i] = i;
      std::shuffle(idx.begin(), idx.end(), rng);
      for (int i = 0; i < w; ++i) m |= 1ull << idx[i];
    }
    bool ok = true;
    for (auto k : kept) {
      if ((k & ~m) == 0 || (m & ~k) == 0) ok = false;
    }
    if (ok) kept.push_back(m);
  }
  return setfam::SetFamily::from_masks(n, kept);
}

}  // namespace oracle
