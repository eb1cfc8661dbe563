#include "setfam/combinatorics.hpp"

#include <limits>

#include "setfam/error.hpp"

namespace setfam {

std::uint64_t binom(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 acc = 1;
  for (int i = 1; i <= k; ++i) {
    acc = acc * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    if (acc > std::numeric_limits<std::uint64_t>::max())
      return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(acc);
}

BigInt binom_big(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt acc = 1;
  for (int i = 1; i <= k; ++i) acc = acc * (n - k + i) / i;
  return acc;
}

std::vector<std::uint64_t> masks_of_weight(int n, int w) {
  std::vector<std::uint64_t> out;
  if (w < 0 || w > n) return out;
  if (w == 0) return {0};
  const std::uint64_t limit = low_bits(n);
  std::uint64_t x = low_bits(w);
  while (true) {
    out.push_back(x);
    if (x == (limit & ~low_bits(n - w))) break;
    x = next_same_weight(x);
  }
  return out;
}

std::vector<std::vector<int>> lex_combinations(int n, int w) {
  std::vector<std::vector<int>> out;
  if (w < 0 || w > n) return out;
  std::vector<int> c(w);
  for (int i = 0; i < w; ++i) c[i] = i;
  while (true) {
    out.push_back(c);
    int i = w - 1;
    while (i >= 0 && c[i] == n - w + i) --i;
    if (i < 0) break;
    ++c[i];
    for (int j = i + 1; j < w; ++j) c[j] = c[j - 1] + 1;
  }
  return out;
}

std::uint64_t extract_bits(std::uint64_t x, std::uint64_t sel) {
  std::uint64_t out = 0;
  int pos = 0;
  while (sel) {
    const int b = std::countr_zero(sel);
    out |= ((x >> b) & 1u) << pos++;
    sel &= sel - 1;
  }
  return out;
}

int ceil_log2(std::uint64_t n) {
  if (n == 0) fail(ErrorKind::InvalidInput, "ceil_log2 of zero");
  return n == 1 ? 0 : 64 - std::countl_zero(n - 1);
}

std::string to_fraction_string(const Rational& q) {
  return boost::multiprecision::numerator(q).str() + "/" +
         boost::multiprecision::denominator(q).str();
}

}  // namespace setfam
