#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace setfam {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Saturates at UINT64_MAX; exact for every n <= 67.
std::uint64_t binom(int n, int k);
BigInt binom_big(int n, int k);

inline int popcount(std::uint64_t x) { return std::popcount(x); }

// Mask with the low `n` bits set, valid for 0 <= n <= 64.
constexpr std::uint64_t low_bits(int n) {
  return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

// Next mask with the same popcount (Gosper). Caller stops once the result
// leaves the intended range.
constexpr std::uint64_t next_same_weight(std::uint64_t x) {
  const std::uint64_t c = x & (~x + 1);
  const std::uint64_t r = x + c;
  return (((r ^ x) >> 2) / c) | r;
}

// All w-subsets of [n] as masks in ascending numeric order.
std::vector<std::uint64_t> masks_of_weight(int n, int w);

// All w-subsets of [n] in lexicographic order of their sorted element lists.
std::vector<std::vector<int>> lex_combinations(int n, int w);

// Compress the bits of `x` selected by `sel` into the low bits (software pext).
std::uint64_t extract_bits(std::uint64_t x, std::uint64_t sel);

// ceil(log2 n) for n >= 1.
int ceil_log2(std::uint64_t n);

std::string to_fraction_string(const Rational& q);

}  // namespace setfam
