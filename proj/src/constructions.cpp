#include "setfam/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace setfam {

namespace {

Subset mask_of(const std::vector<int>& elements) {
  std::uint64_t m = 0;
  for (int e : elements) m |= std::uint64_t{1} << e;
  return Subset(m);
}

int middle(int k) { return k / 2; }

// l-subsets of [2l] that contain 0, lexicographic, first `count` of them.
// Exactly one subset out of every complementary pair.
std::vector<Subset> complementary_representatives(int l, int count) {
  std::vector<Subset> out;
  for (const auto& combo : lex_combinations(2 * l, l)) {
    if (static_cast<int>(out.size()) == count) break;
    if (combo.front() == 0) out.push_back(mask_of(combo));
  }
  return out;
}

// {E + {2l} : E an (l-1)-subset of [2l]}, first `count` in lexicographic order.
std::vector<Subset> apex_columns(int l, int count) {
  std::vector<Subset> out;
  const Subset apex(std::uint64_t{1} << (2 * l));
  for (const auto& combo : lex_combinations(2 * l, l - 1)) {
    if (static_cast<int>(out.size()) == count) break;
    out.push_back(mask_of(combo) | apex);
  }
  return out;
}

}  // namespace

SetFamily SeparatingSystem::base() const {
  return SetFamily(GroundSet(ground_size), sets);
}

std::vector<Subset> middle_layer_labels(int big_n, int n) {
  if (big_n < 1 || big_n > 64) fail(ErrorKind::InvalidInput, "label universe must be 1..64");
  if (n < 0 || static_cast<std::uint64_t>(n) > binom(big_n, middle(big_n)))
    fail(ErrorKind::InvalidInput, "too many labels requested for the middle layer of " +
                                      std::to_string(big_n));
  std::vector<Subset> out;
  out.reserve(n);
  // Lexicographic order of the sorted element lists, generated lazily.
  const int w = middle(big_n);
  std::vector<int> c(w);
  for (int i = 0; i < w; ++i) c[i] = i;
  while (static_cast<int>(out.size()) < n) {
    out.push_back(mask_of(c));
    int i = w - 1;
    while (i >= 0 && c[i] == big_n - w + i) --i;
    if (i < 0) break;
    ++c[i];
    for (int j = i + 1; j < w; ++j) c[j] = c[j - 1] + 1;
  }
  return out;
}

ConstructionReport construct_prop2(int l) {
  if (l < 1) fail(ErrorKind::InvalidInput, "l must be at least 1");
  const std::uint64_t n = binom(2 * l - 1, l - 1);
  if (n > static_cast<std::uint64_t>(kMaxGround))
    fail(ErrorKind::Capacity, "ground size binom(2l-1,l-1) = " + std::to_string(n) +
                                  " exceeds 64");
  const auto columns = complementary_representatives(l, static_cast<int>(n));
  ConstructionReport r{.kind = "prop2",
                       .family = transpose_columns(2 * l, columns),
                       .claimed_d = 2};
  r.size_bound = Rational(2 * l);
  r.verified = n < 2 || shatters_all_of_size(r.family, 2);
  r.bound_holds = Rational(static_cast<long long>(r.family.size())) <= r.size_bound;
  return r;
}

ConstructionReport construct_corollary_upper(int n) {
  if (n < 2) fail(ErrorKind::InvalidInput, "n must be at least 2");
  if (n > kMaxGround) fail(ErrorKind::Capacity, "n exceeds 64");
  int l = 1;
  while (static_cast<std::uint64_t>(n) > binom(2 * l, l - 1) &&
         static_cast<std::uint64_t>(n) > binom(2 * l + 1, l))
    ++l;
  std::vector<Subset> columns;
  int rows = 0;
  if (binom(2 * l - 1, l - 1) < static_cast<std::uint64_t>(n) &&
      static_cast<std::uint64_t>(n) <= binom(2 * l, l - 1)) {
    rows = 2 * l + 1;
    columns = apex_columns(l, n);
  } else {
    rows = 2 * l + 2;
    columns = complementary_representatives(l + 1, n);
  }
  ConstructionReport r{.kind = "corollary",
                       .family = transpose_columns(rows, columns),
                       .claimed_d = 2};
  r.size_bound = Rational(rows);
  r.verified = shatters_all_of_size(r.family, 2);
  r.bound_holds = Rational(static_cast<long long>(r.family.size())) <= r.size_bound;
  return r;
}

SeparatingSystem minimal_separating_system(int n) {
  if (n < 2) fail(ErrorKind::InvalidInput, "a separating system needs n >= 2");
  if (n > kMaxGround) fail(ErrorKind::Capacity, "n exceeds 64");
  int big_n = 1;
  while (binom(big_n, middle(big_n)) < static_cast<std::uint64_t>(n)) ++big_n;

  SeparatingSystem sys;
  sys.ground_size = n;
  sys.size = big_n;
  sys.labels = middle_layer_labels(big_n, n);
  sys.sets.assign(big_n, Subset{});
  for (int i = 0; i < big_n; ++i) {
    std::uint64_t row = 0;
    for (int a = 0; a < n; ++a) {
      if (sys.labels[a].contains(i)) row |= std::uint64_t{1} << a;
    }
    sys.sets[i] = Subset(row);
  }
  sys.choice.assign(static_cast<std::size_t>(n) * n, -1);
  for (int b = 0; b < n; ++b) {
    for (int c = 0; c < n; ++c) {
      if (b == c) continue;
      const std::uint64_t diff = sys.labels[b].minus(sys.labels[c]).mask();
      if (diff == 0) fail(ErrorKind::Internal, "comparable labels in a single layer");
      sys.choice[b * n + c] = std::countr_zero(diff);
    }
  }
  return sys;
}

Subset e_b_c(const SeparatingSystem& sys, int b, int c) {
  const int n = sys.ground_size;
  if (b < 0 || c < 0 || b >= n || c >= n)
    fail(ErrorKind::InvalidInput, "element index out of range");
  if (b == c) fail(ErrorKind::InvalidInput, "e_b_c requires b != c");
  return sys.sets[sys.chosen(b, c)];
}

ConstructionReport construct_separating(int n) {
  const SeparatingSystem sys = minimal_separating_system(n);
  ConstructionReport r{.kind = "sep", .family = sys.base(), .claimed_d = 0};
  r.separating_size = sys.size;
  bool separates = true;
  for (int b = 0; b < n; ++b) {
    for (int c = 0; c < n; ++c) {
      if (b == c) continue;
      const bool found = std::any_of(
          r.family.members().begin(), r.family.members().end(),
          [&](Subset e) { return e.contains(b) && !e.contains(c); });
      separates = separates && found;
    }
  }
  r.verified = separates;
  r.size_bound = Rational(sys.size);
  const int big_n = sys.size;
  const bool minimal = binom(big_n - 1, middle(big_n - 1)) < static_cast<std::uint64_t>(n) &&
                       static_cast<std::uint64_t>(n) <= binom(big_n, middle(big_n));
  // N <= 3 log2 n  <=>  2^N <= n^3.
  const bool log_bound = n < 4 || BigInt(1) << big_n <= BigInt(n) * n * n;
  r.bound_holds = minimal && log_bound &&
                  static_cast<int>(r.family.size()) <= big_n;
  return r;
}

ConstructionReport construct_prop4(int n, int d) {
  if (n < 4) fail(ErrorKind::InvalidInput, "construction requires n >= 4");
  if (n > kMaxGround) fail(ErrorKind::Capacity, "n exceeds 64");
  if (d < 3 || d >= n) fail(ErrorKind::InvalidInput, "construction requires 3 <= d < n");
  if (d > 6) fail(ErrorKind::Capacity, "construction enumerates d-subsets only for d <= 6");

  const SeparatingSystem sys = minimal_separating_system(n);
  const std::uint64_t full = low_bits(n);
  std::vector<std::uint64_t> built;

  std::vector<int> chosen(d);
  for (std::uint64_t a = low_bits(d);; a = next_same_weight(a)) {
    int j = 0;
    for (std::uint64_t m = a; m; m &= m - 1) chosen[j++] = std::countr_zero(m);
    for (std::uint64_t in_b = 0; in_b < (std::uint64_t{1} << d); ++in_b) {
      std::uint64_t e = full;  // empty intersection over C
      std::uint64_t b_mask = 0, c_mask = 0;
      for (int ci = 0; ci < d; ++ci) {
        if ((in_b >> ci) & 1u) {
          b_mask |= std::uint64_t{1} << chosen[ci];
          continue;
        }
        c_mask |= std::uint64_t{1} << chosen[ci];
        std::uint64_t u = 0;  // empty union over B
        for (int bi = 0; bi < d; ++bi) {
          if ((in_b >> bi) & 1u) u |= sys.sets[sys.chosen(chosen[bi], chosen[ci])].mask();
        }
        e &= u;
      }
      if ((e & b_mask) != b_mask || (e & c_mask) != 0)
        fail(ErrorKind::Internal, "E_B^C does not contain B or meets C");
      built.push_back(e);
    }
    if (a == (full & ~low_bits(n - d))) break;
  }

  ConstructionReport r{.kind = "prop4",
                       .family = SetFamily::from_masks(n, built),
                       .claimed_d = d};
  r.separating_size = sys.size;
  r.size_bound = Rational(binom_big(sys.size, d) << d);
  r.verified = shatters_all_of_size(r.family, d);
  r.bound_holds = Rational(static_cast<long long>(r.family.size())) <= r.size_bound;
  double fact = 1;
  for (int i = 2; i <= d; ++i) fact *= i;
  r.asymptotic_bound = std::ldexp(1.0, d) / fact * std::pow(3.0 * std::log2(n), d);
  return r;
}

int d3_sperner_lower_bound(int n) {
  if (n < 2) fail(ErrorKind::InvalidInput, "n must be at least 2");
  const std::uint64_t pairs = binom(n, 2);
  int k = 0;
  while (binom(k, middle(k)) < pairs) ++k;
  return k;
}

int d2_sperner_lower_bound(int n) {
  if (n < 1) fail(ErrorKind::InvalidInput, "n must be at least 1");
  const std::uint64_t un = static_cast<std::uint64_t>(n);
  int k = 0;
  while (true) {
    const std::uint64_t width = binom(k, middle(k));
    if (un < width || (un == width && k % 2 == 0)) return k;
    ++k;
  }
}

int q3_predicted(int n) {
  if (n < 2) fail(ErrorKind::InvalidInput, "n must be at least 2");
  const auto binom_or_zero = [](int a, int b) -> std::uint64_t {
    return b < 0 ? 0 : binom(a, b);
  };
  const std::uint64_t un = static_cast<std::uint64_t>(n);
  for (int k = 2; k < 200; ++k) {
    if (binom_or_zero(k - 2, (k - 1) / 2 - 1) < un && un <= binom_or_zero(k - 1, k / 2 - 1))
      return k;
  }
  fail(ErrorKind::Internal, "threshold search did not terminate");
}

CdnBounds cdn_bounds(int d, int n) {
  if (d < 1 || n < d) fail(ErrorKind::InvalidInput, "cdn_bounds requires 1 <= d <= n");
  if (n > kMaxGround) fail(ErrorKind::Capacity, "n exceeds 64");
  CdnBounds b{.d = d, .n = n};

  b.lower_terms.push_back({std::uint64_t{1} << d, "power-of-two"});
  if (d >= 2) {
    b.lower_terms.push_back({static_cast<std::uint64_t>(ceil_log2(n)), "dual-injectivity"});
    // Shattering all d-subsets implies shattering all 2-subsets.
    b.lower_terms.push_back(
        {static_cast<std::uint64_t>(d2_sperner_lower_bound(n)), "dual-antichain"});
  }
  if (d >= 3)
    b.lower_terms.push_back(
        {static_cast<std::uint64_t>(d3_sperner_lower_bound(n)), "pair-intersection-antichain"});
  if (d == 2)
    b.conjectural.push_back({static_cast<std::uint64_t>(q3_predicted(n)), "threshold-conjecture"});

  b.upper_terms.push_back(
      {n >= 64 ? ~std::uint64_t{0} : std::uint64_t{1} << n, "power-set"});
  if (d == 1) b.upper_terms.push_back({2, "empty-and-full"});
  if (d == 2) {
    const auto r = construct_corollary_upper(n);
    if (r.verified) b.upper_terms.push_back({r.family.size(), "complementary-pairs"});
  }
  if (d >= 3 && d <= 6 && d < n && n >= 4) {
    if (binom(n, d) <= 2'000'000) {
      const auto r = construct_prop4(n, d);
      if (r.verified) b.upper_terms.push_back({r.family.size(), "separating-intersections"});
    } else {
      b.notes.push_back("separating-intersections construction skipped: too many d-subsets");
    }
  }

  for (const auto& t : b.lower_terms) b.lower = std::max(b.lower, t.value);
  b.upper = b.upper_terms.front().value;
  for (const auto& t : b.upper_terms) b.upper = std::min(b.upper, t.value);
  if (b.lower > b.upper) fail(ErrorKind::Internal, "lower bound exceeds upper bound");
  return b;
}

}  // namespace setfam
