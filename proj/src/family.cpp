#include "setfam/family.hpp"

#include <algorithm>
#include <string>

namespace setfam {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "invalid-input";
    case ErrorKind::Capacity: return "capacity";
    case ErrorKind::UndefinedInvariant: return "undefined-invariant";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::BudgetExhausted: return "budget-exhausted";
    case ErrorKind::Internal: return "internal";
  }
  return "unknown";
}

GroundSet::GroundSet(int size) : size_(size) {
  if (size < 1) fail(ErrorKind::InvalidInput, "ground size must be at least 1");
  if (size > kMaxGround)
    fail(ErrorKind::Capacity, "ground size " + std::to_string(size) + " exceeds 64");
}

Subset Subset::of(std::initializer_list<int> elements) {
  std::uint64_t m = 0;
  for (int e : elements) {
    if (e < 0 || e >= kMaxGround)
      fail(ErrorKind::InvalidInput, "element index out of range: " + std::to_string(e));
    m |= std::uint64_t{1} << e;
  }
  return Subset(m);
}

std::vector<int> Subset::elements() const {
  std::vector<int> out;
  for (std::uint64_t m = mask_; m; m &= m - 1) out.push_back(std::countr_zero(m));
  return out;
}

SetFamily::SetFamily(GroundSet ground, std::vector<Subset> members)
    : ground_(ground), members_(std::move(members)) {
  for (Subset s : members_) {
    if (!s.valid_over(ground_))
      fail(ErrorKind::InvalidInput, "member has elements outside the ground set");
  }
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

SetFamily SetFamily::from_masks(int ground_size, std::span<const std::uint64_t> masks) {
  std::vector<Subset> members;
  members.reserve(masks.size());
  for (std::uint64_t m : masks) members.emplace_back(m);
  return SetFamily(GroundSet(ground_size), std::move(members));
}

SetFamily SetFamily::power_set(int ground_size) {
  GroundSet g(ground_size);
  if (ground_size > 20)
    fail(ErrorKind::Capacity, "power set materialization limited to 20 elements");
  std::vector<Subset> members;
  for (std::uint64_t m = 0; m <= g.full_mask(); ++m) members.emplace_back(m);
  return SetFamily(g, std::move(members));
}

SetFamily SetFamily::levels_up_to(int ground_size, int d) {
  GroundSet g(ground_size);
  std::vector<Subset> members;
  for (int w = 0; w <= std::min(d, ground_size); ++w) {
    if (binom(ground_size, w) > (1u << 22))
      fail(ErrorKind::Capacity, "level too large to materialize");
    for (std::uint64_t m : masks_of_weight(ground_size, w)) members.emplace_back(m);
  }
  return SetFamily(g, std::move(members));
}

SetFamily SetFamily::level(int ground_size, int w) {
  GroundSet g(ground_size);
  if (binom(ground_size, w) > (1u << 22))
    fail(ErrorKind::Capacity, "level too large to materialize");
  std::vector<Subset> members;
  for (std::uint64_t m : masks_of_weight(ground_size, w)) members.emplace_back(m);
  return SetFamily(g, std::move(members));
}

bool SetFamily::contains(Subset s) const {
  return std::binary_search(members_.begin(), members_.end(), s);
}

SetFamily SetFamily::with(Subset s) const {
  std::vector<Subset> members = members_;
  members.push_back(s);
  return SetFamily(ground_, std::move(members));
}

namespace {

void require_valid(const SetFamily& f, Subset a) {
  if (!a.valid_over(f.ground()))
    fail(ErrorKind::InvalidInput, "subset has elements outside the ground set");
}

void require_arity(Subset a) {
  if (a.size() > kMaxShatterArity)
    fail(ErrorKind::Capacity, "shattering test limited to subsets of size <= 25");
}

void require_nonempty(const SetFamily& f, const char* what) {
  if (f.empty())
    fail(ErrorKind::UndefinedInvariant,
         std::string(what) + " is undefined for the empty family");
}

// Bit p of the result is set iff some member meets A in the pattern p
// (patterns are A-relative: bit j of p is the j-th element of A).
std::vector<bool> trace_patterns(const SetFamily& f, Subset a) {
  std::vector<bool> seen(std::size_t{1} << a.size(), false);
  for (Subset e : f.members()) seen[extract_bits(e.mask(), a.mask())] = true;
  return seen;
}

// Inverse of extract_bits: spread the low bits of p onto the positions of sel.
std::uint64_t deposit_bits(std::uint64_t p, std::uint64_t sel) {
  std::uint64_t out = 0;
  for (int j = 0; sel; ++j, sel &= sel - 1) {
    if ((p >> j) & 1u) out |= sel & (~sel + 1);
  }
  return out;
}

bool shatters_unchecked(const SetFamily& f, Subset a) {
  const int w = a.size();
  if (w < 63 && f.size() < (std::uint64_t{1} << w)) return false;
  std::vector<bool> seen(std::size_t{1} << w, false);
  std::size_t distinct = 0;
  for (Subset e : f.members()) {
    const std::uint64_t p = extract_bits(e.mask(), a.mask());
    if (!seen[p]) {
      seen[p] = true;
      if (++distinct == seen.size()) return true;
    }
  }
  return false;
}

bool all_of_size_shattered(const SetFamily& f, int w) {
  const int n = f.ground().size();
  if (w == 0) return true;
  if (w < 63 && f.size() < (std::uint64_t{1} << w)) return false;
  const std::uint64_t last = low_bits(n) & ~low_bits(n - w);
  for (std::uint64_t m = low_bits(w);; m = next_same_weight(m)) {
    if (!shatters_unchecked(f, Subset(m))) return false;
    if (m == last) return true;
  }
}

}  // namespace

SetFamily trace(const SetFamily& f, Subset a) {
  require_valid(f, a);
  std::vector<Subset> members;
  members.reserve(f.size());
  for (Subset e : f.members()) members.push_back(e & a);
  return SetFamily(f.ground(), std::move(members));
}

bool shatters(const SetFamily& f, Subset a) {
  require_valid(f, a);
  require_arity(a);
  return shatters_unchecked(f, a);
}

std::optional<Subset> shatter_gap(const SetFamily& f, Subset a) {
  require_valid(f, a);
  require_arity(a);
  const auto seen = trace_patterns(f, a);
  // Relative patterns in ascending order map to ascending ambient masks.
  for (std::size_t p = 0; p < seen.size(); ++p) {
    if (!seen[p]) return Subset(deposit_bits(p, a.mask()));
  }
  return std::nullopt;
}

int vc_dimension(const SetFamily& f) {
  require_nonempty(f, "VC-dimension");
  const int n = f.ground().size();
  // Shattered sets are closed downward, so level w+1 candidates are
  // one-element extensions of shattered w-sets.
  std::vector<std::uint64_t> level = {0};
  int best = 0;
  for (int w = 1; w <= n && !level.empty(); ++w) {
    if (w > kMaxShatterArity || (w < 63 && f.size() < (std::uint64_t{1} << w))) break;
    std::vector<std::uint64_t> next;
    for (std::uint64_t base : level) {
      const int top = base ? 64 - std::countl_zero(base) : 0;
      for (int e = top; e < n; ++e) {
        const std::uint64_t cand = base | (std::uint64_t{1} << e);
        if (shatters_unchecked(f, Subset(cand))) next.push_back(cand);
      }
    }
    if (!next.empty()) best = w;
    level = std::move(next);
  }
  return best;
}

int index_of(const SetFamily& f) {
  require_nonempty(f, "index");
  const int n = f.ground().size();
  int d = 0;
  while (d < n && all_of_size_shattered(f, d + 1)) ++d;
  return d;
}

BigInt sauer_bound(int d, int n) {
  if (d < 0 || n < 0 || d > n)
    fail(ErrorKind::InvalidInput, "sauer_bound requires 0 <= d <= n");
  BigInt sum = 0;
  for (int i = 0; i <= d; ++i) sum += binom_big(n, i);
  return sum;
}

bool sauer_check(const SetFamily& f, int d) {
  const int n = f.ground().size();
  const BigInt bound = sauer_bound(d, n);
  if (vc_dimension(f) > d) return true;
  return BigInt(f.size()) <= bound;
}

DualFamily dualize(const SetFamily& f) {
  require_nonempty(f, "dualization");
  if (f.size() > kMaxDualRows)
    fail(ErrorKind::Capacity, "dualization limited to families of at most 64 sets");
  const int n = f.ground().size();
  DualFamily dual;
  dual.family_size = static_cast<int>(f.size());
  dual.columns.assign(n, Subset{});
  dual.labels.resize(n);
  for (int a = 0; a < n; ++a) {
    std::uint64_t col = 0;
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (f.members()[i].contains(a)) col |= std::uint64_t{1} << i;
    }
    dual.columns[a] = Subset(col);
    dual.labels[a] = a;
  }
  return dual;
}

bool shatters_all_of_size(const SetFamily& f, int w) {
  if (w < 0 || w > f.ground().size())
    fail(ErrorKind::InvalidInput, "subset size out of range");
  if (w > kMaxShatterArity)
    fail(ErrorKind::Capacity, "shattering test limited to subsets of size <= 25");
  return all_of_size_shattered(f, w);
}

SetFamily transpose_columns(int k, std::span<const Subset> columns) {
  if (k < 1 || k > 64) fail(ErrorKind::InvalidInput, "row count must be in 1..64");
  const int n = static_cast<int>(columns.size());
  std::vector<Subset> rows;
  rows.reserve(k);
  for (int i = 0; i < k; ++i) {
    std::uint64_t row = 0;
    for (int a = 0; a < n; ++a) {
      if (columns[a].contains(i)) row |= std::uint64_t{1} << a;
    }
    rows.emplace_back(row);
  }
  return SetFamily(GroundSet(n), std::move(rows));
}

SetFamily columns_as_family(const DualFamily& dual) {
  return SetFamily(GroundSet(dual.family_size), dual.columns);
}

bool shatters_dual(const DualFamily& dual, std::span<const int> columns) {
  const int width = static_cast<int>(dual.columns.size());
  std::uint64_t seen = 0;
  for (int c : columns) {
    if (c < 0 || c >= width)
      fail(ErrorKind::InvalidInput, "column index out of range: " + std::to_string(c));
    if ((seen >> c) & 1u) fail(ErrorKind::InvalidInput, "repeated column index");
    seen |= std::uint64_t{1} << c;
  }
  const int m = static_cast<int>(columns.size());
  if (m > kMaxShatterArity)
    fail(ErrorKind::Capacity, "shattering test limited to subsets of size <= 25");
  const std::uint64_t rows = low_bits(dual.family_size);
  // Partition (B, C): bit j of `in_b` puts columns[j] in B, otherwise in C.
  for (std::uint64_t in_b = 0; in_b < (std::uint64_t{1} << m); ++in_b) {
    std::uint64_t cell = rows;
    for (int j = 0; j < m && cell; ++j) {
      const std::uint64_t col = dual.columns[columns[j]].mask();
      cell &= ((in_b >> j) & 1u) ? col : ~col;
    }
    if ((cell & rows) == 0) return false;
  }
  return true;
}

bool pairwise_ok(Subset x, Subset y, int k) {
  if (k < 1 || k > 64) fail(ErrorKind::InvalidInput, "universe size must be in 1..64");
  const std::uint64_t all = low_bits(k);
  if ((x.mask() | y.mask()) & ~all)
    fail(ErrorKind::InvalidInput, "subset has elements outside the universe");
  const std::uint64_t a = x.mask(), b = y.mask();
  return (a & b) && (a & ~b & all) && (~a & b & all) && (~a & ~b & all);
}

bool is_sperner(const SetFamily& f) {
  const auto& m = f.members();
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (i != j && m[i].is_subset_of(m[j])) return false;
    }
  }
  return true;
}

LevelProfile level_profile(const SetFamily& f) {
  LevelProfile p;
  p.counts.assign(f.ground().size() + 1, 0);
  for (Subset s : f.members()) ++p.counts[s.size()];
  return p;
}

Rational lym_sum(const SetFamily& f) {
  const int n = f.ground().size();
  const LevelProfile p = level_profile(f);
  Rational sum = 0;
  for (int w = 0; w <= n; ++w) {
    if (p.counts[w]) sum += Rational(BigInt(p.counts[w]), binom_big(n, w));
  }
  return sum;
}

}  // namespace setfam
