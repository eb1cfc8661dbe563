#pragma once

// Set families over a ground set of at most 64 elements, with exact
// shattering, VC-dimension, index, duality and Sperner/LYM utilities.

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

#include "setfam/combinatorics.hpp"
#include "setfam/error.hpp"

namespace setfam {

inline constexpr int kMaxGround = 64;
inline constexpr int kMaxShatterArity = 25;
inline constexpr int kMaxDualRows = 64;

class GroundSet {
 public:
  explicit GroundSet(int size);

  int size() const { return size_; }
  std::uint64_t full_mask() const { return low_bits(size_); }
  bool operator==(const GroundSet&) const = default;

 private:
  int size_;
};

// A subset of some ground set, as a bitset. Validity against a particular
// ground is checked where the pairing happens.
class Subset {
 public:
  constexpr Subset() = default;
  constexpr explicit Subset(std::uint64_t mask) : mask_(mask) {}
  static Subset of(std::initializer_list<int> elements);

  constexpr std::uint64_t mask() const { return mask_; }
  int size() const { return popcount(mask_); }
  bool empty() const { return mask_ == 0; }
  bool contains(int e) const { return (mask_ >> e) & 1u; }
  bool is_subset_of(Subset other) const { return (mask_ & ~other.mask_) == 0; }
  bool valid_over(const GroundSet& g) const {
    return (mask_ & ~g.full_mask()) == 0;
  }
  std::vector<int> elements() const;

  Subset operator&(Subset o) const { return Subset(mask_ & o.mask_); }
  Subset operator|(Subset o) const { return Subset(mask_ | o.mask_); }
  Subset minus(Subset o) const { return Subset(mask_ & ~o.mask_); }

  constexpr auto operator<=>(const Subset&) const = default;

 private:
  std::uint64_t mask_ = 0;
};

class SetFamily {
 public:
  explicit SetFamily(GroundSet ground) : ground_(ground) {}
  // Sorts and deduplicates; throws InvalidInput when a member leaves the ground.
  SetFamily(GroundSet ground, std::vector<Subset> members);
  static SetFamily from_masks(int ground_size, std::span<const std::uint64_t> masks);
  static SetFamily power_set(int ground_size);
  // All subsets of cardinality at most `d`.
  static SetFamily levels_up_to(int ground_size, int d);
  static SetFamily level(int ground_size, int w);

  const GroundSet& ground() const { return ground_; }
  const std::vector<Subset>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  bool contains(Subset s) const;

  // Returns a copy with `s` added (no-op when present).
  SetFamily with(Subset s) const;

  bool operator==(const SetFamily&) const = default;

 private:
  GroundSet ground_;
  std::vector<Subset> members_;
};

// Column a holds the indices i of the members containing element a.
struct DualFamily {
  int family_size = 0;
  std::vector<Subset> columns;
  std::vector<int> labels;
};

struct LevelProfile {
  std::vector<std::uint64_t> counts;  // counts[w] = members of cardinality w
};

SetFamily trace(const SetFamily& f, Subset a);
bool shatters(const SetFamily& f, Subset a);
// First pattern P subset of A (ascending mask order) missing from the trace.
std::optional<Subset> shatter_gap(const SetFamily& f, Subset a);
int vc_dimension(const SetFamily& f);
int index_of(const SetFamily& f);
// True iff every w-subset of the ground is shattered.
bool shatters_all_of_size(const SetFamily& f, int w);

BigInt sauer_bound(int d, int n);
bool sauer_check(const SetFamily& f, int d);

DualFamily dualize(const SetFamily& f);
// Treats the columns of `dual` as a family over [family_size].
SetFamily columns_as_family(const DualFamily& dual);
// Rows of a k-row column matrix: member i holds the elements whose column
// has bit i. Ground size is the number of columns; duplicate rows collapse.
SetFamily transpose_columns(int k, std::span<const Subset> columns);
bool shatters_dual(const DualFamily& dual, std::span<const int> columns);

bool pairwise_ok(Subset x, Subset y, int k);
bool is_sperner(const SetFamily& f);
LevelProfile level_profile(const SetFamily& f);
Rational lym_sum(const SetFamily& f);

}  // namespace setfam
