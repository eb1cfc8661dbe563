#pragma once

// Explicit small families that shatter every d-subset, plus closed-form
// lower and upper bounds on the least size of such a family.

#include <string>
#include <vector>

#include "setfam/family.hpp"

namespace setfam {

struct ConstructionReport {
  std::string kind;       // "prop2", "corollary", "sep", "prop4"
  SetFamily family{GroundSet(1)};
  int claimed_d = 0;      // every subset of size <= claimed_d is shattered
  Rational size_bound;    // |family| must not exceed this
  bool verified = false;  // result of an exhaustive shattering check
  bool bound_holds = false;
  // Informational asymptotic bound (2^d/d!)(3 log2 n)^d; 0 when not applicable.
  double asymptotic_bound = 0.0;
  int separating_size = 0;  // N of the separating system used, when any
};

struct SeparatingSystem {
  int ground_size = 0;
  int size = 0;                  // N
  std::vector<Subset> labels;    // labels[a] is a subset of [N]
  std::vector<Subset> sets;      // sets[i] = {a : i in labels[a]}, i < N
  std::vector<int> choice;       // choice[b * n + c], -1 on the diagonal
  SetFamily base() const;
  int chosen(int b, int c) const { return choice[b * ground_size + c]; }
};

// First n floor(N/2)-subsets of [N] in lexicographic order.
std::vector<Subset> middle_layer_labels(int big_n, int n);

ConstructionReport construct_prop2(int l);
ConstructionReport construct_corollary_upper(int n);

SeparatingSystem minimal_separating_system(int n);
Subset e_b_c(const SeparatingSystem& sys, int b, int c);
ConstructionReport construct_separating(int n);

ConstructionReport construct_prop4(int n, int d);

int d3_sperner_lower_bound(int n);

// Least k with n <= binom(k, floor(k/2)), moved up by one when k is odd and
// n equals that binomial (both maximum antichains then contain a pair with
// empty joint complement).
int d2_sperner_lower_bound(int n);

// Size k predicted by the conjectured threshold
// binom(k-2, floor((k-1)/2)-1) < n <= binom(k-1, floor(k/2)-1).
int q3_predicted(int n);

struct BoundTerm {
  std::uint64_t value = 0;
  std::string source;
};

struct CdnBounds {
  int d = 0;
  int n = 0;
  std::uint64_t lower = 0;
  std::uint64_t upper = 0;
  std::vector<BoundTerm> lower_terms;  // certified lower bounds
  std::vector<BoundTerm> upper_terms;  // sizes of verified constructions
  std::vector<BoundTerm> conjectural;  // reported only, never used above
  std::vector<std::string> notes;
};

CdnBounds cdn_bounds(int d, int n);

}  // namespace setfam
