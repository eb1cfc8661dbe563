#pragma once

// Exact feasibility search for "k sets over n elements shattering every
// d-subset", carried out on the dual side: n columns over k rows such that
// every d columns show all 2^d sign patterns.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "setfam/constructions.hpp"
#include "setfam/family.hpp"

namespace setfam {

inline constexpr int kMaxSearchRows = 30;

enum class SearchStatus { Feasible, Infeasible, BudgetExhausted };

const char* to_string(SearchStatus s);

struct SearchOptions {
  bool use_symmetry = true;
  std::uint64_t node_budget = 0;  // 0 = unlimited
  int threads = 1;
};

struct Certificate {
  std::uint64_t nodes = 0;
  std::uint64_t candidates = 0;  // admissible columns after static filtering
  std::string symmetry_config;
  double wall_seconds = 0.0;
};

struct SearchOutcome {
  int d = 0, n = 0, k = 0;
  SearchStatus status = SearchStatus::Infeasible;
  std::optional<SetFamily> witness;
  std::vector<Subset> columns;  // dual witness, one subset of [k] per element
  int witness_index = -1;       // index_of(witness) when feasible
  Certificate certificate;
};

SearchOutcome feasible(int d, int n, int k, const SearchOptions& options = {});
SearchOutcome feasible(int d, int n, int k, bool use_symmetry);

// Plain enumeration of all k-subsets of 2^S, checked with index_of. Oracle
// for the pruned search; capacity error above 10^7 candidate families.
SearchOutcome brute_feasible(int d, int n, int k);

struct KStep {
  int k = 0;
  SearchStatus status = SearchStatus::Infeasible;
  std::uint64_t nodes = 0;
  double wall_seconds = 0.0;
};

struct CdnResult {
  int d = 0, n = 0;
  bool resolved = false;       // false when a budget or kmax stopped the scan
  int value = 0;
  std::optional<SetFamily> witness;
  int witness_index = -1;
  bool lower_certified = false;  // value-1 refuted by exhaustive search
  std::string lower_source;      // "search" or the closed-form bound's source
  CdnBounds bounds;
  std::vector<KStep> steps;
};

struct CdnOptions {
  SearchOptions search;
  std::optional<int> kmax;
  // Also refute bounds.lower - 1 by search when the scan stops at bounds.lower.
  bool confirm_lower = false;
};

CdnResult exact_cdn(int d, int n, const CdnOptions& options = {});

struct Q3Row {
  int n = 0;
  int predicted = 0;
  CdnResult exact;
  bool agree = false;
};

std::vector<Q3Row> verify_q3(int n_max, const SearchOptions& options = {});

}  // namespace setfam
