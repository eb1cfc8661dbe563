#pragma once

// Desk-scale explorers: inclusion-maximal families of bounded VC-dimension,
// and large families with A∩B ⊄ C for pairwise-distinct members.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "setfam/family.hpp"

namespace setfam {

struct MaximalFamilyRecord {
  SetFamily family;
  int d = 0;
  std::size_t size = 0;
  bool is_maximum = false;  // size == sauer_bound(d, n)
  bool verified = false;    // vc <= d and every augmentation exceeds d
};

enum class ExploreMode { Exhaustive, Random };

struct MaximalOptions {
  ExploreMode mode = ExploreMode::Exhaustive;
  std::uint64_t node_budget = 1'000'000;
  std::uint64_t seed = 0;
  std::size_t max_records = 1000;
};

struct MaximalCensus {
  int d = 0, n = 0;
  ExploreMode mode = ExploreMode::Exhaustive;
  std::uint64_t seed = 0;
  std::uint64_t nodes = 0;
  bool complete = false;  // exhaustive mode finished within the budget
  BigInt sauer;
  std::uint64_t families_found = 0;
  std::map<std::size_t, std::uint64_t> size_histogram;
  std::vector<MaximalFamilyRecord> records;  // first max_records found
  std::uint64_t counterexample_candidates = 0;  // maximal but smaller than sauer
  std::uint64_t inconsistencies = 0;            // records failing re-verification
};

MaximalCensus explore_maximal(int d, int n, const MaximalOptions& options = {});

// Independent check used to certify explorer output.
bool verify_maximal(const SetFamily& f, int d);

struct Q5Options {
  bool exact = true;
  std::uint64_t node_budget = 5'000'000;
  std::uint64_t seed = 0;
};

struct Q5Record {
  int k = 0;
  SetFamily best{GroundSet(1)};
  std::size_t size = 0;
  bool exact = false;     // maximality certified by exhaustive branch and bound
  bool complete = true;   // false when the budget cut an exact run short
  std::uint64_t nodes = 0;
  std::uint64_t seed = 0;
  std::string interpretation = "pairwise-distinct triples";
};

Q5Record explore_q5(int k, const Q5Options& options = {});

// True iff A∩B ⊄ C for all pairwise-distinct members A, B, C.
bool q5_condition_holds(const SetFamily& f);

}  // namespace setfam
