#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "setfam/explore.hpp"

using namespace setfam;

namespace {

// All inclusion-maximal families of VC-dimension <= d over n <= 3 elements.
std::set<std::vector<std::uint64_t>> brute_maximal(int d, int n) {
  const std::uint64_t universe = std::uint64_t{1} << n;
  std::vector<std::vector<std::uint64_t>> ok;
  std::set<std::uint64_t> picks;
  for (std::uint64_t pick = 1; pick < (std::uint64_t{1} << universe); ++pick) {
    std::vector<std::uint64_t> masks;
    for (std::uint64_t m = 0; m < universe; ++m)
      if ((pick >> m) & 1u) masks.push_back(m);
    if (oracle::vc_dimension(SetFamily::from_masks(n, masks)) <= d) picks.insert(pick);
  }
  std::set<std::vector<std::uint64_t>> out;
  for (std::uint64_t pick : picks) {
    bool maximal = true;
    for (std::uint64_t m = 0; m < universe && maximal; ++m)
      if (!((pick >> m) & 1u) && picks.count(pick | (std::uint64_t{1} << m))) maximal = false;
    if (!maximal) continue;
    std::vector<std::uint64_t> masks;
    for (std::uint64_t m = 0; m < universe; ++m)
      if ((pick >> m) & 1u) masks.push_back(m);
    out.insert(masks);
  }
  return out;
}

}  // namespace

TEST_CASE("maximal census matches brute enumeration") {
  for (int n = 1; n <= 3; ++n)
    for (int d = 0; d <= n; ++d) {
      const auto census = explore_maximal(d, n);
      CHECK(census.complete);
      CHECK(census.inconsistencies == 0);
      const auto want = brute_maximal(d, n);
      CHECK(census.families_found == want.size());
      std::set<std::vector<std::uint64_t>> got;
      for (const auto& r : census.records) {
        CHECK(r.verified);
        std::vector<std::uint64_t> masks;
        for (Subset s : r.family.members()) masks.push_back(s.mask());
        got.insert(masks);
      }
      CHECK(got == want);
    }
}

TEST_CASE("maximal census special cases") {
  const auto c12 = explore_maximal(1, 2);
  for (const auto& r : c12.records) CHECK(r.size == 3);
  CHECK(c12.counterexample_candidates == 0);

  for (int n = 1; n <= 4; ++n) {
    const auto c = explore_maximal(n, n);
    REQUIRE(c.records.size() == 1);
    CHECK(c.records[0].family == SetFamily::power_set(n));
    CHECK(c.records[0].is_maximum);
  }

  MaximalOptions tiny;
  tiny.node_budget = 3;
  CHECK_FALSE(explore_maximal(1, 4, tiny).complete);
}

TEST_CASE("randomized completion is seeded") {
  MaximalOptions opt;
  opt.mode = ExploreMode::Random;
  opt.seed = 42;
  opt.node_budget = 20000;
  const auto a = explore_maximal(2, 6, opt);
  const auto b = explore_maximal(2, 6, opt);
  CHECK(a.families_found == b.families_found);
  CHECK(a.size_histogram == b.size_histogram);
  CHECK(a.inconsistencies == 0);
  CHECK(a.seed == 42);
  for (const auto& r : a.records) CHECK(r.verified);
  CHECK_THROWS_AS(explore_maximal(2, 7), Error);
}

TEST_CASE("verify_maximal") {
  CHECK(verify_maximal(SetFamily::levels_up_to(4, 2), 2));
  CHECK_FALSE(verify_maximal(SetFamily::levels_up_to(4, 1).with(Subset(0)), 0));
  CHECK_FALSE(verify_maximal(SetFamily::level(4, 1), 1));
}

TEST_CASE("triple condition explorer") {
  CHECK(explore_q5(1).size == 2);
  CHECK(explore_q5(2).size == 2);
  for (int k = 1; k <= 3; ++k) {
    const std::uint64_t universe = std::uint64_t{1} << k;
    std::size_t best = 0;
    for (std::uint64_t pick = 1; pick < (std::uint64_t{1} << universe); ++pick) {
      std::vector<std::uint64_t> masks;
      for (std::uint64_t m = 0; m < universe; ++m)
        if ((pick >> m) & 1u) masks.push_back(m);
      const SetFamily f = SetFamily::from_masks(k, masks);
      if (q5_condition_holds(f)) best = std::max(best, f.size());
    }
    const auto rec = explore_q5(k);
    CHECK(rec.exact);
    CHECK(rec.size == best);
    CHECK(q5_condition_holds(rec.best));
  }
  const auto r4 = explore_q5(4);
  CHECK(r4.exact);
  CHECK(r4.complete);
  CHECK(q5_condition_holds(r4.best));

  Q5Options h;
  h.exact = false;
  h.seed = 7;
  h.node_budget = 20000;
  const auto a = explore_q5(5, h);
  const auto b = explore_q5(5, h);
  CHECK(a.best == b.best);
  CHECK_FALSE(a.exact);
  CHECK(a.size <= explore_q5(5).size);
  CHECK_THROWS_AS(explore_q5(6), Error);
}
