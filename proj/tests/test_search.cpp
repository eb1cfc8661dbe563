#include <doctest.h>

#include <algorithm>

#include "oracles.hpp"
#include "setfam/search.hpp"

using namespace setfam;

TEST_CASE("C(2,n) for small n") {
  const int expected[] = {0, 0, 4, 4, 5, 6, 6, 6, 6, 6, 6};
  for (int n = 2; n <= 10; ++n) {
    const CdnResult r = exact_cdn(2, n);
    REQUIRE(r.resolved);
    CHECK(r.value == expected[n]);
    REQUIRE(r.witness);
    CHECK(r.witness->size() == static_cast<std::size_t>(r.value));
    CHECK(oracle::index_of(*r.witness) >= 2);
  }
}

TEST_CASE("C(1,n) is two") {
  for (int n = 1; n <= 8; ++n) {
    const CdnResult r = exact_cdn(1, n);
    REQUIRE(r.resolved);
    CHECK(r.value == 2);
  }
}

TEST_CASE("immediate answers") {
  CHECK(feasible(2, 5, 3).status == SearchStatus::Infeasible);
  CHECK(feasible(3, 3, 8).status == SearchStatus::Feasible);
  CHECK(feasible(1, 2, 5).status == SearchStatus::Infeasible);  // more than 2^n sets
  CHECK(feasible(2, 5, 5).status == SearchStatus::Infeasible);
  CHECK(brute_feasible(2, 5, 5).status == SearchStatus::Infeasible);
  CHECK(feasible(2, 5, 6).status == SearchStatus::Feasible);
}

TEST_CASE("pruned search agrees with brute enumeration") {
  for (int d = 1; d <= 2; ++d)
    for (int n = d; n <= 4; ++n)
      for (int k = 1; k <= 5; ++k) {
        const auto brute = brute_feasible(d, n, k);
        const auto fast = feasible(d, n, k);
        const auto plain = feasible(d, n, k, false);
        INFO("d=" << d << " n=" << n << " k=" << k);
        CHECK(fast.status == brute.status);
        CHECK(plain.status == brute.status);
        if (fast.status == SearchStatus::Feasible) {
          REQUIRE(fast.witness);
          CHECK(fast.witness->size() == static_cast<std::size_t>(k));
          CHECK(oracle::index_of(*fast.witness) >= d);
          CHECK(fast.witness_index == oracle::index_of(*fast.witness));
          CHECK(fast.columns.size() == static_cast<std::size_t>(n));
        }
      }
}

TEST_CASE("monotonicity") {
  for (int n = 2; n <= 6; ++n) {
    bool seen = false;
    for (int k = 1; k <= std::min(8, 1 << n); ++k) {
      const bool ok = feasible(2, n, k).status == SearchStatus::Feasible;
      if (seen) CHECK(ok);
      seen = seen || ok;
    }
  }
  int prev = 0;
  for (int n = 2; n <= 9; ++n) {
    const int v = exact_cdn(2, n).value;
    CHECK(v >= prev);
    prev = v;
  }
  for (int n = 3; n <= 5; ++n) CHECK(exact_cdn(3, n).value >= exact_cdn(2, n).value);
  CHECK(exact_cdn(3, 4).value == 8);
  CHECK(exact_cdn(3, 5).value == 10);
}

TEST_CASE("determinism across runs and thread counts") {
  const auto a = feasible(2, 9, 6);
  const auto b = feasible(2, 9, 6);
  SearchOptions par;
  par.threads = 4;
  const auto c = feasible(2, 9, 6, par);
  REQUIRE(a.witness);
  REQUIRE(c.witness);
  CHECK(*a.witness == *b.witness);
  CHECK(a.certificate.nodes == b.certificate.nodes);
  CHECK(*a.witness == *c.witness);
  CHECK(a.columns == c.columns);

  const auto inf1 = feasible(2, 11, 6);
  const auto inf4 = feasible(2, 11, 6, par);
  CHECK(inf1.status == SearchStatus::Infeasible);
  CHECK(inf4.status == SearchStatus::Infeasible);
}

TEST_CASE("node budget") {
  SearchOptions opt;
  opt.node_budget = 5;
  const auto r = feasible(2, 11, 6, opt);
  CHECK(r.status == SearchStatus::BudgetExhausted);
  CHECK_FALSE(r.witness);

  CdnOptions copt;
  copt.search.node_budget = 5;
  const auto cdn = exact_cdn(2, 11, copt);
  CHECK_FALSE(cdn.resolved);
}

TEST_CASE("exact value sits between the closed-form bounds") {
  for (int d = 1; d <= 3; ++d)
    for (int n = d + 1; n <= (d == 3 ? 6 : 10); ++n) {
      const CdnResult r = exact_cdn(d, n);
      REQUIRE(r.resolved);
      CHECK(r.bounds.lower <= static_cast<std::uint64_t>(r.value));
      CHECK(static_cast<std::uint64_t>(r.value) <= r.bounds.upper);
    }
  CdnOptions opt;
  opt.confirm_lower = true;
  const auto r = exact_cdn(2, 6, opt);
  CHECK(r.lower_certified);
}

TEST_CASE("threshold conjecture rows") {
  const auto rows = verify_q3(9);
  CHECK(rows.size() == 8);
  for (const auto& row : rows) {
    CHECK(row.exact.resolved);
    CHECK(row.agree);
    CHECK(row.exact.value == row.predicted);
  }
  CHECK_THROWS_AS(verify_q3(13), Error);
}

TEST_CASE("invalid arguments") {
  CHECK_THROWS_AS(feasible(0, 3, 2), Error);
  CHECK_THROWS_AS(feasible(4, 3, 16), Error);
  CHECK_THROWS_AS(feasible(2, 5, 31), Error);
  CHECK_THROWS_AS(brute_feasible(2, 21, 4), Error);
}
