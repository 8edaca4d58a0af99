#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "stokeslab/quad.hpp"
#include "stokeslab/regions.hpp"

using namespace stokeslab;

TEST_CASE("classification of named points") {
  CHECK(classify({5.0, 5.0}, 1, 3).kind == RegionKind::A_i1);
  CHECK(classify({5.0, -5.0}, 1, 3).kind == RegionKind::A_i2);
  CHECK(classify({100.0, 1.0}, 1, 3).kind == RegionKind::B_i1);
  CHECK(classify({1.0, 1.0}, 1, 3).kind == RegionKind::none);
  CHECK(classify({0.5, 40.0}, 1, 3, true).kind == RegionKind::B_i2);
  CHECK_THROWS_AS(classify({5.0, 5.0}, 2, 3), std::domain_error);
}

TEST_CASE("printed second B-set is empty, corrected one is not") {
  long long printed = 0, corrected = 0;
  std::uint64_t ctr = 0;
  for (long long q = 0; q < 1000000; ++q) {
    Vec xp = {200.0 * counter_uniform(5, ctr++) - 100.0,
              200.0 * counter_uniform(5, ctr++) - 100.0};
    if (in_B2_printed(xp, 1, 3)) ++printed;
    if (in_B2_corrected(xp, 1, 3)) ++corrected;
  }
  CHECK(printed == 0);
  CHECK(corrected > 0);
}

TEST_CASE("sign inequalities hold on sampled patches") {
  auto reports = verify_sign_inequalities(10000, 123, 3);
  CHECK(reports.size() == 4);
  for (const auto& r : reports) {
    INFO(r.name);
    CHECK(r.holds);
    CHECK(r.min_slack >= 0.0);
    CHECK(!r.counterexample.has_value());
  }
}

TEST_CASE("sets are pairwise disjoint and the diagonal set is scale stable") {
  std::uint64_t ctr = 0;
  long long overlaps = 0;
  long long diag_found = 0, diag_bad = 0;
  for (long long q = 0; q < 200000; ++q) {
    Vec xp = {200.0 * counter_uniform(9, ctr++) - 100.0,
              200.0 * counter_uniform(9, ctr++) - 100.0};
    int m = (in_A1(xp, 1, 3) ? 1 : 0) + (in_A2(xp, 1, 3) ? 1 : 0) +
            (in_B1(xp, 1, 3) ? 1 : 0) + (in_B2_corrected(xp, 1, 3) ? 1 : 0);
    if (m > 1) ++overlaps;
    if (in_A1(xp, 1, 3)) {
      ++diag_found;
      for (double lam : {1.5, 4.0}) {
        Vec xs = {lam * xp[0], lam * xp[1]};
        if (!in_A1(xs, 1, 3)) ++diag_bad;
      }
    }
  }
  CHECK(overlaps == 0);
  CHECK(diag_found > 1000);
  CHECK(diag_bad == 0);
}

TEST_CASE("four dimensional variant classifies too") {
  // i = 3 is allowed once n = 4 (any tangential axis except 2)
  CHECK(classify({5.0, 5.0, 0.0}, 3, 4).kind == RegionKind::none);
  CHECK(classify({0.0, 5.0, 5.0}, 3, 4).kind == RegionKind::A_i1);
  CHECK(in_B1({100.0, 1.0, 0.0}, 1, 4));
}
