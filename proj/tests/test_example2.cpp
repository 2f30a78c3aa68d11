#include "lincrit/example2.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

using namespace lincrit;

namespace {

long double log_d(long n) {
  unsigned long long acc = 1;
  for (long i = 2; i <= n; ++i) acc = std::lcm(acc, static_cast<unsigned long long>(i));
  return std::log(static_cast<long double>(acc));
}

long double level_oracle(int k, int m, int t) {
  const long double L = t + 1;
  long double s = L * k * k * m + (L * k - t) * m * log_d(m) + std::min(t, 2) * m * log_d(m - 1) +
                  std::max(t - 2, 0) * m * log_d(m - 2) + L * k * m * std::log(2.0L) +
                  L * k * std::log(static_cast<long double>(k * m + 1)) + L * k;
  return s / L;
}

}  // namespace

TEST_SUITE("example2") {
  TEST_CASE("level thresholds against a long double evaluation") {
    for (int k = 1; k <= 12; ++k)
      for (int m = 1; m <= 12; ++m)
        for (int t = 0; t <= example2_max_level(k, m); ++t)
          CHECK(example2_threshold(k, m, t).to_double() == doctest::Approx(static_cast<double>(level_oracle(k, m, t))).epsilon(1e-12));
  }

  TEST_CASE("rounded thresholds") {
    CHECK(ceil_integer(example2_threshold(10, 10, 0)) == 1909);
    CHECK(ceil_integer(example2_threshold(11, 11, 0)) == 2717);
    REQUIRE(!fixed_pathways().empty());
    const auto& p = fixed_pathways().front();
    CHECK(p.delta == 112);
    CHECK(ceil_integer(pathway_threshold(p)) == 2585);
  }

  TEST_CASE("baseline formula and improvement") {
    for (int k = 2; k <= 12; ++k)
      for (int m = 2; m <= 12; ++m) {
        long double base = k * m * (k + log_d(m) + k * std::log(2.5L)) + k * std::log(3.0L);
        CHECK(dhk_baseline_threshold(k, m).to_double() == doctest::Approx(static_cast<double>(base)).epsilon(1e-12));
        CHECK(example2_threshold(k, m, 0) < dhk_baseline_threshold(k, m));
      }
  }

  TEST_CASE("levels are non-increasing and side conditions apply") {
    CHECK(example2_max_level(2, 2) == 1);
    CHECK(example2_max_level(12, 12) == kExample2MaxLevel);
    CHECK(example2_delta(3, 4, 2) == 11);
    CHECK_THROWS_AS(example2_threshold(2, 2, 2), std::invalid_argument);
    CHECK_THROWS_AS(example2_threshold(0, 2, 0), std::invalid_argument);
    for (int t = 1; t <= 5; ++t) CHECK(example2_threshold(11, 11, t) <= example2_threshold(11, 11, t - 1));
  }

  TEST_CASE("best available dimension bound") {
    const mpfr_prec_t prec = 128;
    CHECK(delta_bound(11, 11, BigFloat(2585L, prec)).delta == 112);
    CHECK(delta_bound(11, 11, BigFloat(2585L, prec)).pathway);
    CHECK(delta_bound(10, 10, BigFloat(1000L, prec)).delta == 1);
    auto b = delta_bound(10, 10, BigFloat(1909L, prec));
    CHECK(b.delta == 101 - b.level.value_or(0));
    CHECK(b.delta >= 99);
    // Strict inequality: exactly at a threshold does not count.
    BigFloat at = example2_threshold(4, 4, 0, prec);
    CHECK(delta_bound(4, 4, at).delta < 17);
  }

  TEST_CASE("table rows") {
    auto t = example2_table(10, 10, BigFloat(1909L, 128));
    CHECK(t.rows.size() == 6);
    CHECK(t.rows[0].rounded == 1909);
    REQUIRE(t.rows[0].satisfied);
    CHECK(*t.rows[0].satisfied);
    CHECK(t.best);
  }
}
