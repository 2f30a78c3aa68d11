#include "lincrit/matrix.hpp"

#include <doctest.h>

#include <random>

using namespace lincrit;

namespace {

// Laplace expansion along the first row.
Rational cofactor_det(const RatMat& a) {
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  Rational s = 0;
  for (std::size_t j = 0; j < n; ++j) {
    RatMat sub(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t c = 0, cc = 0; c < n; ++c)
        if (c != j) sub(r - 1, cc++) = a(r, c);
    Rational t = a(0, j) * cofactor_det(sub);
    s += (j % 2 == 0) ? t : Rational(-t);
  }
  return s;
}

RatMat random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, long b) {
  std::uniform_int_distribution<long> d(-b, b);
  RatMat m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = make_rational(d(rng), 1 + (d(rng) + b) % 3);
  return m;
}

}  // namespace

TEST_SUITE("exact_linalg") {
  TEST_CASE("determinant against cofactor expansion") {
    std::mt19937_64 rng(11);
    for (std::size_t n = 1; n <= 5; ++n)
      for (int rep = 0; rep < 10; ++rep) {
        RatMat a = random_matrix(rng, n, n, 6);
        CHECK(det(a) == cofactor_det(a));
      }
    CHECK(det(RatMat{{1, 2}, {2, 4}}) == 0);
    CHECK(det(RatMat{{0, 1}, {1, 0}}) == -1);
    CHECK_THROWS_AS(det(RatMat(2, 3)), std::invalid_argument);
  }

  TEST_CASE("index sets") {
    auto all = IndexSet::all(4, 2);
    REQUIRE(all.size() == 6);
    CHECK(all.front().indices() == std::vector<int>{1, 2});
    CHECK(all.back().indices() == std::vector<int>{3, 4});
    for (std::size_t r = 0; r < all.size(); ++r) CHECK(all[r].lex_rank() == r);
    CHECK(IndexSet({2, 4}, 5).complement().indices() == std::vector<int>{1, 3, 5});
    CHECK_THROWS_AS(IndexSet({2, 2}, 3), std::invalid_argument);
    CHECK_THROWS_AS(IndexSet({1, 4}, 3), std::invalid_argument);
  }

  TEST_CASE("compound entries are minors") {
    std::mt19937_64 rng(12);
    RatMat a = random_matrix(rng, 4, 4, 5);
    RatMat c = compound(a, 2);
    auto sets = IndexSet::all(4, 2);
    for (std::size_t r = 0; r < sets.size(); ++r)
      for (std::size_t s = 0; s < sets.size(); ++s) CHECK(c(r, s) == cofactor_det(a.select(sets[r], sets[s])));
    CHECK(compound(a, 4)(0, 0) == det(a));
    CHECK(compound(a, 1) == a);
  }

  TEST_CASE("Sylvester-Franke including singular matrices") {
    std::mt19937_64 rng(13);
    for (std::size_t m = 3; m <= 4; ++m)
      for (int rep = 0; rep < 5; ++rep) {
        RatMat a = random_matrix(rng, m, m, 4);
        if (rep == 0)
          for (std::size_t j = 0; j < m; ++j) a(1, j) = a(0, j);
        for (int l = 1; l <= static_cast<int>(m); ++l) CHECK(sylvester_franke_check(a, l));
      }
  }

  TEST_CASE("characteristic polynomial") {
    // 2x2: lambda^2 - tr lambda + det
    RatMat a{{1, 2}, {3, 4}};
    CHECK(charpoly(a) == Poly({-2, -5, 1}));
    RatMat t{{2, 1, 0}, {0, 2, 5}, {0, 0, -1}};
    CHECK(charpoly(t) == Poly::linear_factor(2).pow(2) * Poly::linear_factor(-1));
    CHECK(compound_charpoly_check(t, {2, 2, -1}, 2));
    CHECK_FALSE(compound_charpoly_check(t, {2, 1, -1}, 2));
  }

  TEST_CASE("Binet-Cauchy against the product determinant") {
    std::mt19937_64 rng(14);
    for (int rep = 0; rep < 10; ++rep) {
      RatMat a = random_matrix(rng, 2, 5, 5), b = random_matrix(rng, 5, 2, 5);
      CHECK(binet_cauchy_sum(a, b) == cofactor_det(a * b));
      CHECK(gram_identity_check(b));
    }
  }

  TEST_CASE("rank") {
    CHECK(rank(RatMat{{1, 2, 3}, {2, 4, 6}}) == 1);
    CHECK(rank(RatMat::identity(4)) == 4);
    CHECK(rank(RatMat(3, 3)) == 0);
  }
}
