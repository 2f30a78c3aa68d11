#include "lincrit/pade.hpp"

#include <doctest.h>

using namespace lincrit;

namespace {

// Li_j(-alpha z) truncated at degree d, built term by term.
Poly polylog_series(int j, const Rational& alpha, std::size_t d) {
  std::vector<Rational> c(d + 1);
  for (std::size_t s = 1; s <= d; ++s) c[s] = pow(-alpha, static_cast<unsigned long>(s)) / pow(Rational(static_cast<long>(s)), static_cast<unsigned long>(j));
  return Poly(c);
}

}  // namespace

TEST_SUITE("pade") {
  TEST_CASE("k = m = n = 1 by hand") {
    Rational a = make_rational(1, 3);
    // U_0 = z + a, U_1 = d/dz(z (z + a)) = 2z + a, V0 = z U_1(1/z) = 2 + a z.
    Poly v0 = build_V0(1, 1, 1, {a});
    CHECK(v0 == Poly({Rational(2), a}));
    auto sys = build_pade_system(1, 1, 1, {a});
    // W = truncation of (2 + a z)(-a z + a^2 z^2 / 2) at degree 1 = -2a z.
    CHECK(sys.w(1, 1) == Poly({Rational(0), -2 * a}));
  }

  TEST_CASE("W is the truncated product of V0 with the polylog series") {
    std::vector<Rational> al{make_rational(1, 2), make_rational(-2, 5)};
    for (int k = 1; k <= 2; ++k)
      for (long n = 0; n <= 2; ++n) {
        auto sys = build_pade_system(k, 2, n, al);
        const auto d = static_cast<std::size_t>(sys.degree());
        for (int i = 1; i <= 2; ++i)
          for (int j = 1; j <= k; ++j) {
            Poly prod = sys.V0 * polylog_series(j, al[static_cast<std::size_t>(i - 1)], d);
            CHECK(sys.w(i, j) == prod.truncated(d));
          }
      }
  }

  TEST_CASE("order condition by independent series product") {
    std::vector<Rational> al{make_rational(1, 4), make_rational(2, 3), make_rational(-1, 5)};
    for (int k = 1; k <= 2; ++k)
      for (long n = 0; n <= 2; ++n) {
        auto sys = build_pade_system(k, 3, n, al);
        const auto order = static_cast<std::size_t>(sys.degree() + n);
        for (int i = 1; i <= 3; ++i)
          for (int j = 1; j <= k; ++j) {
            Poly r = (sys.V0 * polylog_series(j, al[static_cast<std::size_t>(i - 1)], order)).truncated(order) - sys.w(i, j);
            CHECK(r.is_zero());
          }
        CHECK(verify_order(sys).ok);
        CHECK(sys.V0.degree() <= sys.degree());
      }
  }

  TEST_CASE("both V0 routes agree") {
    std::vector<Rational> al{make_rational(3, 7), make_rational(1, 9)};
    for (int k = 1; k <= 3; ++k)
      for (long n = 0; n <= 2; ++n) CHECK(V0_by_reversal(k, 2, n, al) == V0_by_multisum(k, 2, n, al));
  }

  TEST_CASE("input validation") {
    CHECK_THROWS_AS(build_pade_system(1, 2, 1, {make_rational(1, 2), make_rational(1, 2)}), std::invalid_argument);
    CHECK_THROWS_AS(build_pade_system(1, 1, 1, {Rational(0)}), std::invalid_argument);
    CHECK_THROWS_AS(build_pade_system(0, 1, 1, {Rational(1)}), std::invalid_argument);
    CHECK_THROWS_AS(build_pade_system(1, 2, 1, {Rational(1)}), std::invalid_argument);
    CHECK_THROWS_AS(linear_forms_at_one(build_pade_system(1, 1, 1, {Rational(2)}), 64), std::domain_error);
  }

  TEST_CASE("n = 0 gives the trivial system") {
    auto sys = build_pade_system(2, 2, 0, {make_rational(1, 3), make_rational(2, 3)});
    CHECK(sys.V0 == Poly::constant(1));
    CHECK(sys.w(1, 1).is_zero());
  }

  TEST_CASE("linear forms at one are small and bounded") {
    auto sys = build_pade_system(1, 2, 4, reciprocal_points(2, Integer(5)));
    auto lf = linear_forms_at_one(sys, 128);
    CHECK(lf.within_bound);
    for (const auto& row : lf.eps)
      for (const auto& e : row) CHECK(abs(e) < BigFloat::parse("1e-5", 128));
  }

  TEST_CASE("denominators of the reciprocal points") {
    for (long q : {3L, 7L})
      CHECK(denominator_structure_check(build_pade_system(2, 2, 1, reciprocal_points(2, Integer(q))), Integer(q)));
    auto pts = reciprocal_points(3, Integer(4));
    CHECK(pts[2] == make_rational(1, 12));
  }

  TEST_CASE("two-point depth-2 construction") {
    // n = 0 collapses the double sum to a single term.
    CHECK(example1_u(Integer(5), 0) == Poly::constant(1));
    auto ex = build_example1(Integer(5), 2);
    CHECK(ex.u1 == ex.u(Rational(1)));
    CHECK_THROWS(build_example1(Integer(2), 1));
  }
}
