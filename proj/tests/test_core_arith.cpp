#include "lincrit/bigfloat.hpp"
#include "lincrit/poly.hpp"
#include "lincrit/polylog.hpp"
#include "lincrit/rational.hpp"
#include "lincrit/roots.hpp"

#include <doctest.h>

#include <cmath>
#include <numeric>

using namespace lincrit;

TEST_SUITE("core_arith") {
  TEST_CASE("rationals are canonical and parse") {
    CHECK(make_rational(6, -4) == make_rational(-3, 2));
    CHECK(to_string(make_rational(6, -4)) == "-3/2");
    CHECK_THROWS_AS(make_rational(1, 0), std::domain_error);
    CHECK(parse_rational("-12/8") == make_rational(-3, 2));
    CHECK(parse_rational("7") == Rational(7));
    CHECK_THROWS_AS(parse_rational("1/"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("x"), std::invalid_argument);
    CHECK(is_integer(make_rational(10, 5)));
    CHECK_FALSE(is_integer(make_rational(1, 3)));
    CHECK(pow(Rational(0), 0) == 1);
    CHECK(pow(make_rational(-2, 3), 3) == make_rational(-8, 27));
  }

  TEST_CASE("lcm of 1..n against a running std::lcm") {
    unsigned long long acc = 1;
    for (unsigned long n = 1; n <= 40; ++n) {
      acc = std::lcm(acc, static_cast<unsigned long long>(n));
      CHECK(lcm_upto(n) == Integer(std::to_string(acc)));
    }
    CHECK_THROWS_AS(lcm_upto(0), std::invalid_argument);
  }

  TEST_CASE("binomials against Pascal's triangle") {
    std::vector<std::vector<Integer>> tri{{1}};
    for (long n = 1; n <= 30; ++n) {
      std::vector<Integer> row(static_cast<std::size_t>(n + 1), Integer(1));
      for (long k = 1; k < n; ++k)
        row[static_cast<std::size_t>(k)] = tri.back()[static_cast<std::size_t>(k - 1)] + tri.back()[static_cast<std::size_t>(k)];
      tri.push_back(row);
    }
    for (long n = 0; n <= 30; ++n)
      for (long k = 0; k <= n; ++k) CHECK(binomial(n, k) == tri[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)]);
    CHECK(binomial(5, -1) == 0);
    CHECK(binomial(5, 6) == 0);
  }

  TEST_CASE("localization membership") {
    CHECK(in_localization(make_rational(7, 250), Integer(10)));
    CHECK_FALSE(in_localization(make_rational(1, 3), Integer(10)));
    CHECK(in_localization(Rational(5), Integer(7)));
  }

  TEST_CASE("polynomial arithmetic against pointwise evaluation") {
    Poly a{1, -3, 0, 2};
    Poly b{make_rational(1, 2), 1};
    for (long z = -3; z <= 3; ++z) {
      Rational x(z);
      CHECK((a * b)(x) == a(x) * b(x));
      CHECK((a - b)(x) == a(x) - b(x));
    }
    auto [q, r] = divmod(a, b);
    CHECK(q * b + r == a);
    CHECK(r.degree() < b.degree());
    CHECK_THROWS_AS(divmod(a, Poly{}), std::domain_error);
    CHECK(a.reversed(3) == Poly({2, 0, -3, 1}));
    CHECK(a.derivative(2) == Poly({0, 12}));
    CHECK(a.truncated(1) == Poly({1, -3}));
  }

  TEST_CASE("gcd and square-free factorization") {
    Poly f = Poly::linear_factor(1).pow(3) * Poly::linear_factor(-2) * Poly::linear_factor(5).pow(2);
    Poly g = Poly::linear_factor(1) * Poly::linear_factor(5) * Poly::linear_factor(7);
    CHECK(gcd(f, g) == Poly::linear_factor(1) * Poly::linear_factor(5));
    Poly back = Poly::constant(f.leading());
    for (const auto& [factor, mult] : squarefree_factorization(f)) back *= factor.pow(static_cast<unsigned>(mult));
    CHECK(back == f);
  }

  TEST_CASE("polylog against closed forms") {
    const mpfr_prec_t prec = 200;
    // Li_1(x) = -log(1 - x)
    BigFloat li1 = polylog(1, make_rational(1, 3), prec);
    BigFloat ref1 = -log(BigFloat(make_rational(2, 3), prec));
    CHECK(agree_to_bits(li1, ref1, prec - 8));
    // Li_2(1/2) = pi^2/12 - log(2)^2/2
    BigFloat li2 = polylog(2, make_rational(1, 2), prec);
    BigFloat pi = pi_const(prec), l2 = log2_const(prec);
    BigFloat ref2 = pi * pi / BigFloat(12L, prec) - l2 * l2 / BigFloat(2L, prec);
    CHECK(agree_to_bits(li2, ref2, prec - 8));
    // Li_2(-1/2) by direct double summation
    double s = 0;
    for (int l = 1; l < 200; ++l) s += std::pow(-0.5, l) / (static_cast<double>(l) * l);
    CHECK(polylog(2, make_rational(-1, 2), 64).to_double() == doctest::Approx(s).epsilon(1e-14));
    CHECK_THROWS_AS(polylog(1, Rational(1), 64), std::domain_error);
    CHECK_THROWS_AS(polylog(0, make_rational(1, 2), 64), std::invalid_argument);
  }

  TEST_CASE("ceiling and agreement helpers") {
    CHECK(ceil_integer(BigFloat::parse("2584.0001", 128)) == 2585);
    CHECK(ceil_integer(BigFloat(7L, 64)) == 7);
    CHECK(agree_to_bits(BigFloat(1L, 64), BigFloat(1L, 64), 60));
    CHECK_FALSE(agree_to_bits(BigFloat(1L, 64), BigFloat::parse("1.001", 64), 20));
  }

  TEST_CASE("ball arithmetic encloses exact products") {
    const mpfr_prec_t prec = 64;
    ComplexBall a = ComplexBall::exact(make_rational(1, 3), prec);
    ComplexBall b = ComplexBall::exact(make_rational(-2, 7), prec);
    ComplexBall p = a * b;
    BigFloat truth(make_rational(-2, 21), 256);
    CHECK(abs(p.mid().re.with_precision(256) - truth) <= p.rad().with_precision(256) + pow2(-60, 256));
    CHECK_THROWS_AS(a / ComplexBall::exact(Rational(0), prec), std::domain_error);
  }

  TEST_CASE("escalation gives up with a precision error") {
    std::function<int(mpfr_prec_t)> compute = [](mpfr_prec_t p) { return static_cast<int>(p); };
    std::function<bool(const int&, const int&, mpfr_prec_t)> never = [](const int&, const int&, mpfr_prec_t) {
      return false;
    };
    CHECK_THROWS_AS(with_escalation(compute, never, 64), PrecisionError);
  }

  TEST_CASE("certified roots of products of known factors") {
    Poly f = Poly::linear_factor(1).pow(2) * Poly::linear_factor(-3) * Poly({1, 0, 1});
    RootProfile r = poly_roots(f, 128);
    REQUIRE(r.moduli.size() == 5);
    CHECK(r.moduli[0].to_double() == doctest::Approx(3.0));
    for (std::size_t i = 1; i < 5; ++i) CHECK(r.moduli[i].to_double() == doctest::Approx(1.0));
    int mult_one = 0;
    for (const auto& root : r.roots)
      if (abs(root.z.re - BigFloat(1L, 128)) < BigFloat::parse("1e-20", 128) &&
          abs(root.z.im) < BigFloat::parse("1e-20", 128))
        mult_one = root.multiplicity;
    CHECK(mult_one == 2);
    CHECK(r.any_tie);
  }
}
