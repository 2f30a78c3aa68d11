#include "lincrit/serialize.hpp"

#include <doctest.h>

#include <algorithm>

using namespace lincrit;

TEST_SUITE("serialize") {
  TEST_CASE("rationals round trip in every accepted form") {
    Rational x = make_rational(-22, 7);
    CHECK(rational_from_json(to_json(x)) == x);
    CHECK(rational_from_json(Json("-22/7")) == x);
    CHECK(rational_from_json(Json(5)) == 5);
    CHECK_THROWS(rational_from_json(Json("abc")));
    // Large values survive without loss.
    Rational big = make_rational(pow(Integer(3), 200), pow(Integer(2), 150));
    CHECK(rational_from_json(Json::parse(to_json(big).dump())) == big);
  }

  TEST_CASE("matrices round trip through JSON and CSV") {
    RatMat m{{1, make_rational(-1, 2)}, {make_rational(3, 4), 0}};
    CHECK(matrix_from_json(to_json(m)) == m);
    CHECK(matrix_from_csv(matrix_to_csv(m)) == m);
    CHECK(matrix_from_csv("1,2\n3,4\n") == RatMat{{1, 2}, {3, 4}});
    CHECK_THROWS(matrix_from_csv("1,2\n3\n"));
  }

  TEST_CASE("Pade systems and polynomials round trip") {
    auto sys = build_pade_system(2, 2, 1, {make_rational(1, 3), make_rational(2, 5)});
    Json j = Json::parse(to_json(sys).dump());
    PadeSystem back = pade_from_json(j);
    CHECK(back.V0 == sys.V0);
    CHECK(back.W.size() == sys.W.size());
    CHECK(back.w(2, 2) == sys.w(2, 2));
    CHECK(poly_from_json(to_json(sys.V0)) == sys.V0);
  }

  TEST_CASE("families round trip over a window") {
    auto fam = reciprocal_pade_family(1, 2, Integer(3), 2);
    Json j = Json::parse(family_to_json(fam, 1, 3).dump());
    auto back = family_from_json(j);
    CHECK(back.m() == fam.m());
    CHECK(back.l() == fam.l());
    for (long n = 1; n <= 3; ++n) CHECK(back.stacked(n) == fam.stacked(n));
    CHECK(back.gamma(2).provenance() == fam.gamma(2).provenance());
    CHECK_THROWS_AS(back.q(4, 1), std::out_of_range);
  }

  TEST_CASE("recurrences round trip as coefficient tables") {
    auto rec = Recurrence::from_roots({{Rational(2), 1}, {make_rational(1, 2), 1}});
    auto back = recurrence_from_json(recurrence_to_json(rec, 5));
    for (long n = 0; n <= 5; ++n) CHECK(back.coeffs(n) == rec.coeffs(n));
  }

  TEST_CASE("reports carry kind, version and precision") {
    Json r = report("test", 192, Json{{"x", 1}});
    CHECK(r["kind"] == "test");
    CHECK(r["precision_bits"] == 192);
    CHECK(r["version"] == lincrit_version());
    CHECK(r["x"] == 1);
  }

  TEST_CASE("decay CSV has a header and one row per value") {
    auto fam = reciprocal_pade_family(1, 1, Integer(5), 1);
    auto rep = minor_decay_report(fam, 1, 8, 64);
    std::string csv = decay_to_csv(rep);
    CHECK(csv.rfind("n,mu,cols,value,error,nth_root", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 9);
  }
}
