#include "lincrit/criterion.hpp"
#include "lincrit/polylog.hpp"

#include <doctest.h>

using namespace lincrit;

namespace {

std::vector<Gamma> rational_gammas(std::initializer_list<Rational> v) {
  std::vector<Gamma> g;
  for (const auto& x : v) g.push_back(Gamma::rational(x));
  return g;
}

// m = l = 2, gammas 0, eps_n = diag(a(n), b(n)) on n = 1..n_end.
ApproximationFamily diagonal_family(const std::function<Rational(long)>& a, const std::function<Rational(long)>& b,
                                    long n_end) {
  std::vector<std::vector<Rational>> q;
  std::vector<std::vector<std::vector<Rational>>> p;
  for (long n = 1; n <= n_end; ++n) {
    q.push_back({Rational(1), Rational(1)});
    p.push_back({{-a(n), Rational(0)}, {Rational(0), -b(n)}});
  }
  return ApproximationFamily::from_tables(2, 2, false, rational_gammas({0, 0}), 1, q, p);
}

ProbeReport no_probe(ProbeMode mode) {
  ProbeReport r;
  r.mode = mode;
  return r;
}

}  // namespace

TEST_SUITE("criterion") {
  TEST_CASE("identity family gives eps = gamma") {
    auto fam = ApproximationFamily::from_tables(2, 1, false, rational_gammas({make_rational(1, 2), Rational(-3)}), 0,
                                                {{Rational(1)}}, {{{Rational(0)}, {Rational(0)}}});
    auto e = eps_matrix(fam, 0, 64);
    REQUIRE(e.exact);
    CHECK((*e.exact)(0, 0) == make_rational(1, 2));
    CHECK((*e.exact)(1, 0) == -3);

    auto lg = ApproximationFamily::from_tables(1, 1, false, {Gamma::polylog(2, make_rational(1, 3))}, 0, {{Rational(1)}},
                                               {{{Rational(0)}}});
    auto el = eps_matrix(lg, 0, 128);
    CHECK(agree_to_bits(el.value[0][0], polylog(2, make_rational(1, 3), 128), 120));
    CHECK(el.unresolved.empty());
    CHECK_THROWS_AS(lg.q(1, 1), std::out_of_range);
    CHECK_THROWS_AS(lg.p(0, 2, 1), std::out_of_range);
  }

  TEST_CASE("gamma validation") {
    CHECK_THROWS_AS(Gamma::polylog(1, Rational(1)), std::domain_error);
    CHECK_THROWS_AS(Gamma::polylog(0, make_rational(1, 2)), std::invalid_argument);
    CHECK(Gamma::polylog(2, make_rational(-1, 4)).provenance() == "Li_2(-1/4)");
  }

  TEST_CASE("exact geometric decay has limit 1/6") {
    auto fam = diagonal_family([](long n) { return pow(make_rational(1, 2), static_cast<unsigned long>(n)); },
                               [](long n) { return pow(make_rational(1, 3), static_cast<unsigned long>(n)); }, 20);
    auto rep = minor_decay_report(fam, 1, 20, 128);
    REQUIRE(rep.minors.size() == 1);
    CHECK(rep.minors[0].estimate.limit.to_double() == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
    CHECK(rep.all_decaying);
  }

  TEST_CASE("a non-decaying family gets no bound") {
    auto fam = diagonal_family([](long n) { return pow(Rational(2), static_cast<unsigned long>(n)); },
                               [](long) { return Rational(1); }, 20);
    auto rep = minor_decay_report(fam, 1, 20, 128);
    CHECK(rep.minors[0].estimate.limit.to_double() == doctest::Approx(2.0).epsilon(1e-12));
    CHECK_FALSE(rep.all_decaying);
    auto probe = nonvanishing_probe(fam, 1, 20, ProbeMode::LambdaEps, ProbeConfig{}, 64);
    auto v = dimension_verdict(fam, CriterionMode::LambdaEps, rep, probe);
    CHECK_FALSE(v.bound);
    CHECK(v.conclusion == "no conclusion");
    CHECK(v.hypotheses[0].evidence == Evidence::Failed);
  }

  TEST_CASE("eventually zero minors count as decaying") {
    auto fam = diagonal_family([](long n) { return n < 5 ? Rational(1) : Rational(0); },
                               [](long) { return Rational(1); }, 16);
    auto rep = minor_decay_report(fam, 1, 16, 64);
    CHECK(rep.minors[0].estimate.zero_solution);
    CHECK(rep.all_decaying);
    CHECK_THROWS(minor_decay_report(fam, 1, 5, 64));
  }

  TEST_CASE("single point single column gives bound 2") {
    auto fam = reciprocal_pade_family(1, 1, Integer(10), 1);
    auto plan = reciprocal_pade_plan(1, 1, fam.nu_last());
    auto decay = minor_decay_report(fam, 1, 16, 128, &plan);
    auto probe = nonvanishing_probe(fam, 1, 16, ProbeMode::LambdaEps, ProbeConfig{}, 128);
    auto v = dimension_verdict(fam, CriterionMode::Refined, decay, probe, {}, &plan);
    REQUIRE(v.bound);
    CHECK(*v.bound == 2);
    CHECK(v.label == "experimental");
    CHECK_FALSE(v.extrapolations.empty());
    // The same data without the plan cannot be judged.
    CHECK_FALSE(dimension_verdict(fam, CriterionMode::Refined, decay, probe).bound);
    // Unscaled Pade values are not integers, so the plain criterion does not apply.
    auto plain = minor_decay_report(fam, 1, 16, 128);
    CHECK_FALSE(dimension_verdict(fam, CriterionMode::LambdaEps, plain, probe).bound);
  }

  TEST_CASE("assumed and failed extra hypotheses") {
    auto fam = reciprocal_pade_family(1, 1, Integer(10), 1);
    auto plan = reciprocal_pade_plan(1, 1, fam.nu_last());
    auto decay = minor_decay_report(fam, 1, 12, 128, &plan);
    auto probe = nonvanishing_probe(fam, 1, 12, ProbeMode::LambdaEps, ProbeConfig{}, 128);
    auto a = dimension_verdict(fam, CriterionMode::Refined, decay, probe, {{"outside", Evidence::Assumed, "given"}}, &plan);
    CHECK_FALSE(a.bound);
    REQUIRE(a.assumed.size() == 1);
    auto f = dimension_verdict(fam, CriterionMode::Refined, decay, probe, {{"outside", Evidence::Failed, ""}}, &plan);
    CHECK_FALSE(f.bound);
  }

  TEST_CASE("mode and family shape must match") {
    auto fam = diagonal_family([](long n) { return pow(make_rational(1, 2), static_cast<unsigned long>(n)); },
                               [](long) { return Rational(1); }, 10);
    auto rep = minor_decay_report(fam, 1, 10, 64);
    auto v = dimension_verdict(fam, CriterionMode::FullColumns, rep, no_probe(ProbeMode::Stacked));
    CHECK(v.hypotheses[0].evidence == Evidence::Failed);
    CHECK_THROWS_AS(probe_matrix(fam, RatMat{}, ProbeMode::Stacked, 1, 10, 64), std::invalid_argument);
  }

  TEST_CASE("rank-deficient probes are rejected") {
    auto fam = pade_family(1, {make_rational(1, 5), make_rational(2, 5), make_rational(3, 5)}, 2);
    CHECK_THROWS_AS(probe_matrix(fam, RatMat{{1, 2, 3}, {2, 4, 6}}, ProbeMode::LambdaEps, 1, 4, 64),
                    std::invalid_argument);
    CHECK_THROWS_AS(probe_matrix(fam, RatMat{{1, 2}, {0, 1}}, ProbeMode::LambdaEps, 1, 4, 64), std::invalid_argument);
    auto ok = probe_matrix(fam, RatMat{{1, 0, 0}, {0, 1, 1}}, ProbeMode::LambdaEps, 1, 4, 128);
    CHECK_FALSE(ok.nonsingular.empty());
  }

  TEST_CASE("probe enumeration is deterministic and capped") {
    auto fam = pade_family(1, {make_rational(1, 5), make_rational(2, 5), make_rational(3, 5)}, 2);
    ProbeConfig cfg;
    cfg.bound = 1;
    cfg.random = 4;
    cfg.seed = 3;
    auto a = nonvanishing_probe(fam, 1, 3, ProbeMode::LambdaEps, cfg, 128);
    auto b = nonvanishing_probe(fam, 1, 3, ProbeMode::LambdaEps, cfg, 128);
    REQUIRE(a.probes.size() == b.probes.size());
    for (std::size_t i = 0; i < a.probes.size(); ++i) CHECK(a.probes[i].matrix == b.probes[i].matrix);
    // 13 primitive rows in [-1, 1]^3 with positive leading entry, taken in pairs.
    CHECK(a.enumerated == 78);
    cfg.enumeration_cap = 10;
    auto c = nonvanishing_probe(fam, 1, 3, ProbeMode::LambdaEps, cfg, 128);
    CHECK(c.truncated);
    CHECK(c.enumerated == 10);
  }

  TEST_CASE("Binet-Cauchy consistency of lambda eps") {
    std::vector<std::vector<Rational>> q{{Rational(3), Rational(-2)}};
    std::vector<std::vector<std::vector<Rational>>> p{{{Rational(1), Rational(4)}, {Rational(-5), Rational(2)}, {Rational(7), Rational(0)}}};
    auto fam = ApproximationFamily::from_tables(3, 2, false, rational_gammas({make_rational(1, 2), make_rational(-2, 3), Rational(5)}), 0, q, p);
    RatMat e = *eps_matrix(fam, 0, 64).exact;
    RatMat lambda{{1, -2, 3}, {0, 4, 1}};
    Rational direct = det(lambda * e);
    Rational via_forms = 0;
    for (const auto& mu : IndexSet::all(3, 2)) {
      auto v = evaluate(minor_linear_form(fam, 0, mu, IndexSet::full(2)), fam.gammas(), 64);
      REQUIRE(v.exact);
      via_forms += minor(lambda, IndexSet::full(2), mu) * *v.exact;
    }
    CHECK(direct == via_forms);
    CHECK(direct == binet_cauchy_sum(lambda, e));
    CHECK(linear_form_identity_check(fam, 0));
  }

  TEST_CASE("minor linear forms with polylog targets") {
    auto fam = pade_family(1, {make_rational(1, 4), make_rational(1, 2)}, 2);
    auto e = eps_matrix(fam, 2, 256);
    auto v = evaluate(minor_linear_form(fam, 2, IndexSet::full(2), IndexSet::full(2)), fam.gammas(), 128);
    BigFloat d = e.value[0][0] * e.value[1][1] - e.value[0][1] * e.value[1][0];
    CHECK(v.nonzero);
    CHECK(agree_to_bits(v.value, d, 60));
    CHECK_THROWS_AS(linear_form_identity_check(fam, 2), std::invalid_argument);
  }

  TEST_CASE("Pade family eps matches the direct linear forms") {
    std::vector<Rational> al{make_rational(1, 7), make_rational(2, 7)};
    auto fam = pade_family(2, al, 1);
    auto e = eps_matrix(fam, 3, 128);
    auto lf = linear_forms_at_one(build_pade_system(2, 2, 3, al), 128);
    for (int mu = 1; mu <= 4; ++mu) {
      int i = (mu - 1) % 2, j = (mu - 1) / 2;
      CHECK(agree_to_bits(e.value[static_cast<std::size_t>(mu - 1)][0],
                          lf.eps[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)], 100));
    }
    CHECK(fam.gamma(2).provenance() == "Li_1(-2/7)");
    CHECK(fam.gamma(3).provenance() == "Li_2(-1/7)");
  }

  TEST_CASE("integrality audit and negative control") {
    for (int k = 1; k <= 2; ++k)
      for (int M = 1; M <= 2; ++M)
        for (int l = 1; l <= k * M; ++l) {
          auto fam = reciprocal_pade_family(k, M, Integer(3), l);
          auto plan = reciprocal_pade_plan(k, M, fam.nu_last());
          for (long n = 0; n <= 2; ++n) {
            CHECK(check_plan(fam, plan, n).ok);
            CHECK(integrality_audit(fam, plan, n).ok);
          }
        }
    auto fam = reciprocal_pade_family(2, 2, Integer(3), 2);
    auto bad = reciprocal_pade_plan(2, 2, fam.nu_last(), true);
    auto audit = integrality_audit(fam, bad, 2);
    CHECK_FALSE(audit.ok);
    CHECK_FALSE(audit.violations.empty());
  }

  TEST_CASE("unit plan on integer and non-integer tables") {
    auto ints = ApproximationFamily::from_tables(2, 1, false, rational_gammas({1, 2}), 0, {{Rational(3)}},
                                                 {{{Rational(1)}, {Rational(-4)}}});
    CHECK(integrality_audit(ints, unit_plan(), 0).ok);
    auto frac = ApproximationFamily::from_tables(2, 1, false, rational_gammas({1, 2}), 0, {{Rational(3)}},
                                                 {{{make_rational(1, 2)}, {Rational(-4)}}});
    CHECK_FALSE(integrality_audit(frac, unit_plan(), 0).ok);
    CHECK_FALSE(check_plan(frac, unit_plan(), 0).ok);
  }

  TEST_CASE("extended families quantify over column subsets") {
    auto fam = reciprocal_pade_family(1, 2, Integer(3), 1, true);
    CHECK(fam.columns() == 3);
    CHECK(fam.nu_first() == 0);
    CHECK(fam.column_choices().size() == 3);
    CHECK(fam.stacked(1).rows() == 3);
    auto plan = reciprocal_pade_plan(1, 2, fam.nu_last());
    CHECK(integrality_audit(fam, plan, 1).ok);
  }

  TEST_CASE("refined scaled minor carries its factor") {
    auto fam = reciprocal_pade_family(1, 2, Integer(5), 1);
    auto plan = reciprocal_pade_plan(1, 2, fam.nu_last());
    auto r = refined_scaled_minor(fam, plan, IndexSet({2}, 2), 3, 128);
    CHECK(r.factor == plan_factor(fam, plan, 3, IndexSet::full(1)));
    CHECK(r.plan.ok);
    CHECK(r.audit.ok);
    auto e = eps_matrix(fam, 3, 128);
    CHECK(agree_to_bits(r.scaled.value, BigFloat(r.factor, 128) * e.value[1][0], 100));
  }
}
