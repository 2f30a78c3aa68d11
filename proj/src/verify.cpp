#include "lincrit/verify.hpp"

#include "lincrit/asymptotics.hpp"
#include "lincrit/criterion.hpp"
#include "lincrit/example2.hpp"
#include "lincrit/matrix.hpp"
#include "lincrit/pade.hpp"
#include "lincrit/recurrence.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <stdexcept>

namespace lincrit {

bool SuiteResult::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

std::vector<std::string> suite_names() { return {"pade", "linalg", "recurrence", "asymptotics", "criterion"}; }

namespace {

using Rng = std::mt19937_64;

long rand_int(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

RatMat random_int_matrix(Rng& rng, std::size_t r, std::size_t c, long B) {
  RatMat m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rand_int(rng, -B, B);
  return m;
}

// Random rational in (0, 1) with a small denominator.
Rational random_unit(Rng& rng) {
  long d = rand_int(rng, 2, 9);
  return make_rational(rand_int(rng, 1, d - 1), d);
}

std::vector<Rational> random_alphas(Rng& rng, int m) {
  std::vector<Rational> a;
  while (static_cast<int>(a.size()) < m) {
    Rational x = random_unit(rng);
    if (std::find(a.begin(), a.end(), x) == a.end()) a.push_back(x);
  }
  return a;
}

// alpha_n^(j) = a_j + b_j n with a_0, a_m >= 1 and b >= 0, so the ends never vanish for n >= 0.
Recurrence random_recurrence(Rng& rng, int m) {
  std::vector<long> a, b;
  for (int j = 0; j <= m; ++j) {
    bool end = j == 0 || j == m;
    a.push_back(end ? rand_int(rng, 1, 4) : rand_int(rng, -4, 4));
    b.push_back(end ? rand_int(rng, 0, 3) : rand_int(rng, -3, 3));
  }
  return Recurrence(m, [a, b, m](long n) {
    std::vector<Rational> c;
    for (int j = 0; j <= m; ++j) c.emplace_back(a[static_cast<std::size_t>(j)] + b[static_cast<std::size_t>(j)] * n);
    return c;
  });
}

void add(SuiteResult& s, std::string name, bool ok, std::string detail = {}) {
  s.checks.push_back({std::move(name), ok, std::move(detail)});
}

// Runs body and records an exception as a failed check.
void guarded(SuiteResult& s, const std::string& name, const std::function<void()>& body) {
  try {
    body();
  } catch (const std::exception& e) {
    add(s, name, false, std::string("exception: ") + e.what());
  }
}

SuiteResult pade_suite(std::uint64_t seed) {
  SuiteResult s{"pade", seed, {}};
  Rng rng(seed);
  guarded(s, "order condition", [&] {
    int bad = 0, total = 0;
    for (int k = 1; k <= 2; ++k)
      for (int m = 1; m <= 2; ++m)
        for (long n = 0; n <= 3; ++n) {
          auto sys = build_pade_system(k, m, n, random_alphas(rng, m));
          ++total;
          if (!verify_order(sys).ok) ++bad;
        }
    add(s, "order condition", bad == 0, std::to_string(total - bad) + "/" + std::to_string(total) + " systems");
  });
  guarded(s, "V0 two routes", [&] {
    int bad = 0, total = 0;
    for (int k = 1; k <= 3; ++k)
      for (int m = 1; m <= 2; ++m)
        for (long n = 0; n <= 2; ++n) {
          auto al = random_alphas(rng, m);
          ++total;
          if (V0_by_reversal(k, m, n, al) != V0_by_multisum(k, m, n, al)) ++bad;
        }
    add(s, "V0 two routes", bad == 0, std::to_string(total - bad) + "/" + std::to_string(total) + " agree");
  });
  guarded(s, "denominators", [&] {
    bool ok = true;
    for (long q : {3L, 5L, -4L})
      for (int k = 1; k <= 2; ++k)
        for (int m = 1; m <= 2; ++m)
          for (long n = 1; n <= 2; ++n)
            ok = ok && denominator_structure_check(build_pade_system(k, m, n, reciprocal_points(m, Integer(q))), Integer(q));
    add(s, "denominators", ok, "d_m^{kn} V0(1) and d_m^{kmn} d_{kmn}^j W(1) in Z[1/q]");
  });
  guarded(s, "two-point depth-2 system", [&] {
    build_example1(Integer(7), 2);
    add(s, "two-point depth-2 system", true, "u, v, w agree with V0, W at q = 7, n = 2");
  });
  guarded(s, "linear form bound", [&] {
    auto sys = build_pade_system(2, 2, 3, {make_rational(1, 7), make_rational(2, 7)});
    auto lf = linear_forms_at_one(sys, 128);
    add(s, "linear form bound", lf.within_bound, "|eps| below the binomial bound at n = 3");
  });
  return s;
}

SuiteResult linalg_suite(std::uint64_t seed) {
  SuiteResult s{"linalg", seed, {}};
  Rng rng(seed);
  guarded(s, "Sylvester-Franke", [&] {
    int total = 0, bad = 0;
    for (std::size_t m = 3; m <= 5; ++m)
      for (int rep = 0; rep < 10; ++rep) {
        RatMat a = random_int_matrix(rng, m, m, 5);
        if (rep % 3 == 0)
          for (std::size_t j = 0; j < m; ++j) a(m - 1, j) = a(0, j) * 2;  // singular
        for (int l = 1; l <= static_cast<int>(m); ++l) {
          ++total;
          if (!sylvester_franke_check(a, l)) ++bad;
        }
      }
    add(s, "Sylvester-Franke", bad == 0, std::to_string(total - bad) + "/" + std::to_string(total));
  });
  guarded(s, "compound multiplicativity", [&] {
    bool ok = true;
    for (int rep = 0; rep < 10; ++rep) {
      RatMat a = random_int_matrix(rng, 4, 4, 4), b = random_int_matrix(rng, 4, 4, 4);
      for (int l = 1; l <= 4; ++l) ok = ok && compound(a * b, l) == compound(a, l) * compound(b, l);
    }
    add(s, "compound multiplicativity", ok);
  });
  guarded(s, "compound spectrum", [&] {
    bool ok = true;
    for (int rep = 0; rep < 10; ++rep) {
      std::size_t m = static_cast<std::size_t>(rand_int(rng, 2, 5));
      RatMat t(m, m);
      std::vector<Rational> ev;
      for (std::size_t i = 0; i < m; ++i) {
        t(i, i) = rand_int(rng, -3, 3);
        ev.push_back(t(i, i));
        for (std::size_t j = i + 1; j < m; ++j) t(i, j) = rand_int(rng, -5, 5);
      }
      for (int l = 1; l <= static_cast<int>(m); ++l) ok = ok && compound_charpoly_check(t, ev, l);
    }
    add(s, "compound spectrum", ok, "triangular matrices with integer diagonals");
  });
  guarded(s, "Binet-Cauchy and Gram", [&] {
    bool ok = true;
    for (int rep = 0; rep < 40; ++rep) {
      std::size_t l = static_cast<std::size_t>(rand_int(rng, 1, 3));
      std::size_t m = static_cast<std::size_t>(rand_int(rng, static_cast<long>(l), 6));
      RatMat a = random_int_matrix(rng, l, m, 6), b = random_int_matrix(rng, m, l, 6);
      ok = ok && binet_cauchy_check(a, b) && gram_identity_check(b);
    }
    add(s, "Binet-Cauchy and Gram", ok);
  });
  guarded(s, "rank of products", [&] {
    bool ok = true;
    for (int rep = 0; rep < 20; ++rep) {
      RatMat a = random_int_matrix(rng, 2, 4, 3), b = random_int_matrix(rng, 4, 4, 3);
      if (rank(a) == 2 && det(b) != 0) ok = ok && rank(a * b) == 2;
    }
    add(s, "rank of products", ok, "rank(ab) = l for rank-l a and non-singular b");
  });
  return s;
}

SuiteResult recurrence_suite(std::uint64_t seed) {
  SuiteResult s{"recurrence", seed, {}};
  Rng rng(seed);
  guarded(s, "Abel relation", [&] {
    bool ok = true, control_fails = false;
    for (int m = 2; m <= 5; ++m) {
      Recurrence rec = random_recurrence(rng, m);
      SolutionBundle b(rec, random_int_matrix(rng, static_cast<std::size_t>(m), static_cast<std::size_t>(m), 5));
      for (long n = 0; n <= 12; ++n) {
        ok = ok && abel_check(b, n, AbelSign::Order);
        if (!abel_check(b, n, AbelSign::Index)) control_fails = true;
      }
    }
    add(s, "Abel relation", ok, "sign (-1)^m");
    add(s, "Abel negative control", control_fails, "sign (-1)^n fails somewhere");
  });
  guarded(s, "minor recurrence", [&] {
    bool ok = true;
    for (auto [m, l] : std::vector<std::pair<int, int>>{{3, 2}, {4, 2}, {4, 3}}) {
      Recurrence rec = random_recurrence(rng, m);
      SolutionBundle b(rec, random_int_matrix(rng, static_cast<std::size_t>(m), static_cast<std::size_t>(l), 5));
      for (const auto& mu : IndexSet::all(m, l))
        for (long n = 0; n <= 4; ++n) {
          MinorRecurrence mr = minor_recurrence(rec, mu, l, n);
          std::vector<Rational> y;
          for (std::size_t k = 0; k <= mr.order; ++k)
            y.push_back(minor(b.casoratian(n + static_cast<long>(k)), mu, IndexSet::full(l)));
          ok = ok && mr.residual(y) == 0;
        }
    }
    add(s, "minor recurrence", ok, "(m, l) in {(3,2), (4,2), (4,3)}");
  });
  guarded(s, "compound transfer", [&] {
    Recurrence rec = random_recurrence(rng, 4);
    SolutionBundle b(rec, random_int_matrix(rng, 4, 2, 5));
    bool ok = true;
    for (long n = 0; n <= 6; ++n) ok = ok && compound_transfer_check(b, n);
    add(s, "compound transfer", ok);
  });
  guarded(s, "confluent Casoratian", [&] {
    bool ok = confluent_casoratian_check({{Rational(2), 2}, {Rational(-1), 1}}) &&
              confluent_casoratian_check({{make_rational(1, 2), 3}}) &&
              confluent_casoratian_check({{Rational(1), 1}, {Rational(3), 2}, {Rational(-2), 1}});
    add(s, "confluent Casoratian", ok);
  });
  return s;
}

SuiteResult asymptotics_suite(std::uint64_t seed) {
  SuiteResult s{"asymptotics", seed, {}};
  const mpfr_prec_t prec = 128;
  guarded(s, "Fibonacci nth root", [&] {
    Recurrence fib = Recurrence::constant({Rational(-1), Rational(-1), Rational(1)});
    SolutionBundle b(fib, RatMat{{0}, {1}});
    auto est = pituk_nth_root(b.sequence(0, 202), 2, 1, 200, prec);
    BigFloat phi = (BigFloat(1L, prec) + sqrt(BigFloat(5L, prec))) / BigFloat(2L, prec);
    match_spectrum(est, {phi}, 0.02);
    add(s, "Fibonacci nth root", est.within_tolerance, "limit " + est.limit.to_string(8));
  });
  guarded(s, "roots (1,2,3)", [&] {
    Recurrence rec = Recurrence::from_roots({{Rational(1), 1}, {Rational(2), 1}, {Rational(3), 1}});
    SolutionBundle b(rec, RatMat{{1}, {1}, {2}});
    auto est = pituk_nth_root(b.sequence(0, 203), 3, 1, 200, prec);
    match_spectrum(est, {BigFloat(3L, prec), BigFloat(2L, prec), BigFloat(1L, prec)}, 0.02);
    add(s, "roots (1,2,3)", est.within_tolerance && est.matched && *est.matched == 0,
        "limit " + est.limit.to_string(8));
  });
  guarded(s, "2x2 minor limit", [&] {
    Recurrence rec = Recurrence::from_roots({{Rational(1), 1}, {Rational(2), 1}, {Rational(3), 1}});
    SolutionBundle b(rec, RatMat{{1, 1}, {2, 3}, {4, 9}});
    Poly cp = Poly::linear_factor(1) * Poly::linear_factor(2) * Poly::linear_factor(3);
    auto rep = minor_asymptotics_check(b, cp, 200, 0.02, prec);
    add(s, "2x2 minor limit", rep.passed && rep.estimate.matched && *rep.estimate.matched == 0,
        "limit " + rep.estimate.limit.to_string(8));
  });
  guarded(s, "perturbed recurrence", [&] {
    Recurrence rec = poincare_perturbation(Recurrence::from_roots({{Rational(1), 1}, {Rational(3), 1}}), Rational(1));
    SolutionBundle b(rec, RatMat{{1}, {2}});
    auto est = pituk_nth_root(b.sequence(0, 202), 2, 1, 200, prec);
    match_spectrum(est, {BigFloat(3L, prec), BigFloat(1L, prec)}, 0.05);
    add(s, "perturbed recurrence", est.within_tolerance, "limit " + est.limit.to_string(8));
  });
  return s;
}

SuiteResult criterion_suite(std::uint64_t seed) {
  SuiteResult s{"criterion", seed, {}};
  Rng rng(seed);
  const mpfr_prec_t prec = 128;
  guarded(s, "linear-form identity", [&] {
    bool ok = true;
    for (int rep = 0; rep < 5; ++rep) {
      const int m = 3, l = 2;
      std::vector<Gamma> g;
      for (int i = 0; i < m; ++i) g.push_back(Gamma::rational(make_rational(rand_int(rng, -9, 9), rand_int(rng, 1, 9))));
      RatMat q = random_int_matrix(rng, 1, l, 9), p = random_int_matrix(rng, m, l, 9);
      auto fam = ApproximationFamily::from_tables(
          m, l, false, g, 0, {{q(0, 0), q(0, 1)}},
          {{{p(0, 0), p(0, 1)}, {p(1, 0), p(1, 1)}, {p(2, 0), p(2, 1)}}});
      ok = ok && linear_form_identity_check(fam, 0);
    }
    add(s, "linear-form identity", ok);
  });
  guarded(s, "refined integrality", [&] {
    bool ok = true;
    std::size_t minors = 0;
    for (int k = 1; k <= 2; ++k)
      for (int M = 1; M <= 2; ++M) {
        auto fam = reciprocal_pade_family(k, M, Integer(5), std::min(2, k * M));
        auto plan = reciprocal_pade_plan(k, M, fam.nu_last());
        for (long n = 0; n <= 2; ++n) {
          auto a = integrality_audit(fam, plan, n);
          ok = ok && a.ok && check_plan(fam, plan, n).ok;
          minors += a.minors_checked;
        }
      }
    add(s, "refined integrality", ok, std::to_string(minors) + " scaled minors");
  });
  guarded(s, "refined negative control", [&] {
    auto fam = reciprocal_pade_family(2, 2, Integer(5), 2);
    auto plan = reciprocal_pade_plan(2, 2, fam.nu_last(), true);
    add(s, "refined negative control", !integrality_audit(fam, plan, 1).ok, "plan without the lcm factor");
  });
  guarded(s, "Pade family decay", [&] {
    auto fam = pade_family(1, {make_rational(1, 7), make_rational(2, 7), make_rational(3, 7)}, 2);
    auto rep = minor_decay_report(fam, 1, 12, prec);
    add(s, "Pade family decay", rep.all_decaying, std::to_string(rep.minors.size()) + " minors");
  });
  guarded(s, "eps matches linear forms", [&] {
    std::vector<Rational> al{make_rational(1, 7), make_rational(2, 7)};
    auto fam = pade_family(2, al, 1);
    auto e = eps_matrix(fam, 3, prec);
    auto lf = linear_forms_at_one(build_pade_system(2, 2, 3, al), prec);
    bool ok = true;
    for (int mu = 1; mu <= 4; ++mu) {
      int i = (mu - 1) % 2, j = (mu - 1) / 2;
      const BigFloat& a = e.value[static_cast<std::size_t>(mu - 1)][0];
      const BigFloat& b = lf.eps[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      ok = ok && agree_to_bits(a, b, prec - 16);
    }
    add(s, "eps matches linear forms", ok);
  });
  guarded(s, "thresholds", [&] {
    bool ok = ceil_integer(example2_threshold(10, 10, 0)) == 1909 && ceil_integer(example2_threshold(11, 11, 0)) == 2717 &&
              ceil_integer(pathway_threshold(fixed_pathways().front())) == 2585;
    for (int k = 2; k <= 12; ++k)
      for (int m = 2; m <= 12; ++m) ok = ok && example2_threshold(k, m, 0) < dhk_baseline_threshold(k, m);
    add(s, "thresholds", ok, "1909, 2717, 2585 and the baseline comparison");
  });
  return s;
}

}  // namespace

std::vector<SuiteResult> run_suite(const std::string& name, std::uint64_t seed) {
  std::vector<SuiteResult> out;
  auto one = [&](const std::string& n) {
    if (n == "pade" || n == "padé") out.push_back(pade_suite(seed));
    else if (n == "linalg") out.push_back(linalg_suite(seed));
    else if (n == "recurrence") out.push_back(recurrence_suite(seed));
    else if (n == "asymptotics") out.push_back(asymptotics_suite(seed));
    else if (n == "criterion") out.push_back(criterion_suite(seed));
    else throw std::invalid_argument("unknown suite: " + n);
  };
  if (name == "all")
    for (const auto& n : suite_names()) one(n);
  else
    one(name);
  return out;
}

}  // namespace lincrit
