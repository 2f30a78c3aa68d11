#include "lincrit/pade.hpp"

#include "lincrit/polylog.hpp"

#include <cmath>
#include <functional>

namespace lincrit {

void validate_pade_input(int k, int m, long n, const std::vector<Rational>& alphas) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  if (m < 1) throw std::invalid_argument("m must be positive");
  if (n < 0) throw std::invalid_argument("n must be nonnegative");
  if (static_cast<int>(alphas.size()) != m) throw std::invalid_argument("expected m points alpha_i");
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (alphas[i] == 0) throw std::invalid_argument("alpha_i must be nonzero");
    for (std::size_t j = 0; j < i; ++j)
      if (alphas[i] == alphas[j]) throw std::invalid_argument("alpha_i must be pairwise distinct");
  }
}

std::vector<Poly> build_U_chain(int k, int m, long n, const std::vector<Rational>& alphas) {
  validate_pade_input(k, m, n, alphas);
  Poly u0 = Poly::constant(1);
  for (const auto& a : alphas) u0 *= Poly{a, Rational(1)}.pow(static_cast<unsigned>(k * n));
  Rational inv_fact = 1;
  for (long i = 2; i <= n; ++i) inv_fact /= i;
  std::vector<Poly> chain{u0};
  Poly zn = Poly::monomial(1, static_cast<std::size_t>(n));
  for (int j = 1; j <= k; ++j) chain.push_back((zn * chain.back()).derivative(static_cast<unsigned>(n)) * inv_fact);
  return chain;
}

Poly V0_by_reversal(int k, int m, long n, const std::vector<Rational>& alphas) {
  auto chain = build_U_chain(k, m, n, alphas);
  return chain.back().reversed(static_cast<std::size_t>(static_cast<long>(k) * m * n));
}

Poly V0_by_multisum(int k, int m, long n, const std::vector<Rational>& alphas) {
  validate_pade_input(k, m, n, alphas);
  const long kn = static_cast<long>(k) * n;
  const long N = kn * m;
  // Per-point factors C(kn, l) alpha^{kn-l}.
  std::vector<std::vector<Rational>> f(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i)
    for (long l = 0; l <= kn; ++l)
      f[static_cast<std::size_t>(i)].push_back(Rational(binomial(kn, l)) *
                                               pow(alphas[static_cast<std::size_t>(i)], static_cast<unsigned long>(kn - l)));
  std::vector<Rational> c(static_cast<std::size_t>(N + 1));
  std::vector<long> l(static_cast<std::size_t>(m), 0);
  while (true) {
    long L = 0;
    Rational t = 1;
    for (int i = 0; i < m; ++i) {
      L += l[static_cast<std::size_t>(i)];
      t *= f[static_cast<std::size_t>(i)][static_cast<std::size_t>(l[static_cast<std::size_t>(i)])];
    }
    t *= Rational(pow(binomial(n + L, n), static_cast<unsigned long>(k)));
    c[static_cast<std::size_t>(N - L)] += t;
    int i = 0;
    while (i < m && l[static_cast<std::size_t>(i)] == kn) l[static_cast<std::size_t>(i++)] = 0;
    if (i == m) break;
    ++l[static_cast<std::size_t>(i)];
  }
  return Poly(std::move(c));
}

Poly build_V0(int k, int m, long n, const std::vector<Rational>& alphas) {
  Poly a = V0_by_reversal(k, m, n, alphas);
  Poly b = V0_by_multisum(k, m, n, alphas);
  if (!(a == b)) throw InconsistencyError("V0 routes disagree (reversal vs multi-sum)");
  return a;
}

namespace {

std::vector<std::vector<Poly>> W_from_V0(int k, int m, long n, const std::vector<Rational>& alphas, const Poly& v0) {
  const long N = static_cast<long>(k) * m * n;
  std::vector<std::vector<Poly>> W(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    const Rational mal = -alphas[static_cast<std::size_t>(i)];
    std::vector<Rational> powers(static_cast<std::size_t>(N + 1));
    powers[0] = 1;
    for (long s = 1; s <= N; ++s) powers[static_cast<std::size_t>(s)] = powers[static_cast<std::size_t>(s - 1)] * mal;
    for (int j = 1; j <= k; ++j) {
      std::vector<Rational> c(static_cast<std::size_t>(N + 1));
      for (long L = 1; L <= N; ++L) {
        const Rational v = v0.coeff(static_cast<std::size_t>(N - L));
        if (v == 0) continue;
        for (long s = 1; s <= L; ++s)
          c[static_cast<std::size_t>(s + N - L)] +=
              v * powers[static_cast<std::size_t>(s)] / Rational(pow(Integer(s), static_cast<unsigned long>(j)));
      }
      W[static_cast<std::size_t>(i)].emplace_back(std::move(c));
    }
  }
  return W;
}

}  // namespace

std::vector<std::vector<Poly>> build_W(int k, int m, long n, const std::vector<Rational>& alphas) {
  return W_from_V0(k, m, n, alphas, build_V0(k, m, n, alphas));
}

PadeSystem build_pade_system(int k, int m, long n, const std::vector<Rational>& alphas) {
  PadeSystem sys;
  sys.k = k;
  sys.m = m;
  sys.n = n;
  sys.alphas = alphas;
  sys.V0 = build_V0(k, m, n, alphas);
  sys.W = W_from_V0(k, m, n, alphas, sys.V0);
  OrderCheck oc = verify_order(sys);
  if (!oc.ok)
    throw InconsistencyError("order condition fails at (i,j)=(" + std::to_string(oc.i) + "," + std::to_string(oc.j) +
                             "), degree " + std::to_string(oc.degree));
  return sys;
}

OrderCheck verify_order(const PadeSystem& sys) {
  const long N = sys.degree();
  const long top = N + sys.n;
  OrderCheck out;
  for (int i = 1; i <= sys.m; ++i) {
    const Rational mal = -sys.alphas[static_cast<std::size_t>(i - 1)];
    for (int j = 1; j <= sys.k; ++j) {
      std::vector<Rational> series(static_cast<std::size_t>(top + 1));
      Rational p = 1;
      for (long s = 1; s <= top; ++s) {
        p *= mal;
        series[static_cast<std::size_t>(s)] = p / Rational(pow(Integer(s), static_cast<unsigned long>(j)));
      }
      Poly prod = (sys.V0 * Poly(std::move(series))).truncated(static_cast<std::size_t>(top));
      Poly rem = prod - sys.w(i, j);
      for (long d = 0; d <= top; ++d) {
        if (rem.coeff(static_cast<std::size_t>(d)) != 0) {
          out.ok = false;
          out.i = i;
          out.j = j;
          out.degree = d;
          return out;
        }
      }
    }
  }
  return out;
}

LinearForms linear_forms_at_one(const PadeSystem& sys, mpfr_prec_t prec) {
  for (const auto& a : sys.alphas)
    if (abs(a) >= 1) throw std::domain_error("linear forms at z = 1 need |alpha_i| < 1");
  LinearForms out;
  out.V0_at_one = sys.V0(Rational(1));
  for (int i = 1; i <= sys.m; ++i) {
    out.W_at_one.emplace_back();
    for (int j = 1; j <= sys.k; ++j) out.W_at_one.back().push_back(sys.w(i, j)(Rational(1)));
  }
  // Bounds at the requested precision.
  Integer mx = 0;
  const long kn = static_cast<long>(sys.k) * sys.n;
  for (long l = 0; l <= kn; ++l) {
    Integer t = pow(binomial(sys.n + sys.m * l, sys.n), static_cast<unsigned long>(sys.k)) *
                pow(binomial(kn, l), static_cast<unsigned long>(sys.m));
    if (t > mx) mx = t;
  }
  const unsigned long e = static_cast<unsigned long>((static_cast<long>(sys.k) * sys.m + 1) * sys.n);
  for (int i = 1; i <= sys.m; ++i) {
    out.bound.emplace_back();
    Rational a = abs(sys.alphas[static_cast<std::size_t>(i - 1)]);
    for (int j = 1; j <= sys.k; ++j) {
      BigFloat b = polylog(static_cast<unsigned>(j), a, prec) * BigFloat(pow(a, e), prec) * BigFloat(mx, prec);
      out.bound.back().push_back(b);
    }
  }
  // Cancellation: |V0(1) Li_j| against the bound, in bits.
  long cancel = 0;
  if (out.V0_at_one != 0) {
    BigFloat v(abs(out.V0_at_one), 64);
    for (const auto& row : out.bound)
      for (const auto& b : row) {
        long bits = v.exponent() - b.exponent() + 2;
        if (bits > cancel) cancel = bits;
      }
  }
  using Grid = std::vector<std::vector<BigFloat>>;
  std::function<Grid(mpfr_prec_t)> compute = [&](mpfr_prec_t p) {
    Grid g;
    BigFloat v(out.V0_at_one, p);
    for (int i = 1; i <= sys.m; ++i) {
      g.emplace_back();
      for (int j = 1; j <= sys.k; ++j) {
        BigFloat li = polylog(static_cast<unsigned>(j), -sys.alphas[static_cast<std::size_t>(i - 1)], p);
        g.back().push_back(v * li - BigFloat(out.W_at_one[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)], p));
      }
    }
    return g;
  };
  std::function<bool(const Grid&, const Grid&, mpfr_prec_t)> accept = [prec](const Grid& a, const Grid& b, mpfr_prec_t) {
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < a[i].size(); ++j)
        if (!agree_to_bits(a[i][j], b[i][j], static_cast<long>(prec))) return false;
    return true;
  };
  mpfr_prec_t used = 0;
  Grid g = with_escalation(compute, accept, prec + cancel + 32, 3, &used);
  out.precision = prec;
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < g[i].size(); ++j) {
      g[i][j] = g[i][j].with_precision(prec);
      if (abs(g[i][j]) > out.bound[i][j]) out.within_bound = false;
    }
  out.eps = std::move(g);
  return out;
}

bool denominator_structure_check(const PadeSystem& sys, const Integer& q) {
  const Integer dm = lcm_upto(static_cast<unsigned long>(sys.m));
  const long N = sys.degree();
  const Integer dN = N >= 1 ? lcm_upto(static_cast<unsigned long>(N)) : Integer(1);
  Rational v = Rational(pow(dm, static_cast<unsigned long>(sys.k * sys.n))) * sys.V0(Rational(1));
  if (!in_localization(v, q)) return false;
  for (int i = 1; i <= sys.m; ++i)
    for (int j = 1; j <= sys.k; ++j) {
      Rational w = Rational(pow(dm, static_cast<unsigned long>(N)) * pow(dN, static_cast<unsigned long>(j))) *
                   sys.w(i, j)(Rational(1));
      if (!in_localization(w, q)) return false;
    }
  return true;
}

std::vector<Rational> reciprocal_points(int m, const Integer& q) {
  if (q == 0) throw std::invalid_argument("q must be nonzero");
  std::vector<Rational> a;
  for (int l = 1; l <= m; ++l) a.push_back(make_rational(1, Integer(l) * q));
  return a;
}

Poly example1_u(const Integer& q, long n) {
  if (abs(q) < 3) throw std::invalid_argument("example 1 needs |q| >= 3");
  if (n < 0) throw std::invalid_argument("n must be nonnegative");
  const Rational alpha = make_rational(-1, q);
  const Rational beta = make_rational(-2, q);
  std::vector<Rational> c(static_cast<std::size_t>(4 * n + 1));
  for (long p = 0; p <= 2 * n; ++p)
    for (long r = 0; r <= 2 * n; ++r) {
      Integer b = binomial(5 * n - p - r, n);
      c[static_cast<std::size_t>(4 * n - p - r)] += Rational(binomial(2 * n, p) * binomial(2 * n, r) * b * b) *
                                                   pow(alpha, static_cast<unsigned long>(p)) *
                                                   pow(beta, static_cast<unsigned long>(r));
    }
  return Poly(std::move(c));
}

namespace {

// g int_0^1 (u(1) - u(-g t)) / (1 + g t) w(t) dt with weight 1 (log_weight false) or log t.
Rational moment_form(const Poly& u, const Rational& g, bool log_weight) {
  // (u(1) - u(-g t)) / (1 + g t) = sum_a u_a sum_{i<a} (-g t)^i.
  Rational s = 0;
  const auto& c = u.coeffs();
  for (std::size_t a = 1; a < c.size(); ++a) {
    if (c[a] == 0) continue;
    Rational inner = 0;
    Rational p = 1;
    for (std::size_t i = 0; i < a; ++i) {
      Rational d = static_cast<long>(i + 1);
      inner += log_weight ? Rational(-p / (d * d)) : Rational(p / d);
      p *= -g;
    }
    s += c[a] * inner;
  }
  return g * s;
}

}  // namespace

Example1System build_example1(const Integer& q, long n) {
  Example1System e;
  e.q = q;
  e.n = n;
  e.alpha = make_rational(-1, q);
  e.beta = make_rational(-2, q);
  e.u = example1_u(q, n);
  e.u1 = e.u(Rational(1));
  e.v1 = moment_form(e.u, e.alpha, false);
  e.v2 = moment_form(e.u, e.alpha, true);
  e.w1 = moment_form(e.u, e.beta, false);
  e.w2 = moment_form(e.u, e.beta, true);
  PadeSystem sys = build_pade_system(2, 2, n, {e.alpha, e.beta});
  const Rational one(1);
  if (e.u1 != sys.V0(one)) throw InconsistencyError("u(1;n) differs from V0(1)");
  if (e.v1 != -sys.w(1, 1)(one) || e.v2 != sys.w(1, 2)(one) || e.w1 != -sys.w(2, 1)(one) || e.w2 != sys.w(2, 2)(one))
    throw InconsistencyError("integral forms differ from W_{i,j}(1)");
  return e;
}

}  // namespace lincrit
