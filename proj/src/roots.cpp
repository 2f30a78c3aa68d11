#include "lincrit/roots.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace lincrit {

ComplexBall eval_ball(const Poly& p, const ComplexBall& z) {
  mpfr_prec_t prec = z.mid().precision();
  if (p.is_zero()) return ComplexBall::exact(0, prec);
  const auto& c = p.coeffs();
  ComplexBall acc = ComplexBall::exact(c.back(), prec);
  for (std::size_t i = c.size() - 1; i-- > 0;) acc = acc * z + ComplexBall::exact(c[i], prec);
  return acc;
}

namespace {

BigComplex eval(const std::vector<BigComplex>& c, const BigComplex& z) {
  BigComplex acc = c.back();
  for (std::size_t i = c.size() - 1; i-- > 0;) {
    acc *= z;
    acc += c[i];
  }
  return acc;
}

// One square-free factor: Aberth iteration followed by inclusion radii.
bool solve_squarefree(const Poly& f, mpfr_prec_t wp, mpfr_prec_t target, std::vector<CertifiedRoot>& out) {
  const long deg = f.degree();
  if (deg == 1) {
    // Exact rational root; only the conversion rounds.
    ComplexBall r = ComplexBall::exact(-f.coeff(0) / f.coeff(1), wp);
    out.push_back({r.mid(), r.rad(), 1});
    return true;
  }
  std::vector<BigComplex> c, dc;
  for (const auto& a : f.coeffs()) c.emplace_back(BigFloat(a, wp));
  Poly df = f.derivative();
  for (const auto& a : df.coeffs()) dc.emplace_back(BigFloat(a, wp));

  // Start on a circle of radius |a0/an|^(1/n), rotated off the real axis.
  BigFloat rad = abs(BigFloat(f.coeff(0) / f.leading(), wp));
  if (rad.is_zero()) rad = BigFloat(1L, wp);
  rad = exp(log(rad) / BigFloat(deg, wp));
  std::vector<BigComplex> z;
  for (long k = 0; k < deg; ++k) {
    double ang = 0.4 + 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(deg);
    z.emplace_back(rad * BigFloat::from_double(std::cos(ang), wp), rad * BigFloat::from_double(std::sin(ang), wp));
  }
  BigFloat tol = pow2(-static_cast<long>(wp) + 8, wp);
  const int max_iter = 200 + 20 * static_cast<int>(deg);
  BigComplex one(BigFloat(1L, wp));
  for (int it = 0; it < max_iter; ++it) {
    BigFloat worst(0L, wp);
    for (long i = 0; i < deg; ++i) {
      auto& zi = z[static_cast<std::size_t>(i)];
      BigComplex pv = eval(c, zi);
      BigComplex dv = eval(dc, zi);
      if (dv.norm().is_zero()) continue;
      BigComplex ratio = pv / dv;
      BigComplex s(wp);
      for (long j = 0; j < deg; ++j)
        if (j != i) s += one / (zi - z[static_cast<std::size_t>(j)]);
      BigComplex w = ratio / (one - ratio * s);
      zi -= w;
      BigFloat rel = w.modulus();
      BigFloat mz = zi.modulus();
      if (!mz.is_zero()) rel /= mz;
      worst = max(worst, rel);
    }
    if (worst < tol) break;
  }

  // Inclusion radii: deg * |f(z_i)| / |lc * prod_{j != i}(z_i - z_j)|.
  std::vector<ComplexBall> balls;
  BigFloat zero(0L, wp);
  for (auto& zi : z) balls.emplace_back(zi, zero);
  ComplexBall lc = ComplexBall::exact(f.leading(), wp);
  std::vector<CertifiedRoot> found;
  for (long i = 0; i < deg; ++i) {
    const auto& bi = balls[static_cast<std::size_t>(i)];
    BigFloat num = eval_ball(f, bi).abs_upper();
    ComplexBall den = lc;
    for (long j = 0; j < deg; ++j)
      if (j != i) den = den * (bi - balls[static_cast<std::size_t>(j)]);
    BigFloat dl = den.abs_lower();
    if (dl.is_zero()) return false;
    BigFloat r = mul_up(BigFloat(deg, wp), div_up(num, dl));
    found.push_back({bi.mid(), r, 1});
  }
  BigFloat limit = pow2(-static_cast<long>(target) / 2, wp);
  for (std::size_t i = 0; i < found.size(); ++i) {
    if (!(found[i].radius < limit)) return false;
    for (std::size_t j = i + 1; j < found.size(); ++j) {
      BigFloat gap = (found[i].z - found[j].z).modulus();
      if (!(gap > add_up(add_up(found[i].radius, found[j].radius), ulp_bound(gap)))) return false;
    }
  }
  for (auto& r : found) out.push_back(std::move(r));
  return true;
}

}  // namespace

RootProfile poly_roots(const Poly& p, mpfr_prec_t prec) {
  if (p.degree() < 1) throw std::invalid_argument("root finding needs degree >= 1");
  auto factors = squarefree_factorization(p);
  mpfr_prec_t wp = prec + 32;
  for (int attempt = 0; attempt <= 3; ++attempt, wp *= 2) {
    std::vector<CertifiedRoot> roots;
    bool ok = true;
    for (const auto& [f, mult] : factors) {
      std::size_t before = roots.size();
      if (!solve_squarefree(f, wp, prec, roots)) {
        ok = false;
        break;
      }
      for (std::size_t i = before; i < roots.size(); ++i) roots[i].multiplicity = mult;
    }
    if (!ok) continue;

    RootProfile prof;
    prof.precision = wp;
    struct Entry {
      BigFloat mod, rad;
    };
    std::vector<Entry> entries;
    for (const auto& r : roots)
      for (int k = 0; k < r.multiplicity; ++k) entries.push_back({r.z.modulus(), add_up(r.radius, ulp_bound(r.z.modulus()))});
    std::stable_sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.mod > b.mod; });
    for (auto& e : entries) {
      prof.moduli.push_back(e.mod);
      prof.moduli_radius.push_back(e.rad);
    }
    for (std::size_t i = 0; i + 1 < entries.size(); ++i) {
      bool t = !(sub_down(entries[i].mod, entries[i].rad) > add_up(entries[i + 1].mod, entries[i + 1].rad));
      prof.tied.push_back(t);
      prof.any_tie = prof.any_tie || t;
    }
    prof.roots = std::move(roots);
    return prof;
  }
  throw PrecisionError("root enclosures did not separate after three precision escalations");
}

}  // namespace lincrit
