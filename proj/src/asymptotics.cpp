#include "lincrit/asymptotics.hpp"

#include <algorithm>
#include <cmath>

namespace lincrit {

PitukEstimate pituk_from_norms(const std::vector<BigFloat>& norms, long n_start) {
  if (n_start < 1) throw std::invalid_argument("nth-root statistics need n >= 1");
  if (norms.empty()) throw std::invalid_argument("empty window");
  PitukEstimate est;
  est.n_start = n_start;
  est.n_end = n_start + static_cast<long>(norms.size()) - 1;
  mpfr_prec_t prec = norms.front().precision();
  est.limit = BigFloat(0L, prec);
  est.slope = BigFloat(0L, prec);
  est.matched_value = BigFloat(0L, prec);
  est.relative_error = BigFloat(0L, prec);

  std::vector<BigFloat> xs, ys;
  const long half = n_start + (est.n_end - n_start) / 2;
  for (std::size_t i = 0; i < norms.size(); ++i) {
    long n = n_start + static_cast<long>(i);
    if (norms[i].sign() < 0) throw std::invalid_argument("norms must be nonnegative");
    if (norms[i].is_zero()) continue;
    BigFloat nf(n, prec);
    BigFloat ls = log(norms[i]) / nf;
    est.indices.push_back(n);
    est.values.push_back(exp(ls));
    if (n >= half) {
      xs.push_back(BigFloat(1L, prec) / nf);
      ys.push_back(ls);
    }
  }
  if (xs.empty()) {
    est.zero_solution = true;
    return est;
  }
  if (xs.size() == 1) {
    est.limit = exp(ys[0]);
    return est;
  }
  // Least squares y = a + c x.
  BigFloat cnt(static_cast<long>(xs.size()), prec);
  BigFloat sx(0L, prec), sy(0L, prec), sxx(0L, prec), sxy(0L, prec);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  BigFloat denom = cnt * sxx - sx * sx;
  BigFloat c = (cnt * sxy - sx * sy) / denom;
  BigFloat a = (sy - c * sx) / cnt;
  est.slope = c;
  est.limit = exp(a);
  return est;
}

PitukEstimate pituk_nth_root(const std::vector<Rational>& x, int m, long n_start, long n_end, mpfr_prec_t prec) {
  if (m < 1) throw std::invalid_argument("window width m must be positive");
  if (n_end < n_start) throw std::invalid_argument("empty window");
  if (static_cast<long>(x.size()) < n_end + m) throw std::invalid_argument("sequence too short for the window");
  std::vector<BigFloat> norms;
  for (long n = n_start; n <= n_end; ++n) {
    Rational s = 0;
    for (int i = 0; i < m; ++i) s += abs(x[static_cast<std::size_t>(n + i)]);
    norms.emplace_back(s, prec);
  }
  return pituk_from_norms(norms, n_start);
}

PitukEstimate pituk_nth_root(const std::vector<std::vector<Rational>>& v, long n_start, long n_end,
                             mpfr_prec_t prec) {
  if (n_end < n_start) throw std::invalid_argument("empty window");
  if (static_cast<long>(v.size()) <= n_end) throw std::invalid_argument("sequence too short for the window");
  std::vector<BigFloat> norms;
  for (long n = n_start; n <= n_end; ++n) {
    Rational s = 0;
    for (const auto& e : v[static_cast<std::size_t>(n)]) s += abs(e);
    norms.emplace_back(s, prec);
  }
  return pituk_from_norms(norms, n_start);
}

void match_spectrum(PitukEstimate& est, const std::vector<BigFloat>& spectrum, double rel_tol) {
  est.matched.reset();
  est.within_tolerance = false;
  if (est.zero_solution || spectrum.empty()) return;
  std::size_t best = 0;
  BigFloat best_err(0L, est.limit.precision());
  for (std::size_t i = 0; i < spectrum.size(); ++i) {
    BigFloat err = abs(est.limit - spectrum[i]);
    if (!spectrum[i].is_zero()) err /= abs(spectrum[i]);
    if (i == 0 || err < best_err) {
      best = i;
      best_err = err;
    }
  }
  est.matched = best;
  est.matched_value = spectrum[best];
  est.relative_error = best_err;
  est.within_tolerance = best_err.to_double() <= rel_tol;
}

namespace {

CompoundSpectrum spectrum_from(const std::vector<BigFloat>& moduli, const std::vector<BigFloat>& radius, int l) {
  const int m = static_cast<int>(moduli.size());
  if (l < 1 || l > m) throw std::invalid_argument("compound order out of range");
  struct Entry {
    BigFloat v, r;
  };
  std::vector<Entry> entries;
  for (const auto& u : IndexSet::all(m, l)) {
    std::size_t k0 = static_cast<std::size_t>(u[0] - 1);
    BigFloat p = moduli[k0];
    BigFloat up = add_up(p, radius[k0]);
    for (std::size_t i = 1; i < u.size(); ++i) {
      std::size_t k = static_cast<std::size_t>(u[i] - 1);
      p *= moduli[k];
      up = mul_up(up, add_up(moduli[k], radius[k]));
    }
    BigFloat r = add_up(sub_down(up, p), ulp_bound(p));
    if (r.sign() < 0) r = ulp_bound(p);
    entries.push_back({p, r});
  }
  std::stable_sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.v > b.v; });
  CompoundSpectrum out;
  for (auto& e : entries) {
    out.values.push_back(e.v);
    out.radius.push_back(e.r);
  }
  for (std::size_t i = 0; i + 1 < entries.size(); ++i)
    out.tied.push_back(!(sub_down(entries[i].v, entries[i].r) > add_up(entries[i + 1].v, entries[i + 1].r)));
  return out;
}

}  // namespace

CompoundSpectrum compound_spectrum_moduli(const std::vector<BigFloat>& moduli, int l) {
  std::vector<BigFloat> radius;
  for (const auto& m : moduli) radius.push_back(ulp_bound(m));
  return spectrum_from(moduli, radius, l);
}

CompoundSpectrum compound_spectrum_moduli(const RootProfile& profile, int l) {
  return spectrum_from(profile.moduli, profile.moduli_radius, l);
}

MinorAsymptoticsReport minor_asymptotics_check(const SolutionBundle& bundle, const Poly& limit_charpoly, long n_max,
                                               double rel_tol, mpfr_prec_t prec) {
  MinorAsymptoticsReport rep;
  rep.m = bundle.recurrence().order();
  rep.l = static_cast<int>(bundle.count());
  rep.n_max = n_max;
  rep.tolerance = rel_tol;
  if (limit_charpoly.degree() != rep.m) throw std::invalid_argument("limit polynomial degree must equal the order");
  if (n_max < 8) throw std::invalid_argument("window too short");
  auto mus = IndexSet::all(rep.m, rep.l);
  auto cols = IndexSet::full(rep.l);
  std::vector<std::vector<Rational>> minors;
  for (long n = 0; n <= n_max; ++n) {
    RatMat x = bundle.casoratian(n);
    std::vector<Rational> row;
    for (const auto& mu : mus) row.push_back(minor(x, mu, cols));
    minors.push_back(std::move(row));
  }
  for (long n = n_max / 2; n <= n_max && !rep.independent; ++n)
    for (const auto& v : minors[static_cast<std::size_t>(n)])
      if (v != 0) {
        rep.independent = true;
        break;
      }
  if (!rep.independent) {
    rep.message = "all minors vanish on the last half-window";
    return rep;
  }
  rep.estimate = pituk_nth_root(minors, 1, n_max, prec);
  RootProfile prof = poly_roots(limit_charpoly, prec);
  rep.spectrum = compound_spectrum_moduli(prof, rep.l);
  match_spectrum(rep.estimate, rep.spectrum.values, rel_tol);
  rep.passed = rep.estimate.within_tolerance;
  rep.message = rep.passed ? "limit matches a compound spectrum modulus" : "limit matches no compound spectrum modulus";
  return rep;
}

Recurrence poincare_perturbation(const Recurrence& base, const Rational& eps) {
  const int m = base.order();
  return Recurrence(m, [base, eps, m](long n) {
    auto a = base.coeffs(n);
    Rational f = 1 + eps / Rational(n + 1);
    for (int j = 0; j < m; ++j) a[static_cast<std::size_t>(j)] *= f;
    return a;
  });
}

}  // namespace lincrit
