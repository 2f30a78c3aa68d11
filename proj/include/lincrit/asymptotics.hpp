#pragma once

#include "lincrit/bigfloat.hpp"
#include "lincrit/recurrence.hpp"
#include "lincrit/roots.hpp"

#include <optional>
#include <string>
#include <vector>

namespace lincrit {

// nth-root statistics s_n = ||x_n||^(1/n) over a window, and the extrapolated limit.
struct PitukEstimate {
  long n_start = 0;
  long n_end = 0;
  std::vector<long> indices;     // n values with a defined statistic
  std::vector<BigFloat> values;  // s_n for those n
  // Fit of log s_n = log L + c/n over the last half of the window.
  BigFloat limit;
  BigFloat slope;  // c
  // Every norm in the last half-window is zero: the solution is eventually zero.
  bool zero_solution = false;
  // Nearest element of a reference spectrum, when one was supplied.
  std::optional<std::size_t> matched;
  BigFloat matched_value;
  BigFloat relative_error;
  bool within_tolerance = false;
};

// Core estimator from precomputed norms: norms[i] is ||x_n|| for n = n_start + i (n_start >= 1).
PitukEstimate pituk_from_norms(const std::vector<BigFloat>& norms, long n_start);

// Scalar sequence x (indexed from 0): s_n = (|x_n| + ... + |x_{n+m-1}|)^(1/n), n in [n_start, n_end].
// x must hold at least n_end + m values. Norms are summed exactly before rounding.
PitukEstimate pituk_nth_root(const std::vector<Rational>& x, int m, long n_start, long n_end, mpfr_prec_t prec);

// Vector sequence with the l1 norm: s_n = (sum_i |v_n[i]|)^(1/n), v indexed from 0.
PitukEstimate pituk_nth_root(const std::vector<std::vector<Rational>>& v, long n_start, long n_end,
                             mpfr_prec_t prec);

// Matches est.limit against the nearest element of spectrum (relative error), setting the match fields.
void match_spectrum(PitukEstimate& est, const std::vector<BigFloat>& spectrum, double rel_tol);

struct CompoundSpectrum {
  std::vector<BigFloat> values;  // descending
  std::vector<BigFloat> radius;  // enclosure radius of each product
  std::vector<bool> tied;        // tied[i]: values[i] and values[i+1] not separated
};

// All C(m,l) products of l root moduli (moduli counted with multiplicity), descending.
CompoundSpectrum compound_spectrum_moduli(const RootProfile& profile, int l);
CompoundSpectrum compound_spectrum_moduli(const std::vector<BigFloat>& moduli, int l);

struct MinorAsymptoticsReport {
  int m = 0;
  int l = 0;
  long n_max = 0;
  bool independent = false;  // some l x l minor of x_n is nonzero in the last half-window
  PitukEstimate estimate;
  CompoundSpectrum spectrum;
  double tolerance = 0.05;
  bool passed = false;
  std::string message;
};

// Limit behaviour of the vector of l x l row minors [det x_n^(mu,-)]_mu of an l-column
// bundle. limit_charpoly is the characteristic polynomial of the limiting constant recurrence.
MinorAsymptoticsReport minor_asymptotics_check(const SolutionBundle& bundle, const Poly& limit_charpoly, long n_max,
                                               double rel_tol, mpfr_prec_t prec);

// alpha_n^(j) (1 + eps/(n+1)) for j < m, alpha_n^(m) unchanged: same limit, O(1/n) perturbation.
Recurrence poincare_perturbation(const Recurrence& base, const Rational& eps);

}  // namespace lincrit
