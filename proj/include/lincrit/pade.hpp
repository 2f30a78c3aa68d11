#pragma once

#include "lincrit/bigfloat.hpp"
#include "lincrit/poly.hpp"
#include "lincrit/rational.hpp"

#include <stdexcept>
#include <vector>

namespace lincrit {

// Two independent computations of the same object disagreed: an implementation bug,
// never a property of the input.
class InconsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Type II Hermite-Pade system for Li_1..Li_k at the points -alpha_1..-alpha_m:
// V0(z) Li_j(-alpha_i z) - W_{i,j}(z) = O(z^{kmn+n+1}), deg V0, deg W_{i,j} <= kmn.
struct PadeSystem {
  int k = 0;
  int m = 0;
  long n = 0;
  std::vector<Rational> alphas;
  Poly V0;
  // W[i-1][j-1] = W_{i,j}
  std::vector<std::vector<Poly>> W;

  long degree() const { return static_cast<long>(k) * m * n; }
  const Poly& w(int i, int j) const { return W[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)]; }
};

// Throws std::invalid_argument unless k, m >= 1, n >= 0, m alphas, all nonzero and distinct.
void validate_pade_input(int k, int m, long n, const std::vector<Rational>& alphas);

// U_0 = prod (z + alpha_i)^{kn}, U_j = (1/n!) d^n/dz^n (z^n U_{j-1}), j = 1..k.
std::vector<Poly> build_U_chain(int k, int m, long n, const std::vector<Rational>& alphas);

// z^{kmn} U_k(1/z).
Poly V0_by_reversal(int k, int m, long n, const std::vector<Rational>& alphas);
// sum over 0 <= l_i <= kn of C(n+L, n)^k prod C(kn, l_i) alpha_i^{kn-l_i} z^{kmn-L}, L = sum l_i.
Poly V0_by_multisum(int k, int m, long n, const std::vector<Rational>& alphas);
// Both routes; throws InconsistencyError if they differ in any coefficient.
Poly build_V0(int k, int m, long n, const std::vector<Rational>& alphas);

// W_{i,j}(z) = sum_L [z^{kmn-L}]V0 * sum_{s=1}^{L} (-alpha_i)^s / s^j z^{s+kmn-L}.
std::vector<std::vector<Poly>> build_W(int k, int m, long n, const std::vector<Rational>& alphas);

// Builds V0 and W and confirms the order condition; throws InconsistencyError if it fails.
PadeSystem build_pade_system(int k, int m, long n, const std::vector<Rational>& alphas);

struct OrderCheck {
  bool ok = true;
  // First (i, j, degree) whose coefficient in V0 Li_j(-alpha_i z) - W_{i,j} is nonzero
  // below z^{kmn+n+1}; zero when ok.
  int i = 0;
  int j = 0;
  long degree = -1;
};

// Exact expansion with the series of Li_j(-alpha_i z) truncated at degree kmn+n.
OrderCheck verify_order(const PadeSystem& sys);

struct LinearForms {
  // eps[i-1][j-1] = V0(1) Li_j(-alpha_i) - W_{i,j}(1)
  std::vector<std::vector<BigFloat>> eps;
  // Li_j(|alpha_i|) |alpha_i|^{(km+1)n} max_{0<=l<=kn} C(n+ml, n)^k C(kn, l)^m
  std::vector<std::vector<BigFloat>> bound;
  bool within_bound = true;
  Rational V0_at_one;
  std::vector<std::vector<Rational>> W_at_one;
  mpfr_prec_t precision = 0;
};

// Linear forms at z = 1, with the polylogarithms evaluated at enough extra precision to absorb
// the cancellation; results agree with a doubled-precision rerun to prec bits.
// Throws std::domain_error if some |alpha_i| >= 1.
LinearForms linear_forms_at_one(const PadeSystem& sys, mpfr_prec_t prec);

// d_m^{kn} V0(1) in Z[1/q] and d_m^{kmn} d_{kmn}^j W_{i,j}(1) in Z[1/q] (for alpha_l = 1/(lq)).
bool denominator_structure_check(const PadeSystem& sys, const Integer& q);

// Points alpha_l = 1/(l q), l = 1..m.
std::vector<Rational> reciprocal_points(int m, const Integer& q);

// Depth-2 system at alpha = -1/q, beta = -2/q with values at z = 1.
struct Example1System {
  Integer q;
  long n = 0;
  Rational alpha, beta;
  // u(z;n) from the explicit double sum.
  Poly u;
  Rational u1, v1, v2, w1, w2;
};

// sum_{p,r=0}^{2n} C(2n,p) C(2n,r) C(5n-p-r, n)^2 alpha^p beta^r z^{4n-p-r}.
Poly example1_u(const Integer& q, long n);

// v1, v2 (w1, w2) by termwise integration of alpha int_0^1 (u(1)-u(-alpha t))/(1+alpha t) dt and
// the same with log t, using int t^l = 1/(l+1) and int t^l log t = -1/(l+1)^2.
// Cross-checks u(1) = V0(1), v1 = -W_{1,1}(1), v2 = W_{1,2}(1), w1 = -W_{2,1}(1), w2 = W_{2,2}(1)
// against the (k=2, m=2) system and throws InconsistencyError on mismatch. Requires |q| >= 3.
Example1System build_example1(const Integer& q, long n);

}  // namespace lincrit
