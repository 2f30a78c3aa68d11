#pragma once

#include "lincrit/matrix.hpp"
#include "lincrit/rational.hpp"

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace lincrit {

// Raised when alpha_n^(0) or alpha_n^(m) vanishes at a queried index.
class DegenerateCoefficient : public std::domain_error {
 public:
  DegenerateCoefficient(const std::string& what, long n) : std::domain_error(what), index(n) {}
  long index;
};

// alpha_n^(m) x_{n+m} + ... + alpha_n^(0) x_n = 0.
// The coefficient source returns the m+1 values alpha_n^(0..m); results are memoized.
// Copies share the memo table, which is guarded for concurrent use.
class Recurrence {
 public:
  using CoeffFn = std::function<std::vector<Rational>(long n)>;

  Recurrence(int order, CoeffFn coeffs);
  // Same coefficients for every n.
  static Recurrence constant(std::vector<Rational> coeffs);
  // Coefficients given for n = 0..table.size()-1; queries past the end throw std::out_of_range.
  static Recurrence from_table(int order, std::vector<std::vector<Rational>> table);
  // Monic constant recurrence whose characteristic polynomial is prod (lambda - r)^mult.
  static Recurrence from_roots(const std::vector<std::pair<Rational, int>>& roots);

  int order() const { return order_; }
  // alpha_n^(0..m). Throws DegenerateCoefficient when alpha_n^(0) or alpha_n^(m) is zero.
  std::vector<Rational> coeffs(long n) const;
  Rational coeff(long n, int j) const { return coeffs(n)[static_cast<std::size_t>(j)]; }

 private:
  struct Memo {
    std::mutex lock;
    std::map<long, std::vector<Rational>> values;
  };
  int order_;
  CoeffFn fn_;
  std::shared_ptr<Memo> memo_;
};

// Psi_n: superdiagonal ones, last row -alpha_n^(j-1)/alpha_n^(m), j = 1..m.
RatMat companion(const Recurrence& rec, long n);
// Psi_n^{-1}: first row -alpha_n^(j)/alpha_n^(0), j = 1..m, subdiagonal ones.
RatMat companion_inverse(const Recurrence& rec, long n);
// Psi_{n+count-1} ... Psi_n; the identity for count == 0.
RatMat companion_product(const Recurrence& rec, long n, long count);

// l tracked solutions given by their values at indices 0..m-1 (an m x l matrix).
// Values are extended lazily; extension is serialized, reads of computed prefixes are safe.
class SolutionBundle {
 public:
  SolutionBundle(Recurrence rec, RatMat initial);

  const Recurrence& recurrence() const { return rec_; }
  std::size_t count() const { return l_; }
  // Ensures x_0..x_{up_to} are cached.
  void iterate(long up_to) const;
  Rational value(long n, std::size_t j) const;
  // Sequence of solution j for indices 0..up_to.
  std::vector<Rational> sequence(std::size_t j, long up_to) const;
  // m x l matrix [x_{n+i}^{(j)}], i = 0..m-1.
  RatMat casoratian(long n) const;

 private:
  struct Cache {
    std::mutex lock;
    std::vector<std::vector<Rational>> cols;
  };
  Recurrence rec_;
  std::size_t l_;
  std::shared_ptr<Cache> cache_;
};

// Sign convention for the Abel relation det x_{n+1} = s (alpha_n^(0)/alpha_n^(m)) det x_n.
// Order uses s = (-1)^m, Index uses s = (-1)^n (kept as a negative control).
enum class AbelSign { Order, Index };

// Exact Abel relation at n for a bundle with l == m.
bool abel_check(const SolutionBundle& bundle, long n, AbelSign sign = AbelSign::Order);

// Constant recurrence with the given roots and multiplicities; basis C(n,k-1) lambda^(n-k+1)
// for k = 1..mult. Compares the Casoratian determinant with
// (prod lambda_i^k_i)^n prod_{i<j} (lambda_j - lambda_i)^(k_i k_j) for n = 0..n_max.
bool confluent_casoratian_check(const std::vector<std::pair<Rational, int>>& roots, long n_max = 5);
// The confluent basis as a bundle (columns ordered root by root, k ascending).
SolutionBundle confluent_bundle(const std::vector<std::pair<Rational, int>>& roots);

// Order-C(m,l) equation sum_k (-1)^k c_k y_{n+k} = 0 satisfied at n by every sequence
// y_n = det x_n^(mu, u) built from l solutions and a fixed column choice u.
struct MinorRecurrence {
  IndexSet mu;
  int l = 0;
  long n = 0;
  std::size_t order = 0;
  std::vector<Rational> c;  // c_0..c_order
  // Leading coefficient c_order vanishes: the equation does not determine y_{n+order}.
  bool degenerate = false;

  // sum_k (-1)^k c_k y[k] for y = (y_n, ..., y_{n+order}).
  Rational residual(const std::vector<Rational>& y) const;
};

MinorRecurrence minor_recurrence(const Recurrence& rec, const IndexSet& mu, int l, long n);

// det[det x_{n+j-1}^(mu,u)]_{j,u} == det[det P_{j-1}^(mu,nu)]_{j,nu} (det x_n)^C(m-1,l-1),
// with P_j = Psi_{n+j-1}...Psi_n and x_n the full m x m Casoratian of the bundle.
bool minor_basis_check(const SolutionBundle& bundle, const IndexSet& mu, int l, long n);

// [det x_{n+1}^(mu,-)]_mu == compound(Psi_n, l) [det x_n^(mu,-)]_mu for an l-column bundle.
bool compound_transfer_check(const SolutionBundle& bundle, long n);

// charpoly(compound(psi, l)).
Poly constant_minor_spectrum(const RatMat& psi, int l);

}  // namespace lincrit
