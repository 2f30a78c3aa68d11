#pragma once

#include "lincrit/rational.hpp"

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

namespace lincrit {

// Dense univariate polynomial over Q. coeffs()[i] multiplies z^i; the
// leading coefficient is nonzero unless the polynomial is zero (empty).
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Rational> coeffs);
  Poly(std::initializer_list<Rational> coeffs);

  static Poly constant(const Rational& c);
  static Poly monomial(const Rational& c, std::size_t degree);
  // (z - root)
  static Poly linear_factor(const Rational& root);

  // -1 for the zero polynomial.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  // Coefficient of z^i, zero beyond the degree.
  Rational coeff(std::size_t i) const;
  const Rational& leading() const;

  Rational operator()(const Rational& z) const;

  Poly derivative(unsigned times = 1) const;
  // z^d * p(1/z); requires d >= degree().
  Poly reversed(std::size_t d) const;
  // Terms of degree <= d.
  Poly truncated(std::size_t d) const;
  Poly pow(unsigned e) const;
  Poly monic() const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const Rational& s);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const Poly& b) { return a *= b; }
  friend Poly operator*(Poly a, const Rational& s) { return a *= s; }
  friend Poly operator*(const Rational& s, Poly a) { return a *= s; }
  friend Poly operator-(Poly a);
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

 private:
  void normalize();
  std::vector<Rational> c_;
};

// Exact n-fold formal derivative.
Poly poly_derivative(const Poly& p, unsigned times);

// Euclidean division; throws std::domain_error on a zero divisor.
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);

// Monic gcd (zero when both are zero).
Poly gcd(Poly a, Poly b);

// Square-free decomposition: pairs (factor, multiplicity) with p = lc * prod factor^mult,
// every factor monic, square-free and pairwise coprime.
std::vector<std::pair<Poly, int>> squarefree_factorization(const Poly& p);

std::string to_string(const Poly& p);

}  // namespace lincrit
