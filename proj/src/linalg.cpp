#include "lincrit/matrix.hpp"

#include <stdexcept>
#include <utility>

namespace lincrit {

namespace {

// Rows scaled to integers; returns the product of the row scale factors.
std::vector<std::vector<Integer>> integer_rows(const RatMat& m, Integer& scale) {
  std::vector<std::vector<Integer>> b(m.rows(), std::vector<Integer>(m.cols()));
  scale = 1;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Integer l = 1;
    for (std::size_t j = 0; j < m.cols(); ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
    for (std::size_t j = 0; j < m.cols(); ++j) b[i][j] = m(i, j).get_num() * (l / m(i, j).get_den());
    scale *= l;
  }
  return b;
}

// Fraction-free elimination in place. Returns the rank; for square input also sets the
// signed final pivot (the determinant of the integer matrix) in *det_out.
std::size_t bareiss(std::vector<std::vector<Integer>>& b, std::size_t cols, Integer* det_out) {
  const std::size_t rows = b.size();
  Integer prev = 1;
  int sign = 1;
  std::size_t r = 0;
  Integer t;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && b[p][c] == 0) ++p;
    if (p == rows) continue;
    if (p != r) {
      std::swap(b[p], b[r]);
      sign = -sign;
    }
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        t = b[i][j] * b[r][c] - b[i][c] * b[r][j];
        mpz_divexact(b[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      b[i][c] = 0;
    }
    prev = b[r][c];
    ++r;
  }
  if (det_out) *det_out = (r == rows && rows == cols) ? Integer(sign * prev) : Integer(0);
  return r;
}

}  // namespace

Rational det(const RatMat& m) {
  if (!m.is_square()) throw std::invalid_argument("determinant of a non-square matrix");
  if (m.rows() == 0) return 1;
  Integer scale;
  auto b = integer_rows(m, scale);
  Integer d;
  bareiss(b, m.cols(), &d);
  return make_rational(d, scale);
}

Rational minor(const RatMat& m, const IndexSet& rows, const IndexSet& cols) {
  if (rows.size() != cols.size()) throw std::invalid_argument("minor needs equally many rows and columns");
  return det(m.select(rows, cols));
}

RatMat compound(const RatMat& m, int l) {
  if (!m.is_square()) throw std::invalid_argument("compound of a non-square matrix");
  const int n = static_cast<int>(m.rows());
  if (l < 1 || l > n) throw std::invalid_argument("compound order out of range");
  auto sets = IndexSet::all(n, l);
  RatMat c(sets.size(), sets.size());
  for (std::size_t i = 0; i < sets.size(); ++i)
    for (std::size_t j = 0; j < sets.size(); ++j) c(i, j) = minor(m, sets[i], sets[j]);
  return c;
}

std::size_t rank(const RatMat& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Integer scale;
  auto b = integer_rows(m, scale);
  return bareiss(b, m.cols(), nullptr);
}

Poly charpoly(const RatMat& a) {
  if (!a.is_square()) throw std::invalid_argument("characteristic polynomial of a non-square matrix");
  const std::size_t n = a.rows();
  std::vector<Rational> c(n + 1);
  c[n] = 1;
  RatMat mk(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    RatMat next = a * mk;
    for (std::size_t i = 0; i < n; ++i) next(i, i) += c[n - k + 1];
    mk = std::move(next);
    RatMat am = a * mk;
    Rational tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += am(i, i);
    c[n - k] = -tr / Rational(static_cast<long>(k));
  }
  return Poly(std::move(c));
}

bool sylvester_franke_check(const RatMat& m, int l) {
  const long n = static_cast<long>(m.rows());
  Rational lhs = det(compound(m, l));
  Rational rhs = pow(det(m), binomial(n - 1, l - 1).get_ui());
  return lhs == rhs;
}

bool compound_charpoly_check(const RatMat& m, const std::vector<Rational>& eigenvalues, int l) {
  const int n = static_cast<int>(m.rows());
  if (static_cast<int>(eigenvalues.size()) != n) throw std::invalid_argument("eigenvalue count mismatch");
  Poly expected = Poly::constant(1);
  for (const auto& u : IndexSet::all(n, l)) {
    Rational prod = 1;
    for (int i : u.indices()) prod *= eigenvalues[static_cast<std::size_t>(i - 1)];
    expected *= Poly::linear_factor(prod);
  }
  return charpoly(compound(m, l)) == expected;
}

Rational binet_cauchy_sum(const RatMat& a, const RatMat& b) {
  if (a.cols() != b.rows() || a.rows() != b.cols()) throw std::invalid_argument("shapes must be l x m and m x l");
  const int l = static_cast<int>(a.rows());
  const int m = static_cast<int>(a.cols());
  if (l > m) throw std::invalid_argument("Binet-Cauchy sum needs l <= m");
  Rational s = 0;
  for (const auto& mu : IndexSet::all(m, l)) s += det(a.select_cols(mu)) * det(b.select_rows(mu));
  return s;
}

bool binet_cauchy_check(const RatMat& a, const RatMat& b) { return det(a * b) == binet_cauchy_sum(a, b); }

bool gram_identity_check(const RatMat& e) {
  const int m = static_cast<int>(e.rows());
  const int l = static_cast<int>(e.cols());
  if (l > m) throw std::invalid_argument("Gram identity needs l <= m");
  Rational s = 0;
  for (const auto& mu : IndexSet::all(m, l)) {
    Rational d = det(e.select_rows(mu));
    s += d * d;
  }
  return det(e.transpose() * e) == s;
}

}  // namespace lincrit
