#pragma once

#include "lincrit/poly.hpp"
#include "lincrit/rational.hpp"

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace lincrit {

// Strictly increasing 1-based multi-index i_1 < ... < i_l inside {1..ambient}.
class IndexSet {
 public:
  IndexSet() = default;
  // Throws std::invalid_argument unless strictly increasing and within range.
  IndexSet(std::vector<int> indices, int ambient);

  // {1..n} inside {1..n}.
  static IndexSet full(int n);
  // All l-subsets of {1..ambient}, lexicographic order.
  static std::vector<IndexSet> all(int ambient, int l);

  std::size_t size() const { return idx_.size(); }
  int ambient() const { return ambient_; }
  const std::vector<int>& indices() const { return idx_; }
  int operator[](std::size_t i) const { return idx_[i]; }
  bool contains(int i) const;
  IndexSet complement() const;
  // Position of this set inside all(ambient, size()).
  std::size_t lex_rank() const;
  std::string to_string() const;

  friend bool operator==(const IndexSet& a, const IndexSet& b) {
    return a.ambient_ == b.ambient_ && a.idx_ == b.idx_;
  }
  friend bool operator<(const IndexSet& a, const IndexSet& b) { return a.idx_ < b.idx_; }

 private:
  std::vector<int> idx_;
  int ambient_ = 0;
};

// Dense rectangular matrix of exact rationals, row-major, 0-based accessors.
class RatMat {
 public:
  RatMat() = default;
  RatMat(std::size_t rows, std::size_t cols);
  RatMat(std::initializer_list<std::initializer_list<Rational>> rows);
  static RatMat identity(std::size_t n);
  static RatMat diagonal(const std::vector<Rational>& d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  Rational& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  const std::vector<Rational>& data() const { return a_; }

  RatMat transpose() const;
  // Rows/columns picked by 1-based index sets.
  RatMat select(const IndexSet& rows, const IndexSet& cols) const;
  RatMat select_rows(const IndexSet& rows) const;
  RatMat select_cols(const IndexSet& cols) const;
  // [this ; below] and [this | right].
  RatMat stack_below(const RatMat& below) const;
  RatMat stack_right(const RatMat& right) const;
  bool is_integral() const;

  RatMat& operator+=(const RatMat& o);
  RatMat& operator-=(const RatMat& o);
  RatMat& operator*=(const Rational& s);
  friend RatMat operator+(RatMat a, const RatMat& b) { return a += b; }
  friend RatMat operator-(RatMat a, const RatMat& b) { return a -= b; }
  friend RatMat operator*(RatMat a, const Rational& s) { return a *= s; }
  friend RatMat operator*(const RatMat& a, const RatMat& b);
  friend bool operator==(const RatMat& a, const RatMat& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> a_;
};

std::string to_string(const RatMat& m);

// Exact determinant by fraction-free (Bareiss) elimination after clearing row denominators.
// Throws std::invalid_argument for non-square input.
Rational det(const RatMat& m);

// det of the sub-matrix on (rows, cols); throws on size mismatch or out-of-range indices.
Rational minor(const RatMat& m, const IndexSet& rows, const IndexSet& cols);

// l-th compound: C(m,l) x C(m,l) matrix of l x l minors, rows and columns lexicographic.
RatMat compound(const RatMat& m, int l);

std::size_t rank(const RatMat& m);

// Monic det(lambda I - m) via Faddeev-LeVerrier.
Poly charpoly(const RatMat& m);

// det(compound(m, l)) == det(m)^C(m-1, l-1).
bool sylvester_franke_check(const RatMat& m, int l);

// charpoly(compound(m, l)) == prod over l-subsets u of (lambda - prod_{i in u} eigenvalues[i]).
// The caller vouches for the eigenvalue list (with multiplicity).
bool compound_charpoly_check(const RatMat& m, const std::vector<Rational>& eigenvalues, int l);

// Sum over increasing mu of det a^(-,mu) det b^(mu,-) for a (l x m), b (m x l).
Rational binet_cauchy_sum(const RatMat& a, const RatMat& b);
bool binet_cauchy_check(const RatMat& a, const RatMat& b);

// det(e^T e) == sum over row choices mu of det(e^(mu,-))^2, for e of size m x l with l <= m.
bool gram_identity_check(const RatMat& e);

}  // namespace lincrit
