#include "lincrit/matrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace lincrit {

IndexSet::IndexSet(std::vector<int> indices, int ambient) : idx_(std::move(indices)), ambient_(ambient) {
  if (ambient < 0) throw std::invalid_argument("negative ambient size");
  for (std::size_t i = 0; i < idx_.size(); ++i) {
    if (idx_[i] < 1 || idx_[i] > ambient) throw std::invalid_argument("index out of range");
    if (i > 0 && idx_[i] <= idx_[i - 1]) throw std::invalid_argument("indices must be strictly increasing");
  }
}

IndexSet IndexSet::full(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = i + 1;
  return IndexSet(std::move(v), n);
}

std::vector<IndexSet> IndexSet::all(int ambient, int l) {
  std::vector<IndexSet> out;
  if (l < 0 || l > ambient) return out;
  std::vector<int> cur(static_cast<std::size_t>(l));
  for (int i = 0; i < l; ++i) cur[static_cast<std::size_t>(i)] = i + 1;
  while (true) {
    out.emplace_back(cur, ambient);
    int i = l - 1;
    while (i >= 0 && cur[static_cast<std::size_t>(i)] == ambient - l + i + 1) --i;
    if (i < 0) break;
    ++cur[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < l; ++j) cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

bool IndexSet::contains(int i) const {
  for (int v : idx_)
    if (v == i) return true;
  return false;
}

IndexSet IndexSet::complement() const {
  std::vector<int> v;
  for (int i = 1; i <= ambient_; ++i)
    if (!contains(i)) v.push_back(i);
  return IndexSet(std::move(v), ambient_);
}

std::size_t IndexSet::lex_rank() const {
  // Count the l-subsets that precede this one lexicographically.
  std::size_t r = 0;
  int l = static_cast<int>(idx_.size());
  int prev = 0;
  for (int i = 0; i < l; ++i) {
    for (int v = prev + 1; v < idx_[static_cast<std::size_t>(i)]; ++v)
      r += binomial(ambient_ - v, l - i - 1).get_ui();
    prev = idx_[static_cast<std::size_t>(i)];
  }
  return r;
}

std::string IndexSet::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < idx_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(idx_[i]);
  }
  return s + ")";
}

RatMat::RatMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

RatMat::RatMat(std::initializer_list<std::initializer_list<Rational>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  a_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
    for (const auto& v : r) a_.push_back(v);
  }
}

RatMat RatMat::identity(std::size_t n) {
  RatMat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RatMat RatMat::diagonal(const std::vector<Rational>& d) {
  RatMat m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

RatMat RatMat::transpose() const {
  RatMat t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

RatMat RatMat::select(const IndexSet& rows, const IndexSet& cols) const {
  if (rows.ambient() != static_cast<int>(rows_) || cols.ambient() != static_cast<int>(cols_))
    throw std::invalid_argument("index set ambient does not match matrix shape");
  RatMat s(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j)
      s(i, j) = (*this)(static_cast<std::size_t>(rows[i] - 1), static_cast<std::size_t>(cols[j] - 1));
  return s;
}

RatMat RatMat::select_rows(const IndexSet& rows) const { return select(rows, IndexSet::full(static_cast<int>(cols_))); }

RatMat RatMat::select_cols(const IndexSet& cols) const { return select(IndexSet::full(static_cast<int>(rows_)), cols); }

RatMat RatMat::stack_below(const RatMat& below) const {
  if (below.cols_ != cols_) throw std::invalid_argument("column count mismatch when stacking");
  RatMat s(rows_ + below.rows_, cols_);
  std::copy(a_.begin(), a_.end(), s.a_.begin());
  std::copy(below.a_.begin(), below.a_.end(), s.a_.begin() + static_cast<long>(a_.size()));
  return s;
}

RatMat RatMat::stack_right(const RatMat& right) const {
  if (right.rows_ != rows_) throw std::invalid_argument("row count mismatch when stacking");
  RatMat s(rows_, cols_ + right.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) s(i, j) = (*this)(i, j);
    for (std::size_t j = 0; j < right.cols_; ++j) s(i, cols_ + j) = right(i, j);
  }
  return s;
}

bool RatMat::is_integral() const {
  for (const auto& v : a_)
    if (!is_integer(v)) return false;
  return true;
}

RatMat& RatMat::operator+=(const RatMat& o) {
  if (o.rows_ != rows_ || o.cols_ != cols_) throw std::invalid_argument("shape mismatch in addition");
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
  return *this;
}

RatMat& RatMat::operator-=(const RatMat& o) {
  if (o.rows_ != rows_ || o.cols_ != cols_) throw std::invalid_argument("shape mismatch in subtraction");
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
  return *this;
}

RatMat& RatMat::operator*=(const Rational& s) {
  for (auto& v : a_) v *= s;
  return *this;
}

RatMat operator*(const RatMat& a, const RatMat& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("shape mismatch in product");
  RatMat c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Rational& x = a(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += x * b(k, j);
    }
  return c;
}

std::string to_string(const RatMat& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    s += i ? "; " : "";
    for (std::size_t j = 0; j < m.cols(); ++j) s += (j ? " " : "") + to_string(m(i, j));
  }
  return s + "]";
}

}  // namespace lincrit
