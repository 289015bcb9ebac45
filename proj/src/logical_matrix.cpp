#include "bnet/logical_matrix.hpp"

#include <sstream>

#include "bnet/errors.hpp"

namespace bnet {

dense_matrix delta_vector::to_dense() const {
  dense_matrix m(dim, 1);
  m.at(index - 1, 0) = 1;
  return m;
}

logical_matrix::logical_matrix(int64_t rows, std::vector<int64_t> cols)
    : rows_(rows), cols_(std::move(cols)) {
  if (rows_ < 1) throw dimension_error("logical_matrix: row count must be positive");
  for (int64_t v : cols_)
    if (v < 1 || v > rows_)
      throw dimension_error("logical_matrix: column index " + std::to_string(v) +
                            " out of range 1.." + std::to_string(rows_));
}

logical_matrix logical_matrix::identity(int64_t p) {
  std::vector<int64_t> c(static_cast<size_t>(p));
  for (int64_t j = 0; j < p; ++j) c[static_cast<size_t>(j)] = j + 1;
  return logical_matrix(p, std::move(c));
}

logical_matrix logical_matrix::constant(int64_t p, int64_t q, int64_t i) {
  return logical_matrix(p, std::vector<int64_t>(static_cast<size_t>(q), i));
}

bool logical_matrix::is_permutation() const {
  if (rows_ != cols()) return false;
  std::vector<char> seen(static_cast<size_t>(rows_), 0);
  for (int64_t v : cols_) {
    if (seen[static_cast<size_t>(v - 1)]) return false;
    seen[static_cast<size_t>(v - 1)] = 1;
  }
  return true;
}

logical_matrix logical_matrix::permutation_transpose() const {
  if (!is_permutation()) throw dimension_error("permutation_transpose: matrix is not a permutation");
  std::vector<int64_t> inv(cols_.size());
  for (int64_t j = 1; j <= cols(); ++j) inv[static_cast<size_t>(col(j) - 1)] = j;
  return logical_matrix(rows_, std::move(inv));
}

dense_matrix logical_matrix::to_dense() const {
  dense_matrix m(rows_, cols());
  for (int64_t j = 1; j <= cols(); ++j) m.at(col(j) - 1, j - 1) = 1;
  return m;
}

std::string logical_matrix::str() const {
  std::ostringstream os;
  os << "delta_" << rows_ << '[';
  for (int64_t j = 1; j <= cols(); ++j) {
    if (j > 1) os << ',';
    os << col(j);
  }
  os << ']';
  return os.str();
}

zero_extended_matrix::zero_extended_matrix(int64_t rows, std::vector<int64_t> cols)
    : rows_(rows), cols_(std::move(cols)) {
  if (rows_ < 1) throw dimension_error("zero_extended_matrix: row count must be positive");
  for (int64_t v : cols_)
    if (v < 0 || v > rows_)
      throw dimension_error("zero_extended_matrix: column index " + std::to_string(v) +
                            " out of range 0.." + std::to_string(rows_));
}

zero_extended_matrix::zero_extended_matrix(const logical_matrix& m)
    : rows_(m.rows()), cols_(m.col_indices().begin(), m.col_indices().end()) {}

bool zero_extended_matrix::has_zero_column() const {
  for (int64_t v : cols_)
    if (v == 0) return true;
  return false;
}

dense_matrix zero_extended_matrix::to_dense() const {
  dense_matrix m(rows_, cols());
  for (int64_t j = 1; j <= cols(); ++j)
    if (col(j) != 0) m.at(col(j) - 1, j - 1) = 1;
  return m;
}

std::string zero_extended_matrix::str() const {
  std::ostringstream os;
  os << "delta_" << rows_ << '[';
  for (int64_t j = 1; j <= cols(); ++j) {
    if (j > 1) os << ',';
    os << col(j);
  }
  os << ']';
  return os.str();
}

logical_matrix compose(const logical_matrix& a, const logical_matrix& b) {
  if (a.cols() != b.rows())
    throw dimension_error("compose: cols(A) " + std::to_string(a.cols()) + " != rows(B) " +
                          std::to_string(b.rows()));
  std::vector<int64_t> c(static_cast<size_t>(b.cols()));
  for (int64_t j = 1; j <= b.cols(); ++j) c[static_cast<size_t>(j - 1)] = a.col(b.col(j));
  return logical_matrix(a.rows(), std::move(c));
}

zero_extended_matrix compose(const logical_matrix& a, const zero_extended_matrix& b) {
  if (a.cols() != b.rows()) throw dimension_error("compose: inner dimension mismatch");
  std::vector<int64_t> c(static_cast<size_t>(b.cols()));
  for (int64_t j = 1; j <= b.cols(); ++j) {
    int64_t t = b.col(j);
    c[static_cast<size_t>(j - 1)] = t == 0 ? 0 : a.col(t);
  }
  return zero_extended_matrix(a.rows(), std::move(c));
}

logical_matrix khatri_rao(const logical_matrix& a, const logical_matrix& b) {
  if (a.cols() != b.cols()) throw dimension_error("khatri_rao: column counts differ");
  std::vector<int64_t> c(static_cast<size_t>(a.cols()));
  for (int64_t j = 1; j <= a.cols(); ++j)
    c[static_cast<size_t>(j - 1)] = (a.col(j) - 1) * b.rows() + b.col(j);
  return logical_matrix(a.rows() * b.rows(), std::move(c));
}

logical_matrix kron(const logical_matrix& a, const logical_matrix& b) {
  std::vector<int64_t> c(static_cast<size_t>(a.cols() * b.cols()));
  for (int64_t j = 1; j <= a.cols(); ++j)
    for (int64_t l = 1; l <= b.cols(); ++l)
      c[static_cast<size_t>((j - 1) * b.cols() + l - 1)] = (a.col(j) - 1) * b.rows() + b.col(l);
  return logical_matrix(a.rows() * b.rows(), std::move(c));
}

logical_matrix swap_matrix(int64_t m, int64_t n) {
  std::vector<int64_t> c(static_cast<size_t>(m * n));
  for (int64_t i = 1; i <= m; ++i)
    for (int64_t j = 1; j <= n; ++j) c[static_cast<size_t>((i - 1) * n + j - 1)] = (j - 1) * m + i;
  return logical_matrix(m * n, std::move(c));
}

delta_vector apply(const logical_matrix& a, const delta_vector& x) {
  if (a.cols() != x.dim) throw dimension_error("apply: dimension mismatch");
  return delta_vector{a.rows(), a.col(x.index)};
}

delta_vector stp(const delta_vector& x, const delta_vector& y) {
  return delta_vector{x.dim * y.dim, (x.index - 1) * y.dim + y.index};
}

delta_vector state_index_encode(std::span<const int> bits) {
  int64_t idx = 0;
  for (int b : bits) idx = idx * 2 + (b ? 0 : 1);
  int64_t dim = int64_t{1} << bits.size();
  return delta_vector{dim, idx + 1};
}

std::vector<int> state_index_decode(int64_t n, int64_t index) {
  std::vector<int> bits(static_cast<size_t>(n));
  int64_t v = index - 1;
  for (int64_t i = n - 1; i >= 0; --i) {
    bits[static_cast<size_t>(i)] = (v & 1) ? 0 : 1;
    v >>= 1;
  }
  return bits;
}

}  // namespace bnet
