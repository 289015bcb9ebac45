/* bnet: delta-represented column-selector matrices and their STP kernels */

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bnet/dense_matrix.hpp"

namespace bnet {

/// Column i of the k x k identity, 1-based.
struct delta_vector {
  int64_t dim = 1;
  int64_t index = 1;

  friend bool operator==(const delta_vector&, const delta_vector&) = default;
  dense_matrix to_dense() const;
};

/// The all-ones column J_k; transpose() gives the row form J_k^T.
struct ones_vector {
  int64_t dim = 1;
  dense_matrix to_dense() const { return dense_matrix::ones_col(dim); }
  dense_matrix transpose() const { return dense_matrix::ones_row(dim); }
};

/// p x q matrix whose every column is a standard basis vector, stored as the
/// list of selected row indices (1-based). This is the canonical carrier of
/// structure matrices, transition matrices and subspace matrices.
class logical_matrix {
public:
  logical_matrix() = default;
  logical_matrix(int64_t rows, std::vector<int64_t> cols);

  /// delta_p[i1, ..., iq] constructor notation.
  static logical_matrix delta(int64_t p, std::vector<int64_t> cols) {
    return logical_matrix(p, std::move(cols));
  }
  static logical_matrix identity(int64_t p);
  /// q copies of delta_p^i (a constant map).
  static logical_matrix constant(int64_t p, int64_t q, int64_t i);

  int64_t rows() const { return rows_; }
  int64_t cols() const { return static_cast<int64_t>(cols_.size()); }
  /// Row index selected by column j (both 1-based).
  int64_t col(int64_t j) const { return cols_[static_cast<size_t>(j - 1)]; }
  std::span<const int64_t> col_indices() const { return cols_; }

  bool is_permutation() const;
  /// Transpose of a permutation matrix (= its inverse). Throws otherwise.
  logical_matrix permutation_transpose() const;

  delta_vector column(int64_t j) const { return delta_vector{rows_, col(j)}; }

  dense_matrix to_dense() const;
  std::string str() const;  // "delta_p[i1,...,iq]"

  friend bool operator==(const logical_matrix&, const logical_matrix&) = default;

private:
  int64_t rows_ = 1;
  std::vector<int64_t> cols_;
};

/// Logical matrix that may contain zero columns (index 0), used to encode
/// forbidden transitions.
class zero_extended_matrix {
public:
  zero_extended_matrix() = default;
  zero_extended_matrix(int64_t rows, std::vector<int64_t> cols);
  explicit zero_extended_matrix(const logical_matrix& m);

  int64_t rows() const { return rows_; }
  int64_t cols() const { return static_cast<int64_t>(cols_.size()); }
  int64_t col(int64_t j) const { return cols_[static_cast<size_t>(j - 1)]; }
  std::span<const int64_t> col_indices() const { return cols_; }
  void zero_column(int64_t j) { cols_[static_cast<size_t>(j - 1)] = 0; }
  bool has_zero_column() const;

  dense_matrix to_dense() const;
  std::string str() const;

  friend bool operator==(const zero_extended_matrix&, const zero_extended_matrix&) = default;

private:
  int64_t rows_ = 1;
  std::vector<int64_t> cols_;
};

/// Ordinary product A*B of logical matrices (cols(A) == rows(B)); one table
/// lookup per column.
logical_matrix compose(const logical_matrix& a, const logical_matrix& b);
zero_extended_matrix compose(const logical_matrix& a, const zero_extended_matrix& b);

/// Column j of the result is Col_j(A) stp Col_j(B); delta index (a-1)*q + b.
logical_matrix khatri_rao(const logical_matrix& a, const logical_matrix& b);

logical_matrix kron(const logical_matrix& a, const logical_matrix& b);

/// Swap matrix W_{[m,n]} = [I_n (x) delta_m^1, ..., I_n (x) delta_m^m].
logical_matrix swap_matrix(int64_t m, int64_t n);

/// A x for a basis vector x.
delta_vector apply(const logical_matrix& a, const delta_vector& x);

delta_vector stp(const delta_vector& x, const delta_vector& y);

/// Boolean state tuple -> delta_{2^n} index (b_1 outermost, 1 ~ delta_2^1):
/// index = 1 + sum (1-b_i) 2^{n-i}.
delta_vector state_index_encode(std::span<const int> bits);
std::vector<int> state_index_decode(int64_t n, int64_t index);

}  // namespace bnet
