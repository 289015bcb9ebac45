/* bnet: dense exact-rational matrices; the general semi-tensor product path */

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bnet/rational.hpp"

namespace bnet {

/// Row-major matrix of exact rationals. Used as the oracle path for the
/// logical-matrix kernels and for the general semi-tensor product.
class dense_matrix {
public:
  dense_matrix() = default;
  dense_matrix(int64_t rows, int64_t cols)
      : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows * cols)) {}
  dense_matrix(int64_t rows, int64_t cols, std::vector<rational> data);

  static dense_matrix identity(int64_t k);
  /// All-ones row J_k^T.
  static dense_matrix ones_row(int64_t k);
  /// All-ones column J_k.
  static dense_matrix ones_col(int64_t k);

  int64_t rows() const { return rows_; }
  int64_t cols() const { return cols_; }

  const rational& at(int64_t r, int64_t c) const { return data_[static_cast<size_t>(r * cols_ + c)]; }
  rational& at(int64_t r, int64_t c) { return data_[static_cast<size_t>(r * cols_ + c)]; }

  const std::vector<rational>& data() const { return data_; }

  dense_matrix transpose() const;
  /// Gauss-Jordan over exact rationals; nullopt when singular.
  std::optional<dense_matrix> inverse() const;

  friend bool operator==(const dense_matrix& a, const dense_matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator!=(const dense_matrix& a, const dense_matrix& b) { return !(a == b); }

  std::string str() const;

private:
  int64_t rows_ = 0;
  int64_t cols_ = 0;
  std::vector<rational> data_;
};

dense_matrix operator+(const dense_matrix& a, const dense_matrix& b);
dense_matrix operator-(const dense_matrix& a, const dense_matrix& b);
dense_matrix operator*(const rational& s, const dense_matrix& a);
/// Conventional product; throws dimension_error on inner mismatch.
dense_matrix operator*(const dense_matrix& a, const dense_matrix& b);

dense_matrix kron(const dense_matrix& a, const dense_matrix& b);

/// Semi-tensor product (A (x) I_{t/n})(B (x) I_{t/p}), t = lcm(n, p).
/// Reduces to the conventional product when the inner dimensions agree.
dense_matrix stp(const dense_matrix& a, const dense_matrix& b);

/// Columnwise Kronecker product; operands must have equal column counts.
dense_matrix khatri_rao(const dense_matrix& a, const dense_matrix& b);

}  // namespace bnet
