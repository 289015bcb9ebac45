#include "bnet/dense_matrix.hpp"

#include <numeric>
#include <sstream>

#include "bnet/errors.hpp"

namespace bnet {

dense_matrix::dense_matrix(int64_t rows, int64_t cols, std::vector<rational> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (static_cast<int64_t>(data_.size()) != rows * cols)
    throw dimension_error("dense_matrix: entry count does not match rows*cols");
}

dense_matrix dense_matrix::identity(int64_t k) {
  dense_matrix m(k, k);
  for (int64_t i = 0; i < k; ++i) m.at(i, i) = 1;
  return m;
}

dense_matrix dense_matrix::ones_row(int64_t k) {
  dense_matrix m(1, k);
  for (int64_t j = 0; j < k; ++j) m.at(0, j) = 1;
  return m;
}

dense_matrix dense_matrix::ones_col(int64_t k) {
  dense_matrix m(k, 1);
  for (int64_t i = 0; i < k; ++i) m.at(i, 0) = 1;
  return m;
}

dense_matrix dense_matrix::transpose() const {
  dense_matrix t(cols_, rows_);
  for (int64_t r = 0; r < rows_; ++r)
    for (int64_t c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
  return t;
}

std::optional<dense_matrix> dense_matrix::inverse() const {
  if (rows_ != cols_) throw dimension_error("inverse: matrix is not square");
  int64_t n = rows_;
  dense_matrix a = *this;
  dense_matrix inv = identity(n);
  for (int64_t col = 0; col < n; ++col) {
    int64_t pivot = -1;
    for (int64_t r = col; r < n; ++r) {
      if (!a.at(r, col).is_zero()) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) return std::nullopt;
    if (pivot != col) {
      for (int64_t c = 0; c < n; ++c) {
        std::swap(a.at(pivot, c), a.at(col, c));
        std::swap(inv.at(pivot, c), inv.at(col, c));
      }
    }
    rational p = a.at(col, col);
    for (int64_t c = 0; c < n; ++c) {
      a.at(col, c) /= p;
      inv.at(col, c) /= p;
    }
    for (int64_t r = 0; r < n; ++r) {
      if (r == col || a.at(r, col).is_zero()) continue;
      rational f = a.at(r, col);
      for (int64_t c = 0; c < n; ++c) {
        a.at(r, c) -= f * a.at(col, c);
        inv.at(r, c) -= f * inv.at(col, c);
      }
    }
  }
  return inv;
}

std::string dense_matrix::str() const {
  std::ostringstream os;
  for (int64_t r = 0; r < rows_; ++r) {
    for (int64_t c = 0; c < cols_; ++c) {
      if (c) os << ' ';
      os << at(r, c).str();
    }
    os << '\n';
  }
  return os.str();
}

dense_matrix operator+(const dense_matrix& a, const dense_matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw dimension_error("dense +: shape mismatch");
  dense_matrix r(a.rows(), a.cols());
  for (int64_t i = 0; i < a.rows(); ++i)
    for (int64_t j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j) + b.at(i, j);
  return r;
}

dense_matrix operator-(const dense_matrix& a, const dense_matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw dimension_error("dense -: shape mismatch");
  dense_matrix r(a.rows(), a.cols());
  for (int64_t i = 0; i < a.rows(); ++i)
    for (int64_t j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j) - b.at(i, j);
  return r;
}

dense_matrix operator*(const rational& s, const dense_matrix& a) {
  dense_matrix r(a.rows(), a.cols());
  for (int64_t i = 0; i < a.rows(); ++i)
    for (int64_t j = 0; j < a.cols(); ++j) r.at(i, j) = s * a.at(i, j);
  return r;
}

dense_matrix operator*(const dense_matrix& a, const dense_matrix& b) {
  if (a.cols() != b.rows()) throw dimension_error("dense *: inner dimension mismatch");
  dense_matrix r(a.rows(), b.cols());
  for (int64_t i = 0; i < a.rows(); ++i) {
    for (int64_t k = 0; k < a.cols(); ++k) {
      const rational& aik = a.at(i, k);
      if (aik.is_zero()) continue;
      for (int64_t j = 0; j < b.cols(); ++j) {
        const rational& bkj = b.at(k, j);
        if (bkj.is_zero()) continue;
        r.at(i, j) += aik * bkj;
      }
    }
  }
  return r;
}

dense_matrix kron(const dense_matrix& a, const dense_matrix& b) {
  dense_matrix r(a.rows() * b.rows(), a.cols() * b.cols());
  for (int64_t i = 0; i < a.rows(); ++i)
    for (int64_t j = 0; j < a.cols(); ++j) {
      const rational& aij = a.at(i, j);
      if (aij.is_zero()) continue;
      for (int64_t p = 0; p < b.rows(); ++p)
        for (int64_t q = 0; q < b.cols(); ++q)
          r.at(i * b.rows() + p, j * b.cols() + q) = aij * b.at(p, q);
    }
  return r;
}

dense_matrix stp(const dense_matrix& a, const dense_matrix& b) {
  int64_t t = std::lcm(a.cols(), b.rows());
  const dense_matrix left = t == a.cols() ? a : kron(a, dense_matrix::identity(t / a.cols()));
  const dense_matrix right = t == b.rows() ? b : kron(b, dense_matrix::identity(t / b.rows()));
  return left * right;
}

dense_matrix khatri_rao(const dense_matrix& a, const dense_matrix& b) {
  if (a.cols() != b.cols()) throw dimension_error("khatri_rao: column counts differ");
  dense_matrix r(a.rows() * b.rows(), a.cols());
  for (int64_t j = 0; j < a.cols(); ++j)
    for (int64_t i = 0; i < a.rows(); ++i)
      for (int64_t p = 0; p < b.rows(); ++p)
        r.at(i * b.rows() + p, j) = a.at(i, j) * b.at(p, j);
  return r;
}

}  // namespace bnet
