#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "gersh/error.hpp"

namespace gersh {

using Complex = std::complex<double>;

/// Dense row-major complex matrix.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
      if (row.size() != cols_) {
        throw Error(ErrorCode::kDimensionMismatch, "ragged initializer list");
      }
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static ComplexMatrix identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static ComplexMatrix diagonal(std::span<const Complex> d) {
    ComplexMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return data_.empty(); }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<Complex> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const Complex> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  std::span<const Complex> data() const noexcept { return data_; }

  ComplexMatrix adjoint() const {
    ComplexMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = std::conj((*this)(i, j));
    return t;
  }

  ComplexMatrix transpose() const {
    ComplexMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  /// Maximum absolute row sum.
  double norm_inf() const {
    double best = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) {
      double s = 0.0;
      for (const auto& v : row(i)) s += std::abs(v);
      best = std::max(best, s);
    }
    return best;
  }

  /// Maximum absolute column sum.
  double norm_one() const { return transpose().norm_inf(); }

  double norm_frobenius() const {
    double s = 0.0;
    for (const auto& v : data_) s += std::norm(v);
    return std::sqrt(s);
  }

  bool all_finite() const {
    return std::all_of(data_.begin(), data_.end(), [](const Complex& v) {
      return std::isfinite(v.real()) && std::isfinite(v.imag());
    });
  }

  ComplexMatrix& operator*=(Complex s) {
    for (auto& v : data_) v *= s;
    return *this;
  }

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

inline ComplexMatrix operator*(const ComplexMatrix& x, const ComplexMatrix& y) {
  if (x.cols() != y.rows()) throw Error(ErrorCode::kDimensionMismatch, "matrix product");
  ComplexMatrix out(x.rows(), y.cols());
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t k = 0; k < x.cols(); ++k) {
      const Complex xik = x(i, k);
      if (xik == Complex{}) continue;
      for (std::size_t j = 0; j < y.cols(); ++j) out(i, j) += xik * y(k, j);
    }
  return out;
}

inline ComplexMatrix operator*(Complex s, ComplexMatrix m) { return m *= s; }

inline ComplexMatrix operator+(const ComplexMatrix& x, const ComplexMatrix& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols())
    throw Error(ErrorCode::kDimensionMismatch, "matrix sum");
  ComplexMatrix out(x.rows(), x.cols());
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j) out(i, j) = x(i, j) + y(i, j);
  return out;
}

inline ComplexMatrix operator-(const ComplexMatrix& x, const ComplexMatrix& y) {
  return x + (Complex{-1.0} * y);
}

/// LU factorization with partial pivoting, PA = LU, of a square matrix.
class LuDecomposition {
 public:
  explicit LuDecomposition(ComplexMatrix m) : lu_(std::move(m)), perm_(lu_.rows()) {
    if (!lu_.is_square()) throw Error(ErrorCode::kDimensionMismatch, "LU of a non-square matrix");
    const std::size_t n = lu_.rows();
    for (std::size_t i = 0; i < n; ++i) perm_[i] = i;
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t p = k;
      double best = std::abs(lu_(k, k));
      for (std::size_t i = k + 1; i < n; ++i) {
        if (const double v = std::abs(lu_(i, k)); v > best) {
          best = v;
          p = i;
        }
      }
      if (p != k) {
        for (std::size_t j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(p, j));
        std::swap(perm_[k], perm_[p]);
        odd_ = !odd_;
      }
      const Complex pivot = lu_(k, k);
      if (pivot == Complex{}) {
        singular_ = true;
        continue;
      }
      for (std::size_t i = k + 1; i < n; ++i) {
        const Complex f = lu_(i, k) / pivot;
        lu_(i, k) = f;
        if (f == Complex{}) continue;
        for (std::size_t j = k + 1; j < n; ++j) lu_(i, j) -= f * lu_(k, j);
      }
    }
  }

  std::size_t size() const noexcept { return lu_.rows(); }
  bool singular() const noexcept { return singular_; }

  Complex determinant() const {
    Complex d = odd_ ? -1.0 : 1.0;
    for (std::size_t i = 0; i < size(); ++i) d *= lu_(i, i);
    return d;
  }

  double min_pivot_abs() const {
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < size(); ++i) m = std::min(m, std::abs(lu_(i, i)));
    return m;
  }

  /// Solves (original matrix) X = rhs.
  ComplexMatrix solve(const ComplexMatrix& rhs) const {
    if (singular_) throw Error(ErrorCode::kSingularPencil, "solve with a singular LU factor");
    const std::size_t n = size();
    if (rhs.rows() != n) throw Error(ErrorCode::kDimensionMismatch, "LU solve");
    ComplexMatrix x(n, rhs.cols());
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < rhs.cols(); ++j) x(i, j) = rhs(perm_[i], j);
    for (std::size_t j = 0; j < rhs.cols(); ++j) {
      for (std::size_t i = 0; i < n; ++i) {
        Complex s = x(i, j);
        for (std::size_t k = 0; k < i; ++k) s -= lu_(i, k) * x(k, j);
        x(i, j) = s;
      }
      for (std::size_t i = n; i-- > 0;) {
        Complex s = x(i, j);
        for (std::size_t k = i + 1; k < n; ++k) s -= lu_(i, k) * x(k, j);
        x(i, j) = s / lu_(i, i);
      }
    }
    return x;
  }

  ComplexMatrix inverse() const { return solve(ComplexMatrix::identity(size())); }

 private:
  ComplexMatrix lu_;
  std::vector<std::size_t> perm_;
  bool odd_ = false;
  bool singular_ = false;
};

}  // namespace gersh
