#pragma once

#include "surgerylab/integer.hpp"

#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

namespace surgerylab {

/// Dense row-major matrix.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T(0))
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw DomainError("ragged matrix literal");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }
  static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
    Matrix m;
    m.rows_ = rows.size();
    m.cols_ = rows.empty() ? 0 : rows.front().size();
    m.data_.reserve(m.rows_ * m.cols_);
    for (const auto& row : rows) {
      if (row.size() != m.cols_) throw DomainError("ragged matrix");
      m.data_.insert(m.data_.end(), row.begin(), row.end());
    }
    return m;
  }
  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
  }
  std::vector<std::vector<T>> to_rows() const {
    std::vector<std::vector<T>> out;
    out.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
    return out;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw DomainError("matrix product: shape mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  Matrix operator-() const {
    Matrix m = *this;
    for (auto& x : m.data_) x = -x;
    return m;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

  std::string str() const {
    std::string s = "[";
    for (std::size_t i = 0; i < rows_; ++i) {
      s += i ? ",[" : "[";
      for (std::size_t j = 0; j < cols_; ++j) {
        if (j) s += ",";
        if constexpr (requires(const T& x) { x.str(); }) {
          s += (*this)(i, j).str();
        } else {
          s += std::to_string((*this)(i, j));
        }
      }
      s += "]";
    }
    return s + "]";
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Integer>;

/// Square symmetric integer matrix; symmetry is checked on construction.
class SymmetricMatrix {
 public:
  SymmetricMatrix() = default;
  explicit SymmetricMatrix(std::size_t n) : m_(n, n) {}
  explicit SymmetricMatrix(IntMatrix m) : m_(std::move(m)) { check(); }
  SymmetricMatrix(std::initializer_list<std::initializer_list<Integer>> init) : m_(init) {
    check();
  }

  std::size_t dim() const { return m_.rows(); }
  const Integer& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  void set(std::size_t i, std::size_t j, const Integer& v) {
    m_(i, j) = v;
    m_(j, i) = v;
  }
  const IntMatrix& matrix() const { return m_; }

  /// Number of nonzero off-diagonal entries in row i.
  std::size_t degree(std::size_t i) const {
    std::size_t d = 0;
    for (std::size_t j = 0; j < dim(); ++j)
      if (j != i && m_(i, j) != 0) ++d;
    return d;
  }

  Integer trace() const {
    Integer t = 0;
    for (std::size_t i = 0; i < dim(); ++i) t += m_(i, i);
    return t;
  }

  std::string str() const { return m_.str(); }

  friend bool operator==(const SymmetricMatrix&, const SymmetricMatrix&) = default;

 protected:
  void check() const {
    if (m_.rows() != m_.cols()) throw DomainError("symmetric matrix must be square");
    for (std::size_t i = 0; i < m_.rows(); ++i)
      for (std::size_t j = i + 1; j < m_.cols(); ++j)
        if (m_(i, j) != m_(j, i)) {
          throw DomainError("matrix is not symmetric at (" + std::to_string(i + 1) + "," +
                            std::to_string(j + 1) + ")");
        }
  }

  IntMatrix m_;
};

/// Intersection form of a lattice in a chosen basis.
class GramMatrix : public SymmetricMatrix {
 public:
  using SymmetricMatrix::SymmetricMatrix;
  GramMatrix() = default;
  explicit GramMatrix(const SymmetricMatrix& s) : SymmetricMatrix(s) {}
};

}  // namespace surgerylab
