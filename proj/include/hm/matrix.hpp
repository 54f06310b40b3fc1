#pragma once

// Dense row-major matrices over any of the exact rings, with fraction-free
// (Bareiss) determinant and adjugate for polynomial entries.

#include <hm/multipoly.hpp>
#include <hm/ratfn.hpp>

#include <cassert>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace hm {

template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0L)) {}
  Matrix(std::initializer_list<std::initializer_list<T>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw std::invalid_argument("ragged matrix initializer");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1L);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  // Submatrix without row r and column c.
  Matrix minor(std::size_t r, std::size_t c) const {
    Matrix m(rows_ - 1, cols_ - 1);
    for (std::size_t i = 0, mi = 0; i < rows_; ++i) {
      if (i == r) continue;
      for (std::size_t j = 0, mj = 0; j < cols_; ++j) {
        if (j == c) continue;
        m(mi, mj++) = (*this)(i, j);
      }
      ++mi;
    }
    return m;
  }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    Matrix m(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
    return m;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    check_same(a, b);
    Matrix r = a;
    for (std::size_t k = 0; k < r.data_.size(); ++k) r.data_[k] += b.data_[k];
    return r;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    check_same(a, b);
    Matrix r = a;
    for (std::size_t k = 0; k < r.data_.size(); ++k) r.data_[k] -= b.data_[k];
    return r;
  }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch");
    Matrix r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < b.cols_; ++j) {
        T acc = T(0L);
        for (std::size_t k = 0; k < a.cols_; ++k) acc += a(i, k) * b(k, j);
        r(i, j) = std::move(acc);
      }
    return r;
  }
  friend Matrix operator*(const T& s, const Matrix& m) {
    Matrix r = m;
    for (auto& e : r.data_) e = s * e;
    return r;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  template <typename F>
  auto map(F&& f) const -> Matrix<decltype(f(std::declval<const T&>()))> {
    Matrix<decltype(f(std::declval<const T&>()))> r(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(i, j) = f((*this)(i, j));
    return r;
  }

 private:
  static void check_same(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using PolyMatrix = Matrix<MultiPoly>;
using RatFnMatrix = Matrix<RatFn>;
using ScalarMatrix = Matrix<GaussianRational>;

namespace detail {

inline bool is_zero(const MultiPoly& p) { return p.is_zero(); }
inline bool is_zero(const GaussianRational& z) { return z.is_zero(); }
inline MultiPoly exact_div(const MultiPoly& a, const MultiPoly& b) { return divide_exact(a, b); }
inline GaussianRational exact_div(const GaussianRational& a, const GaussianRational& b) { return a / b; }

}  // namespace detail

// Fraction-free determinant: every division is exact in the entry ring.
template <typename T>
T bareiss_determinant(Matrix<T> m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return T(1L);
  T prev = T(1L);
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (detail::is_zero(m(k, k))) {
      std::size_t r = k + 1;
      while (r < n && detail::is_zero(m(r, k))) ++r;
      if (r == n) return T(0L);
      for (std::size_t j = k; j < n; ++j) std::swap(m(k, j), m(r, j));
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        m(i, j) = detail::exact_div(m(i, j) * m(k, k) - m(i, k) * m(k, j), prev);
      m(i, k) = T(0L);
    }
    prev = m(k, k);
  }
  return negate ? -m(n - 1, n - 1) : m(n - 1, n - 1);
}

template <typename T>
struct DetAdj {
  T det;
  Matrix<T> adj;
};

// Determinant and adjugate; adj(j, i) = (-1)^(i+j) det(minor(i, j)).
template <typename T>
DetAdj<T> bareiss(const Matrix<T>& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("adjugate of non-square matrix");
  const std::size_t n = m.rows();
  DetAdj<T> out{bareiss_determinant(m), Matrix<T>(n, n)};
  if (n == 1) {
    out.adj(0, 0) = T(1L);
    return out;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      T c = bareiss_determinant(m.minor(i, j));
      out.adj(j, i) = ((i + j) % 2 == 0) ? c : -c;
    }
  return out;
}

inline PolyMatrix conjugate(const PolyMatrix& m) {
  return m.map([](const MultiPoly& p) { return conjugate(p); });
}

inline RatFnMatrix conjugate(const RatFnMatrix& m) {
  return m.map([](const RatFn& f) { return conjugate(f); });
}

// M_ji == conj(M_ij) under the x <-> y involution.
inline bool is_hermitian(const PolyMatrix& m) {
  if (m.rows() != m.cols()) return false;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i; j < m.cols(); ++j)
      if (m(j, i) != conjugate(m(i, j))) return false;
  return true;
}

inline bool is_hermitian(const ScalarMatrix& m) {
  if (m.rows() != m.cols()) return false;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i; j < m.cols(); ++j)
      if (m(j, i) != m(i, j).conj()) return false;
  return true;
}

inline ScalarMatrix conjugate_transpose(const ScalarMatrix& m) {
  return m.transpose().map([](const GaussianRational& z) { return z.conj(); });
}

inline ScalarMatrix evaluate(const PolyMatrix& m, const Point4& p) {
  return m.map([&p](const MultiPoly& e) { return evaluate(e, p); });
}

inline ScalarMatrix evaluate(const RatFnMatrix& m, const Point4& p) {
  return m.map([&p](const RatFn& e) { return evaluate(e, p); });
}

inline bool is_zero_matrix(const PolyMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) return false;
  return true;
}

}  // namespace hm
