#pragma once

#include "hflat/rational.hpp"

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hflat {

/// Dense row-major matrix over an exact or floating scalar; small sizes only.
template <class S>
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, S(0)) {}

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = S(1);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  S& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
  const S& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

  friend Matrix operator*(const Matrix& A, const Matrix& B) {
    if (A.cols_ != B.rows_) throw std::invalid_argument("matrix shape mismatch");
    Matrix C(A.rows_, B.cols_);
    for (int i = 0; i < A.rows_; ++i)
      for (int k = 0; k < A.cols_; ++k) {
        if (Scalar<S>::is_zero(A(i, k))) continue;
        for (int j = 0; j < B.cols_; ++j) C(i, j) += A(i, k) * B(k, j);
      }
    return C;
  }
  friend bool operator==(const Matrix& A, const Matrix& B) {
    if (A.rows_ != B.rows_ || A.cols_ != B.cols_) return false;
    for (std::size_t i = 0; i < A.a_.size(); ++i)
      if (!Scalar<S>::is_zero(A.a_[i] - B.a_[i])) return false;
    return true;
  }

  Matrix transpose() const {
    Matrix T(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) T(j, i) = (*this)(i, j);
    return T;
  }

  double max_abs() const {
    double r = 0.0;
    for (const auto& v : a_) r = std::max(r, Scalar<S>::magnitude(v));
    return r;
  }

  template <class T>
  Matrix<T> cast() const {
    Matrix<T> out(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) out(i, j) = T(Scalar<S>::to_double((*this)(i, j)));
    return out;
  }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<S> a_;
};

namespace detail {
template <class S>
bool negligible(const S& v, double tol) {
  if constexpr (Scalar<S>::exact)
    return Scalar<S>::is_zero(v);
  else
    return Scalar<S>::magnitude(v) <= tol;
}
}  // namespace detail

/// Row echelon form in place; returns pivot columns. tol is ignored for exact scalars.
template <class S>
std::vector<int> row_reduce(Matrix<S>& A, double tol = 1e-12) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < A.cols() && r < A.rows(); ++c) {
    int best = -1;
    double best_mag = 0.0;
    for (int i = r; i < A.rows(); ++i) {
      if (detail::negligible(A(i, c), tol)) continue;
      double mag = Scalar<S>::magnitude(A(i, c));
      if (best < 0 || (!Scalar<S>::exact && mag > best_mag)) {
        best = i;
        best_mag = mag;
        if (Scalar<S>::exact) break;
      }
    }
    if (best < 0) continue;
    if (best != r)
      for (int j = 0; j < A.cols(); ++j) std::swap(A(r, j), A(best, j));
    S piv = A(r, c);
    for (int j = c; j < A.cols(); ++j) A(r, j) = S(A(r, j) / piv);
    for (int i = 0; i < A.rows(); ++i) {
      if (i == r || Scalar<S>::is_zero(A(i, c))) continue;
      S f = A(i, c);
      for (int j = c; j < A.cols(); ++j) A(i, j) -= f * A(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class S>
int rank(Matrix<S> A, double tol = 1e-12) {
  return static_cast<int>(row_reduce(A, tol).size());
}

template <class S>
S determinant(Matrix<S> A) {
  if (A.rows() != A.cols()) throw std::invalid_argument("determinant of non-square matrix");
  const int n = A.rows();
  S det(1);
  for (int c = 0; c < n; ++c) {
    int p = -1;
    for (int i = c; i < n; ++i)
      if (!Scalar<S>::is_zero(A(i, c))) {
        p = i;
        break;
      }
    if (p < 0) return S(0);
    if (p != c) {
      for (int j = 0; j < n; ++j) std::swap(A(c, j), A(p, j));
      det = S(-det);
    }
    det *= A(c, c);
    for (int i = c + 1; i < n; ++i) {
      if (Scalar<S>::is_zero(A(i, c))) continue;
      S f = A(i, c) / A(c, c);
      for (int j = c; j < n; ++j) A(i, j) -= f * A(c, j);
    }
  }
  return det;
}

/// Solves A x = b; nullopt when inconsistent. Free variables are set to zero.
template <class S>
std::optional<std::vector<S>> solve(const Matrix<S>& A, const std::vector<S>& b, double tol = 1e-12) {
  Matrix<S> aug(A.rows(), A.cols() + 1);
  for (int i = 0; i < A.rows(); ++i) {
    for (int j = 0; j < A.cols(); ++j) aug(i, j) = A(i, j);
    aug(i, A.cols()) = b.at(i);
  }
  auto piv = row_reduce(aug, tol);
  if (!piv.empty() && piv.back() == A.cols()) return std::nullopt;
  std::vector<S> x(A.cols(), S(0));
  for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = aug(static_cast<int>(r), A.cols());
  return x;
}

/// Inertia (negative, positive, zero) of a symmetric matrix by congruence diagonalization.
struct Inertia {
  int negative = 0, positive = 0, zero = 0;
  friend bool operator==(const Inertia&, const Inertia&) = default;
};

template <class S>
Inertia inertia(Matrix<S> A, double tol = 1e-12) {
  const int n = A.rows();
  Inertia out;
  auto swap_index = [&](int i, int j) {
    if (i == j) return;
    for (int k = 0; k < n; ++k) std::swap(A(i, k), A(j, k));
    for (int k = 0; k < n; ++k) std::swap(A(k, i), A(k, j));
  };
  int k = 0;
  for (; k < n; ++k) {
    int p = -1;
    for (int i = k; i < n; ++i)
      if (!detail::negligible(A(i, i), tol)) {
        p = i;
        break;
      }
    if (p < 0) {
      int pi = -1, pj = -1;
      for (int i = k; i < n && pi < 0; ++i)
        for (int j = i + 1; j < n; ++j)
          if (!detail::negligible(A(i, j), tol)) {
            pi = i;
            pj = j;
            break;
          }
      if (pi < 0) break;
      for (int c = 0; c < n; ++c) A(pi, c) += A(pj, c);
      for (int r = 0; r < n; ++r) A(r, pi) += A(r, pj);
      p = pi;
    }
    swap_index(k, p);
    S piv = A(k, k);
    for (int r = k + 1; r < n; ++r) {
      if (Scalar<S>::is_zero(A(r, k))) continue;
      S f = A(r, k) / piv;
      for (int c = k; c < n; ++c) A(r, c) -= f * A(k, c);
      for (int c = k; c < n; ++c) A(c, r) = A(r, c);
    }
    bool neg;
    if constexpr (Scalar<S>::exact)
      neg = sgn(piv) < 0;
    else
      neg = piv < 0;
    if (neg)
      ++out.negative;
    else
      ++out.positive;
  }
  out.zero = n - out.negative - out.positive;
  return out;
}

}  // namespace hflat
