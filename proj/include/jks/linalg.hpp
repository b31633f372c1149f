#pragma once

// Exact dense linear algebra over a field scalar. Pivoting only looks for nonzero
// entries, so the routines are exact for rational scalars.

#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

#include <optional>
#include <utility>

namespace jks {

template <class Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

// Reduced row echelon form in place; returns the pivot columns.
template <class Scalar>
std::vector<Eigen::Index> rref(Matrix<Scalar>& m) {
  std::vector<Eigen::Index> pivots;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Eigen::Index p = row;
    while (p < m.rows() && m(p, col) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != row) m.row(p).swap(m.row(row));
    const Scalar inv = Scalar(1) / m(row, col);
    for (Eigen::Index c = col; c < m.cols(); ++c) m(row, c) *= inv;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col) == 0) continue;
      const Scalar factor = m(r, col);
      for (Eigen::Index c = col; c < m.cols(); ++c) m(r, c) -= factor * m(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <class Scalar>
Eigen::Index rank(Matrix<Scalar> m) {
  return static_cast<Eigen::Index>(rref(m).size());
}

template <class Scalar>
Scalar determinant(Matrix<Scalar> m) {
  const Eigen::Index n = m.rows();
  Scalar det = 1;
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index p = col;
    while (p < n && m(p, col) == 0) ++p;
    if (p == n) return Scalar(0);
    if (p != col) {
      m.row(p).swap(m.row(col));
      det = -det;
    }
    det *= m(col, col);
    const Scalar inv = Scalar(1) / m(col, col);
    for (Eigen::Index r = col + 1; r < n; ++r) {
      if (m(r, col) == 0) continue;
      const Scalar factor = m(r, col) * inv;
      for (Eigen::Index c = col; c < n; ++c) m(r, c) -= factor * m(col, c);
    }
  }
  return det;
}

// Unique solution of a x = b for square invertible a.
template <class Scalar>
std::optional<Vector<Scalar>> solve(const Matrix<Scalar>& a, const Vector<Scalar>& b) {
  const Eigen::Index n = a.rows();
  if (a.cols() != n || b.size() != n) return std::nullopt;
  Matrix<Scalar> aug(n, n + 1);
  aug.leftCols(n) = a;
  aug.col(n) = b;
  const auto pivots = rref(aug);
  if (static_cast<Eigen::Index>(pivots.size()) != n || (n > 0 && pivots.back() != n - 1))
    return std::nullopt;
  return Vector<Scalar>(aug.col(n));
}

template <class Scalar>
std::optional<Matrix<Scalar>> inverse(const Matrix<Scalar>& a) {
  const Eigen::Index n = a.rows();
  if (a.cols() != n) return std::nullopt;
  Matrix<Scalar> aug(n, 2 * n);
  aug.leftCols(n) = a;
  aug.rightCols(n) = Matrix<Scalar>::Identity(n, n);
  const auto pivots = rref(aug);
  if (static_cast<Eigen::Index>(pivots.size()) < n || (n > 0 && pivots[n - 1] != n - 1))
    return std::nullopt;
  return Matrix<Scalar>(aug.rightCols(n));
}

// Whether v lies in the row span of `rows`.
template <class Scalar>
bool in_row_span(const Matrix<Scalar>& rows, const Vector<Scalar>& v) {
  Matrix<Scalar> ext(rows.rows() + 1, v.size());
  if (rows.rows() > 0) ext.topRows(rows.rows()) = rows;
  ext.row(rows.rows()) = v.transpose();
  return rank<Scalar>(ext) == rank<Scalar>(rows);
}

}  // namespace jks
