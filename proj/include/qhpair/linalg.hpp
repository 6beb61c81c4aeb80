// Exact dense linear algebra over a field scalar (Rational in practice).
// Eigen's decompositions pivot on magnitude thresholds, which is meaningless
// for exact arithmetic, so elimination is done here by hand.
#ifndef QHPAIR_LINALG_HPP
#define QHPAIR_LINALG_HPP

#include <optional>
#include <utility>
#include <vector>

#include "qhpair/core.hpp"

namespace qhpair::linalg {

template <class Scalar>
struct Echelon {
  Mat<Scalar> reduced;
  std::vector<Index> pivot_columns;
};

/// Reduced row echelon form.
template <class Scalar>
Echelon<Scalar> rref(Mat<Scalar> m) {
  Echelon<Scalar> out;
  Index row = 0;
  for (Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Index pivot = -1;
    for (Index i = row; i < m.rows(); ++i) {
      if (!(m(i, col) == Scalar(0))) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) continue;
    m.row(row).swap(m.row(pivot));
    const Scalar inv = Scalar(1) / m(row, col);
    for (Index j = col; j < m.cols(); ++j) m(row, j) = m(row, j) * inv;
    for (Index i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col) == Scalar(0)) continue;
      const Scalar factor = m(i, col);
      for (Index j = col; j < m.cols(); ++j)
        m(i, j) = m(i, j) - factor * m(row, j);
    }
    out.pivot_columns.push_back(col);
    ++row;
  }
  out.reduced = std::move(m);
  return out;
}

template <class Scalar>
Index rank(const Mat<Scalar>& m) {
  return static_cast<Index>(rref(m).pivot_columns.size());
}

template <class Scalar>
Scalar determinant(Mat<Scalar> m) {
  if (m.rows() != m.cols())
    throw PreconditionError("determinant of a non-square matrix");
  Scalar det(1);
  const Index n = m.rows();
  for (Index col = 0; col < n; ++col) {
    Index pivot = -1;
    for (Index i = col; i < n; ++i) {
      if (!(m(i, col) == Scalar(0))) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) return Scalar(0);
    if (pivot != col) {
      m.row(col).swap(m.row(pivot));
      det = -det;
    }
    det = det * m(col, col);
    const Scalar inv = Scalar(1) / m(col, col);
    for (Index i = col + 1; i < n; ++i) {
      if (m(i, col) == Scalar(0)) continue;
      const Scalar factor = m(i, col) * inv;
      for (Index j = col; j < n; ++j) m(i, j) = m(i, j) - factor * m(col, j);
    }
  }
  return det;
}

template <class Scalar>
std::optional<Mat<Scalar>> inverse(const Mat<Scalar>& m) {
  if (m.rows() != m.cols())
    throw PreconditionError("inverse of a non-square matrix");
  const Index n = m.rows();
  Mat<Scalar> aug(n, 2 * n);
  aug.leftCols(n) = m;
  aug.rightCols(n) = Mat<Scalar>::Identity(n, n);
  auto e = rref(std::move(aug));
  if (static_cast<Index>(e.pivot_columns.size()) < n ||
      (n > 0 && e.pivot_columns[static_cast<std::size_t>(n - 1)] != n - 1))
    return std::nullopt;
  return Mat<Scalar>(e.reduced.rightCols(n));
}

template <class Scalar>
Mat<Scalar> inverse_or_throw(const Mat<Scalar>& m, const char* what) {
  auto inv = inverse(m);
  if (!inv) throw PreconditionError(std::string(what) + ": matrix is singular");
  return *inv;
}

/// Columns spanning the right null space.
template <class Scalar>
Mat<Scalar> nullspace(const Mat<Scalar>& m) {
  auto e = rref(m);
  std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols()), false);
  for (Index c : e.pivot_columns) is_pivot[static_cast<std::size_t>(c)] = true;
  std::vector<Index> free;
  for (Index c = 0; c < m.cols(); ++c)
    if (!is_pivot[static_cast<std::size_t>(c)]) free.push_back(c);
  Mat<Scalar> basis = Mat<Scalar>::Zero(m.cols(), static_cast<Index>(free.size()));
  for (std::size_t k = 0; k < free.size(); ++k) {
    const Index f = free[k];
    basis(f, static_cast<Index>(k)) = Scalar(1);
    for (std::size_t p = 0; p < e.pivot_columns.size(); ++p)
      basis(e.pivot_columns[p], static_cast<Index>(k)) =
          -e.reduced(static_cast<Index>(p), f);
  }
  return basis;
}

/// Solves m * x = b for square invertible m.
template <class Scalar>
Vec<Scalar> solve(const Mat<Scalar>& m, const Vec<Scalar>& b) {
  return inverse_or_throw(m, "solve") * b;
}

}  // namespace qhpair::linalg

#endif  // QHPAIR_LINALG_HPP
