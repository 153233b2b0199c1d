// SPDX-License-Identifier: MIT

#include "fec2d/exact_linalg.hpp"

#include "fec2d/errors.hpp"

namespace fec2d {

std::pair<RatMatrix, Index> bareissEchelon(RatMatrix m, const BareissObserver& observer) {
  const Index rows = m.rows();
  const Index cols = m.cols();
  Rational prev = 1;
  Index r = 0;
  for (Index c = 0; c < cols && r < rows; ++c) {
    Index p = -1;
    for (Index i = r; i < rows; ++i) {
      if (m(i, c) != 0) {
        p = i;
        break;
      }
    }
    if (p < 0) continue;
    if (p != r) m.row(p).swap(m.row(r));
    for (Index i = r + 1; i < rows; ++i) {
      for (Index j = c + 1; j < cols; ++j) {
        m(i, j) = (m(r, c) * m(i, j) - m(i, c) * m(r, j)) / prev;
      }
      m(i, c) = 0;
    }
    prev = m(r, c);
    ++r;
    if (observer) observer(m);
  }
  return {std::move(m), r};
}

Index rank(const RatMatrix& m) { return bareissEchelon(m).second; }

Index nullity(const RatMatrix& m) { return m.cols() - rank(m); }

bool isZero(const RatMatrix& m) {
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      if (m(i, j) != 0) return false;
  return true;
}

RatMatrix invert(const RatMatrix& m) {
  const Index n = m.rows();
  if (n != m.cols()) throw SingularMatrixError("invert: matrix is not square");
  using IMat = Eigen::Matrix<Integer, Eigen::Dynamic, Eigen::Dynamic>;
  IMat w(n, 2 * n);
  for (Index i = 0; i < n; ++i) {
    Integer l = 1;
    for (Index j = 0; j < n; ++j) l = lcm(l, denominator(m(i, j)));
    for (Index j = 0; j < n; ++j) w(i, j) = numerator(m(i, j)) * (l / denominator(m(i, j)));
    for (Index j = 0; j < n; ++j) w(i, n + j) = (i == j) ? l : Integer(0);
  }
  // Fraction-free Gauss-Jordan (Montante); entries remain integral, and on
  // exit w(i,i) carries the common scale of the solved row i.
  Integer prev = 1;
  for (Index c = 0; c < n; ++c) {
    Index p = -1;
    for (Index i = c; i < n; ++i) {
      if (w(i, c) != 0) {
        p = i;
        break;
      }
    }
    if (p < 0) throw SingularMatrixError("invert: singular matrix");
    if (p != c) w.row(p).swap(w.row(c));
    const Integer piv = w(c, c);
    for (Index i = 0; i < n; ++i) {
      if (i == c) continue;
      const Integer f = w(i, c);
      for (Index j = c; j < 2 * n; ++j) w(i, j) = (piv * w(i, j) - f * w(c, j)) / prev;
      if (i < c) w(i, i) = piv * w(i, i) / prev;
    }
    prev = piv;
  }
  RatMatrix inv(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) inv(i, j) = Rational(w(i, n + j), w(i, i));
  return inv;
}

std::vector<Index> complementBasis(const RatMatrix& subspaceCols, Index ambientDim) {
  const Index k = subspaceCols.cols();
  if (subspaceCols.rows() != ambientDim)
    throw ParameterError("complementBasis: subspace rows != ambient dimension");
  if (k > 0 && rank(subspaceCols) != k)
    throw ParameterError("complementBasis: subspace columns are dependent");
  std::vector<Index> chosen;
  RatMatrix work(ambientDim, k + (ambientDim - k));
  if (k > 0) work.leftCols(k) = subspaceCols;
  Index cur = k;
  Index curRank = k;
  for (Index j = 0; j < ambientDim && curRank < ambientDim; ++j) {
    work.col(cur).setZero();
    work(j, cur) = 1;
    const Index r = rank(work.leftCols(cur + 1));
    if (r > curRank) {
      chosen.push_back(j);
      curRank = r;
      ++cur;
    }
  }
  return chosen;
}

RatMatrix nullspaceBasis(const RatMatrix& m) {
  const Index rows = m.rows();
  const Index cols = m.cols();
  // Rational Gauss-Jordan to reduced row echelon form.
  RatMatrix w = m;
  std::vector<Index> pivotCol;
  Index r = 0;
  for (Index c = 0; c < cols && r < rows; ++c) {
    Index p = -1;
    for (Index i = r; i < rows; ++i) {
      if (w(i, c) != 0) {
        p = i;
        break;
      }
    }
    if (p < 0) continue;
    if (p != r) w.row(p).swap(w.row(r));
    const Rational piv = w(r, c);
    for (Index j = c; j < cols; ++j) w(r, j) /= piv;
    for (Index i = 0; i < rows; ++i) {
      if (i == r || w(i, c) == 0) continue;
      const Rational f = w(i, c);
      for (Index j = c; j < cols; ++j) w(i, j) -= f * w(r, j);
    }
    pivotCol.push_back(c);
    ++r;
  }
  std::vector<bool> isPivot(cols, false);
  for (Index c : pivotCol) isPivot[c] = true;
  RatMatrix basis(cols, cols - r);
  basis.setZero();
  Index out = 0;
  for (Index free = 0; free < cols; ++free) {
    if (isPivot[free]) continue;
    basis(free, out) = 1;
    for (Index i = 0; i < r; ++i) basis(pivotCol[i], out) = -w(i, free);
    ++out;
  }
  return basis;
}

RatVector solve(const RatMatrix& m, const RatVector& rhs) {
  return invert(m) * rhs;
}

std::optional<RatVector> solveConsistent(const RatMatrix& m, const RatVector& rhs) {
  const Index rows = m.rows();
  const Index cols = m.cols();
  RatMatrix w(rows, cols + 1);
  w.leftCols(cols) = m;
  w.col(cols) = rhs;
  // Reduced row echelon form of the augmented system.
  std::vector<Index> pivotCol;
  Index r = 0;
  for (Index c = 0; c < cols + 1 && r < rows; ++c) {
    Index p = -1;
    for (Index i = r; i < rows; ++i) {
      if (w(i, c) != 0) {
        p = i;
        break;
      }
    }
    if (p < 0) continue;
    if (c == cols) return std::nullopt;  // pivot in the rhs column
    if (p != r) w.row(p).swap(w.row(r));
    const Rational piv = w(r, c);
    for (Index j = c; j <= cols; ++j) w(r, j) /= piv;
    for (Index i = 0; i < rows; ++i) {
      if (i == r || w(i, c) == 0) continue;
      const Rational f = w(i, c);
      for (Index j = c; j <= cols; ++j) w(i, j) -= f * w(r, j);
    }
    pivotCol.push_back(c);
    ++r;
  }
  if (static_cast<Index>(pivotCol.size()) != cols)
    throw SingularMatrixError("solveConsistent: matrix does not have full column rank");
  RatVector x(cols);
  for (Index i = 0; i < cols; ++i) x[pivotCol[static_cast<size_t>(i)]] = w(i, cols);
  return x;
}

}  // namespace fec2d
