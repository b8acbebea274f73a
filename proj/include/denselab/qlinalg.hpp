#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <optional>
#include <stdexcept>
#include <vector>

#include "denselab/field.hpp"
#include "denselab/scalar.hpp"

// Exact linear algebra over an arbitrary field scalar (Rational or
// FieldElement): rank, kernel, solve, inverse by fraction-aware Gaussian
// elimination with first-nonzero pivoting. Float helpers for the numeric
// backends use SVD with an explicit singular-value cutoff.

namespace denselab {

template <class S>
using DenseMat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using DenseVec = Eigen::Matrix<S, Eigen::Dynamic, 1>;

namespace detail {
inline bool scalar_is_zero(const Rational& v) { return sgn(v) == 0; }
inline bool scalar_is_zero(const FieldElement& v) { return v.is_zero(); }
inline Rational scalar_inverse(const Rational& v) { return Rational(1) / v; }
inline FieldElement scalar_inverse(const FieldElement& v) { return v.inverse(); }
}  // namespace detail

template <class S>
struct RowEchelon {
  DenseMat<S> mat;              // reduced row echelon form
  std::vector<int> pivot_cols;  // one entry per nonzero row
  int rank = 0;
};

template <class S>
RowEchelon<S> reduced_row_echelon(DenseMat<S> a) {
  RowEchelon<S> out;
  const Eigen::Index rows = a.rows(), cols = a.cols();
  // Forward pass by cross-multiplication: row_i <- p*row_i - f*row_r needs no
  // scalar inverses, so intermediate entries stay products of a few inputs
  // instead of towers of normalized fractions (inverting a degree-8 field
  // element is the expensive step, and its output poisons every later row).
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    Eigen::Index pivot = -1;
    for (Eigen::Index i = r; i < rows; ++i) {
      if (!detail::scalar_is_zero(a(i, c))) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) continue;
    if (pivot != r) a.row(pivot).swap(a.row(r));
    const S p = a(r, c);
    for (Eigen::Index i = r + 1; i < rows; ++i) {
      if (detail::scalar_is_zero(a(i, c))) continue;
      const S f = a(i, c);
      a(i, c) = S(0);
      for (Eigen::Index j = c + 1; j < cols; ++j) a(i, j) = p * a(i, j) - f * a(r, j);
    }
    out.pivot_cols.push_back(static_cast<int>(c));
    ++r;
  }
  out.rank = static_cast<int>(r);
  // One inverse per pivot row, applied after elimination is done.
  for (int k = 0; k < out.rank; ++k) {
    const Eigen::Index c = out.pivot_cols[static_cast<size_t>(k)];
    const S inv = detail::scalar_inverse(a(k, c));
    a(k, c) = S(1);
    for (Eigen::Index j = c + 1; j < cols; ++j) a(k, j) = a(k, j) * inv;
  }
  // Back-substitution against unit pivots: again no inverses, and the
  // eliminated coefficients are pre-normalization entries of bounded size.
  for (int k = out.rank - 1; k >= 0; --k) {
    const Eigen::Index c = out.pivot_cols[static_cast<size_t>(k)];
    for (int i = 0; i < k; ++i) {
      if (detail::scalar_is_zero(a(i, c))) continue;
      const S f = a(i, c);
      a(i, c) = S(0);
      for (Eigen::Index j = c + 1; j < cols; ++j) a(i, j) = a(i, j) - f * a(k, j);
    }
  }
  out.mat = std::move(a);
  return out;
}

template <class S>
int exact_rank(const DenseMat<S>& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0;
  return reduced_row_echelon<S>(a).rank;
}

// columns form a basis of the nullspace {x : a x = 0}
template <class S>
DenseMat<S> exact_kernel(const DenseMat<S>& a) {
  const Eigen::Index cols = a.cols();
  if (a.rows() == 0) {
    DenseMat<S> id(cols, cols);
    id.setZero();
    for (Eigen::Index i = 0; i < cols; ++i) id(i, i) = S(1);
    return id;
  }
  RowEchelon<S> re = reduced_row_echelon<S>(a);
  std::vector<bool> is_pivot(static_cast<size_t>(cols), false);
  for (int c : re.pivot_cols) is_pivot[static_cast<size_t>(c)] = true;
  const Eigen::Index free_count = cols - re.rank;
  DenseMat<S> kern(cols, free_count);
  kern.setZero();
  Eigen::Index k = 0;
  for (Eigen::Index c = 0; c < cols; ++c) {
    if (is_pivot[static_cast<size_t>(c)]) continue;
    kern(c, k) = S(1);
    for (int rrow = 0; rrow < re.rank; ++rrow) {
      kern(re.pivot_cols[static_cast<size_t>(rrow)], k) = -re.mat(rrow, c);
    }
    ++k;
  }
  return kern;
}

// one solution of a x = b, or nullopt when inconsistent
template <class S>
std::optional<DenseVec<S>> exact_solve(const DenseMat<S>& a, const DenseVec<S>& b) {
  const Eigen::Index rows = a.rows(), cols = a.cols();
  DenseMat<S> aug(rows, cols + 1);
  aug.leftCols(cols) = a;
  aug.col(cols) = b;
  RowEchelon<S> re = reduced_row_echelon<S>(aug);
  for (int r = 0; r < re.rank; ++r) {
    if (re.pivot_cols[static_cast<size_t>(r)] == static_cast<int>(cols)) return std::nullopt;
  }
  DenseVec<S> x(cols);
  for (Eigen::Index i = 0; i < cols; ++i) x(i) = S(0);
  for (int r = 0; r < re.rank; ++r) x(re.pivot_cols[static_cast<size_t>(r)]) = re.mat(r, cols);
  return x;
}

template <class S>
DenseMat<S> exact_inverse(const DenseMat<S>& a) {
  const Eigen::Index n = a.rows();
  if (n != a.cols()) throw std::invalid_argument("exact_inverse: matrix not square");
  DenseMat<S> aug(n, 2 * n);
  aug.leftCols(n) = a;
  aug.rightCols(n).setZero();
  for (Eigen::Index i = 0; i < n; ++i) aug(i, n + i) = S(1);
  RowEchelon<S> re = reduced_row_echelon<S>(aug);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (re.rank <= i || re.pivot_cols[static_cast<size_t>(i)] != static_cast<int>(i))
      throw std::domain_error("exact_inverse: singular matrix");
  }
  return re.mat.rightCols(n);
}

// rank of the Q-span of a list of rational vectors; empty list has rank 0
inline int qrank(const std::vector<VecQ>& vectors) {
  if (vectors.empty()) return 0;
  const Eigen::Index n = vectors.front().size();
  MatQ m(static_cast<Eigen::Index>(vectors.size()), n);
  for (size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].size() != n) throw std::invalid_argument("qrank: mixed vector lengths");
    m.row(static_cast<Eigen::Index>(i)) = vectors[i].transpose();
  }
  return exact_rank<Rational>(m);
}

struct QIndependence {
  bool independent = false;
  // when dependent: q_0 * 1 + sum_j q_j * a_j = 0, primitive integers,
  // first nonzero entry positive; (q_1..q_n) is never all zero
  std::vector<Rational> relation;
};

// scale to a primitive integer vector with positive leading nonzero entry
inline void normalize_relation(std::vector<Rational>* rel) {
  Integer lcm_den(1);
  for (const Rational& q : *rel) {
    Integer d(mpq_denref(q.get_mpq_t()));
    mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), d.get_mpz_t());
  }
  Integer gcd_num(0);
  for (Rational& q : *rel) {
    q *= Rational(lcm_den);
    q.canonicalize();
    Integer n(mpq_numref(q.get_mpq_t()));
    mpz_gcd(gcd_num.get_mpz_t(), gcd_num.get_mpz_t(), n.get_mpz_t());
  }
  if (sgn(gcd_num) == 0) return;
  int lead = 0;
  for (Rational& q : *rel) {
    q /= Rational(gcd_num);
    q.canonicalize();
    if (lead == 0) lead = sgn(q);
  }
  if (lead < 0)
    for (Rational& q : *rel) q = -q;
}

// Decides Q-linear independence of {1, a_1, ..., a_n} by exact rank of the
// 8-coordinate lift with the constant 1 prepended; on dependence returns an
// explicit rational relation that re-substitutes to exactly zero.
inline QIndependence q_independent_with_one(const std::vector<FieldElement>& values) {
  const int n = static_cast<int>(values.size());
  MatQ rows(n + 1, FieldElement::kDim);
  rows.setZero();
  rows(0, 0) = 1;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < FieldElement::kDim; ++i) rows(j + 1, i) = values[static_cast<size_t>(j)].coeff(i);
  QIndependence out;
  if (exact_rank<Rational>(rows) == n + 1) {
    out.independent = true;
    return out;
  }
  MatQ kern = exact_kernel<Rational>(rows.transpose());
  if (kern.cols() == 0) throw std::logic_error("q_independent_with_one: rank/kernel mismatch");
  out.relation.resize(static_cast<size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) out.relation[static_cast<size_t>(i)] = kern(i, 0);
  normalize_relation(&out.relation);
  // the relation must vanish exactly and must involve at least one a_j
  FieldElement residue(out.relation[0]);
  bool tail_nonzero = false;
  for (int j = 1; j <= n; ++j) {
    residue += FieldElement(out.relation[static_cast<size_t>(j)]) * values[static_cast<size_t>(j - 1)];
    if (sgn(out.relation[static_cast<size_t>(j)]) != 0) tail_nonzero = true;
  }
  if (!residue.is_zero() || (!values.empty() && !tail_nonzero))
    throw std::logic_error("q_independent_with_one: invalid relation produced");
  return out;
}

// ---- float helpers (numeric backends) ----

inline int float_rank(const Eigen::MatrixXd& a, double tol) {
  if (a.rows() == 0 || a.cols() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  int r = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > tol) ++r;
  return r;
}

// columns span the numeric nullspace (singular values below tol)
inline Eigen::MatrixXd float_kernel(const Eigen::MatrixXd& a, double tol) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
  const Eigen::Index cols = a.cols();
  int r = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > tol) ++r;
  return svd.matrixV().rightCols(cols - r);
}

// orthonormal basis of the column span (singular values above tol)
inline Eigen::MatrixXd float_column_space(const Eigen::MatrixXd& a, double tol) {
  if (a.cols() == 0) return Eigen::MatrixXd(a.rows(), 0);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU);
  int r = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > tol) ++r;
  return svd.matrixU().leftCols(r);
}

}  // namespace denselab
