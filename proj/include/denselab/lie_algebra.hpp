#pragma once

#include <optional>
#include <string>
#include <vector>

#include "denselab/qlinalg.hpp"

namespace denselab {

// Finite-dimensional real Lie algebra given by rational structure constants:
// [e_i, e_j] = sum_k c[i][j][k] e_k. Antisymmetry and the Jacobi identity are
// checkable exactly; all series and subspace computations below are exact
// Gaussian elimination over Q or over the multiquadratic field.
struct LieAlgebraSpec {
  int dim = 0;
  std::vector<std::string> labels;            // optional basis names, size dim or empty
  std::vector<std::vector<VecQ>> c;           // c[i][j] = coefficient vector of [e_i, e_j]

  static LieAlgebraSpec zero(int n);          // all brackets vanish
  static LieAlgebraSpec heisenberg();         // [X,Y] = Z
  static LieAlgebraSpec filiform4();          // [A,B] = C, [A,C] = D
  static LieAlgebraSpec aff1();               // [X,Y] = Y
  static LieAlgebraSpec sl2();                // basis (E,H,F)
  static LieAlgebraSpec so3();                // basis (Lx,Ly,Lz)

  // text fixture: "dim n", optional "labels ...", lines "c i j k p/q"
  static LieAlgebraSpec load(const std::string& path);
  std::string save_text() const;

  void set_bracket(int i, int j, int k, const Rational& value);

  template <class S>
  DenseVec<S> bracket(const DenseVec<S>& x, const DenseVec<S>& y) const {
    DenseVec<S> out(dim);
    for (int k = 0; k < dim; ++k) out(k) = S(0);
    for (int i = 0; i < dim; ++i) {
      if (detail::scalar_is_zero(x(i))) continue;
      for (int j = 0; j < dim; ++j) {
        if (detail::scalar_is_zero(y(j))) continue;
        const VecQ& coeff = c[static_cast<size_t>(i)][static_cast<size_t>(j)];
        const S xy = x(i) * y(j);
        for (int k = 0; k < dim; ++k) {
          if (sgn(coeff(k)) != 0) out(k) = out(k) + xy * S(coeff(k));
        }
      }
    }
    return out;
  }

  // structure constants as doubles, for the numeric backends
  std::vector<Eigen::MatrixXd> c_float() const;  // entry [i](j,k) = c[i][j][k]
  Eigen::VectorXd bracket_float(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;

  // matrix of ad(x): ad(x) y = [x, y]
  template <class S>
  DenseMat<S> ad(const DenseVec<S>& x) const {
    DenseMat<S> m(dim, dim);
    for (int j = 0; j < dim; ++j) {
      DenseVec<S> ej(dim);
      for (int k = 0; k < dim; ++k) ej(k) = S(k == j ? 1 : 0);
      const DenseVec<S> col = bracket<S>(x, ej);
      for (int k = 0; k < dim; ++k) m(k, j) = col(k);
    }
    return m;
  }
};

struct ValidationIssue {
  std::string kind;  // "antisymmetry" | "jacobi"
  int i = 0, j = 0, k = 0;
};

struct ValidationReport {
  bool ok = true;
  std::vector<ValidationIssue> issues;
  std::string str() const;
};

// checks antisymmetry and the Jacobi identity exactly; reports every failing triple
ValidationReport validate_algebra(const LieAlgebraSpec& spec);

// Subspace with a canonical (reduced row echelon) basis stored as rows, so
// equal subspaces compare equal coordinate-wise.
template <class S>
struct Subspace {
  int ambient = 0;
  DenseMat<S> rows;  // dim() x ambient, RREF

  int dim() const { return static_cast<int>(rows.rows()); }

  bool operator==(const Subspace& o) const {
    if (ambient != o.ambient || rows.rows() != o.rows.rows()) return false;
    for (Eigen::Index i = 0; i < rows.rows(); ++i)
      for (Eigen::Index j = 0; j < rows.cols(); ++j)
        if (!(rows(i, j) == o.rows(i, j))) return false;
    return true;
  }
};

using SubspaceQ = Subspace<Rational>;
using SubspaceK = Subspace<FieldElement>;

// span of a stack of row vectors, in canonical form
template <class S>
Subspace<S> span_rows(const DenseMat<S>& stacked, int ambient) {
  Subspace<S> out;
  out.ambient = ambient;
  if (stacked.rows() == 0) {
    out.rows = DenseMat<S>(0, ambient);
    return out;
  }
  RowEchelon<S> re = reduced_row_echelon<S>(stacked);
  out.rows = re.mat.topRows(re.rank);
  return out;
}

template <class S>
Subspace<S> full_space(int ambient) {
  DenseMat<S> id(ambient, ambient);
  for (int i = 0; i < ambient; ++i)
    for (int j = 0; j < ambient; ++j) id(i, j) = S(i == j ? 1 : 0);
  return span_rows<S>(id, ambient);
}

template <class S>
bool in_span(const Subspace<S>& sp, DenseVec<S> v);

template <class S>
std::optional<DenseVec<S>> coords_in_span(const Subspace<S>& sp, const DenseVec<S>& v);

struct SeriesReport {
  std::vector<SubspaceQ> terms;  // terms[0] = full algebra
  std::vector<int> dims;
  bool nilpotent = false;
  std::optional<int> nilpotency_class;  // smallest c with term c+1 trivial
};

// descending series term[k+1] = span [g, term[k]], computed until it stabilizes
SeriesReport lower_central_series(const LieAlgebraSpec& spec);

// stable term of the lower central series: the smallest ideal with nilpotent
// quotient among the series terms; zero exactly when the algebra is nilpotent
SubspaceQ nilpotent_shadow(const LieAlgebraSpec& spec);

struct QuotientResult {
  LieAlgebraSpec algebra;
  MatQ projection;                 // (dim - ideal dim) x dim, x -> quotient coords
  std::vector<int> complement;     // standard basis indices giving the section
};

// quotient by an ideal; throws std::invalid_argument naming a violating
// bracket when the subspace is not an ideal
QuotientResult quotient_algebra(const LieAlgebraSpec& spec, const SubspaceQ& ideal);

template <class S>
bool is_subalgebra(const LieAlgebraSpec& spec, const Subspace<S>& h);

// lower central series of the subalgebra itself reaches zero
template <class S>
bool subalgebra_is_nilpotent(const LieAlgebraSpec& spec, const Subspace<S>& h);

// {x : [x, h] subset h}
template <class S>
Subspace<S> normalizer(const LieAlgebraSpec& spec, const Subspace<S>& h);

template <class S>
bool is_self_normalizing(const LieAlgebraSpec& spec, const Subspace<S>& h) {
  return normalizer<S>(spec, h).dim() == h.dim();
}

// ---- float subspace checks (numeric backends) ----

struct FloatSubspace {
  int ambient = 0;
  Eigen::MatrixXd basis;  // ambient x dim, orthonormal columns
  int dim() const { return static_cast<int>(basis.cols()); }
};

bool float_is_subalgebra(const LieAlgebraSpec& spec, const FloatSubspace& h, double tol);
bool float_subalgebra_is_nilpotent(const LieAlgebraSpec& spec, const FloatSubspace& h, double tol);
bool float_is_self_normalizing(const LieAlgebraSpec& spec, const FloatSubspace& h, double tol);

// ---- template definitions ----

template <class S>
bool in_span(const Subspace<S>& sp, DenseVec<S> v) {
  // eliminate pivot coordinates; RREF rows have unit pivots with zeros elsewhere
  for (Eigen::Index r = 0; r < sp.rows.rows(); ++r) {
    Eigen::Index pivot = -1;
    for (Eigen::Index j = 0; j < sp.rows.cols(); ++j) {
      if (!detail::scalar_is_zero(sp.rows(r, j))) {
        pivot = j;
        break;
      }
    }
    if (pivot < 0) continue;
    const S factor = v(pivot);
    if (detail::scalar_is_zero(factor)) continue;
    for (Eigen::Index j = 0; j < v.size(); ++j) v(j) = v(j) - factor * sp.rows(r, j);
  }
  for (Eigen::Index j = 0; j < v.size(); ++j)
    if (!detail::scalar_is_zero(v(j))) return false;
  return true;
}

template <class S>
std::optional<DenseVec<S>> coords_in_span(const Subspace<S>& sp, const DenseVec<S>& v) {
  DenseVec<S> coords(sp.dim());
  DenseVec<S> rem = v;
  for (Eigen::Index r = 0; r < sp.rows.rows(); ++r) {
    Eigen::Index pivot = -1;
    for (Eigen::Index j = 0; j < sp.rows.cols(); ++j) {
      if (!detail::scalar_is_zero(sp.rows(r, j))) {
        pivot = j;
        break;
      }
    }
    const S factor = pivot < 0 ? S(0) : rem(pivot);
    coords(r) = factor;
    if (pivot >= 0 && !detail::scalar_is_zero(factor))
      for (Eigen::Index j = 0; j < rem.size(); ++j) rem(j) = rem(j) - factor * sp.rows(r, j);
  }
  for (Eigen::Index j = 0; j < rem.size(); ++j)
    if (!detail::scalar_is_zero(rem(j))) return std::nullopt;
  return coords;
}

template <class S>
bool is_subalgebra(const LieAlgebraSpec& spec, const Subspace<S>& h) {
  for (int u = 0; u < h.dim(); ++u) {
    for (int v = u + 1; v < h.dim(); ++v) {
      const DenseVec<S> br =
          spec.bracket<S>(h.rows.row(u).transpose(), h.rows.row(v).transpose());
      if (!in_span<S>(h, br)) return false;
    }
  }
  return true;
}

template <class S>
bool subalgebra_is_nilpotent(const LieAlgebraSpec& spec, const Subspace<S>& h) {
  if (!is_subalgebra<S>(spec, h)) return false;
  // descending series of h, with terms stored in ambient coordinates
  Subspace<S> term = h;
  for (int guard = 0; guard <= h.dim() + 1; ++guard) {
    if (term.dim() == 0) return true;
    DenseMat<S> stack(h.dim() * term.dim(), spec.dim);
    Eigen::Index r = 0;
    for (int u = 0; u < h.dim(); ++u)
      for (int w = 0; w < term.dim(); ++w)
        stack.row(r++) =
            spec.bracket<S>(h.rows.row(u).transpose(), term.rows.row(w).transpose()).transpose();
    Subspace<S> next = span_rows<S>(stack, spec.dim);
    if (next.dim() == term.dim()) return next.dim() == 0;
    term = next;
  }
  return false;
}

template <class S>
Subspace<S> normalizer(const LieAlgebraSpec& spec, const Subspace<S>& h) {
  const int n = spec.dim;
  const int d = h.dim();
  if (d == 0) return full_space<S>(n);
  // pivot bookkeeping for reduction against h
  std::vector<int> pivots;
  for (Eigen::Index r = 0; r < h.rows.rows(); ++r)
    for (Eigen::Index j = 0; j < h.rows.cols(); ++j)
      if (!detail::scalar_is_zero(h.rows(r, j))) {
        pivots.push_back(static_cast<int>(j));
        break;
      }
  std::vector<bool> is_pivot(static_cast<size_t>(n), false);
  for (int p : pivots) is_pivot[static_cast<size_t>(p)] = true;
  // constraint rows: residues of [e_i, b_j] at non-pivot coordinates
  DenseMat<S> constraints(d * (n - d), n);
  Eigen::Index row = 0;
  for (int j = 0; j < d; ++j) {
    for (int p = 0; p < n; ++p) {
      if (is_pivot[static_cast<size_t>(p)]) continue;
      for (int i = 0; i < n; ++i) {
        DenseVec<S> ei(n);
        for (int k = 0; k < n; ++k) ei(k) = S(k == i ? 1 : 0);
        DenseVec<S> br = spec.bracket<S>(ei, h.rows.row(j).transpose());
        // reduce modulo h
        for (Eigen::Index r = 0; r < h.rows.rows(); ++r) {
          const S factor = br(pivots[static_cast<size_t>(r)]);
          if (detail::scalar_is_zero(factor)) continue;
          for (Eigen::Index q = 0; q < br.size(); ++q)
            br(q) = br(q) - factor * h.rows(r, q);
        }
        constraints(row, i) = br(p);
      }
      ++row;
    }
  }
  const DenseMat<S> kern = exact_kernel<S>(constraints);
  return span_rows<S>(DenseMat<S>(kern.transpose()), n);
}

}  // namespace denselab
