#include "denselab/lie_algebra.hpp"

#include <fstream>
#include <sstream>

namespace denselab {

namespace {

std::vector<std::vector<VecQ>> zero_constants(int n) {
  std::vector<std::vector<VecQ>> c(static_cast<size_t>(n));
  for (auto& row : c) {
    row.resize(static_cast<size_t>(n));
    for (auto& v : row) {
      v = VecQ(n);
      for (int k = 0; k < n; ++k) v(k) = Rational(0);
    }
  }
  return c;
}

}  // namespace

LieAlgebraSpec LieAlgebraSpec::zero(int n) {
  LieAlgebraSpec s;
  s.dim = n;
  s.c = zero_constants(n);
  return s;
}

void LieAlgebraSpec::set_bracket(int i, int j, int k, const Rational& value) {
  if (i == j) throw std::invalid_argument("set_bracket: [e_i, e_i] is identically zero");
  if (i < 0 || j < 0 || k < 0 || i >= dim || j >= dim || k >= dim)
    throw std::out_of_range("set_bracket: index out of range");
  Rational v = value;
  v.canonicalize();
  c[static_cast<size_t>(i)][static_cast<size_t>(j)](k) = v;
  c[static_cast<size_t>(j)][static_cast<size_t>(i)](k) = -v;
}

LieAlgebraSpec LieAlgebraSpec::heisenberg() {
  LieAlgebraSpec s = zero(3);
  s.labels = {"X", "Y", "Z"};
  s.set_bracket(0, 1, 2, 1);
  return s;
}

LieAlgebraSpec LieAlgebraSpec::filiform4() {
  LieAlgebraSpec s = zero(4);
  s.labels = {"A", "B", "C", "D"};
  s.set_bracket(0, 1, 2, 1);
  s.set_bracket(0, 2, 3, 1);
  return s;
}

LieAlgebraSpec LieAlgebraSpec::aff1() {
  LieAlgebraSpec s = zero(2);
  s.labels = {"X", "Y"};
  s.set_bracket(0, 1, 1, 1);
  return s;
}

LieAlgebraSpec LieAlgebraSpec::sl2() {
  LieAlgebraSpec s = zero(3);
  s.labels = {"E", "H", "F"};
  s.set_bracket(0, 2, 1, 1);    // [E,F] = H
  s.set_bracket(1, 0, 0, 2);    // [H,E] = 2E
  s.set_bracket(1, 2, 2, -2);   // [H,F] = -2F
  return s;
}

LieAlgebraSpec LieAlgebraSpec::so3() {
  LieAlgebraSpec s = zero(3);
  s.labels = {"Lx", "Ly", "Lz"};
  s.set_bracket(0, 1, 2, 1);
  s.set_bracket(1, 2, 0, 1);
  s.set_bracket(2, 0, 1, 1);
  return s;
}

LieAlgebraSpec LieAlgebraSpec::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("LieAlgebraSpec::load: cannot open " + path);
  LieAlgebraSpec s;
  bool have_dim = false;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    const std::string where = path + ":" + std::to_string(lineno);
    if (key == "dim") {
      int n;
      if (!(ls >> n) || n <= 0) throw std::runtime_error(where + ": bad dimension");
      s = zero(n);
      have_dim = true;
    } else if (key == "labels") {
      if (!have_dim) throw std::runtime_error(where + ": labels before dim");
      std::string label;
      while (ls >> label) s.labels.push_back(label);
      if (static_cast<int>(s.labels.size()) != s.dim)
        throw std::runtime_error(where + ": label count != dim");
    } else if (key == "c") {
      if (!have_dim) throw std::runtime_error(where + ": bracket before dim");
      int i, j, k;
      std::string value;
      if (!(ls >> i >> j >> k >> value)) throw std::runtime_error(where + ": bad bracket line");
      if (i < 0 || j < 0 || k < 0 || i >= s.dim || j >= s.dim || k >= s.dim)
        throw std::runtime_error(where + ": bracket index out of range");
      if (i == j) throw std::runtime_error(where + ": [e_i, e_i] must be zero");
      if (sgn(s.c[static_cast<size_t>(i)][static_cast<size_t>(j)](k)) != 0)
        throw std::runtime_error(where + ": duplicate bracket entry");
      s.set_bracket(i, j, k, parse_rational(value));
    } else {
      throw std::runtime_error(where + ": unknown directive '" + key + "'");
    }
  }
  if (!have_dim) throw std::runtime_error(path + ": missing dim line");
  return s;
}

std::string LieAlgebraSpec::save_text() const {
  std::ostringstream out;
  out << "dim " << dim << "\n";
  if (!labels.empty()) {
    out << "labels";
    for (const auto& l : labels) out << ' ' << l;
    out << "\n";
  }
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j)
      for (int k = 0; k < dim; ++k)
        if (sgn(c[static_cast<size_t>(i)][static_cast<size_t>(j)](k)) != 0)
          out << "c " << i << ' ' << j << ' ' << k << ' '
              << rational_str(c[static_cast<size_t>(i)][static_cast<size_t>(j)](k)) << "\n";
  return out.str();
}

std::vector<Eigen::MatrixXd> LieAlgebraSpec::c_float() const {
  std::vector<Eigen::MatrixXd> out(static_cast<size_t>(dim));
  for (int i = 0; i < dim; ++i) {
    out[static_cast<size_t>(i)] = Eigen::MatrixXd::Zero(dim, dim);
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k)
        out[static_cast<size_t>(i)](j, k) = c[static_cast<size_t>(i)][static_cast<size_t>(j)](k).get_d();
  }
  return out;
}

Eigen::VectorXd LieAlgebraSpec::bracket_float(const Eigen::VectorXd& x,
                                              const Eigen::VectorXd& y) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(dim);
  for (int i = 0; i < dim; ++i) {
    if (x(i) == 0.0) continue;
    for (int j = 0; j < dim; ++j) {
      if (y(j) == 0.0) continue;
      const double xy = x(i) * y(j);
      for (int k = 0; k < dim; ++k) {
        const double cf = c[static_cast<size_t>(i)][static_cast<size_t>(j)](k).get_d();
        if (cf != 0.0) out(k) += xy * cf;
      }
    }
  }
  return out;
}

std::string ValidationReport::str() const {
  if (ok) return "ok";
  std::ostringstream out;
  for (const auto& issue : issues)
    out << issue.kind << " violated at (" << issue.i << "," << issue.j << "," << issue.k << ")\n";
  return out.str();
}

ValidationReport validate_algebra(const LieAlgebraSpec& spec) {
  ValidationReport report;
  const int n = spec.dim;
  if (static_cast<int>(spec.c.size()) != n) {
    report.ok = false;
    report.issues.push_back({"shape", 0, 0, 0});
    return report;
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        if (spec.c[static_cast<size_t>(i)][static_cast<size_t>(j)](k) !=
            -spec.c[static_cast<size_t>(j)][static_cast<size_t>(i)](k)) {
          report.ok = false;
          report.issues.push_back({"antisymmetry", i, j, k});
        }
      }
    }
  }
  // [[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j] = 0
  for (int i = 0; i < n; ++i) {
    VecQ ei = VecQ::Zero(n);
    ei(i) = 1;
    for (int j = i + 1; j < n; ++j) {
      VecQ ej = VecQ::Zero(n);
      ej(j) = 1;
      for (int k = j + 1; k < n; ++k) {
        VecQ ek = VecQ::Zero(n);
        ek(k) = 1;
        VecQ acc = spec.bracket<Rational>(spec.bracket<Rational>(ei, ej), ek) +
                   spec.bracket<Rational>(spec.bracket<Rational>(ej, ek), ei) +
                   spec.bracket<Rational>(spec.bracket<Rational>(ek, ei), ej);
        for (int m = 0; m < n; ++m) {
          if (sgn(acc(m)) != 0) {
            report.ok = false;
            report.issues.push_back({"jacobi", i, j, k});
            break;
          }
        }
      }
    }
  }
  return report;
}

SeriesReport lower_central_series(const LieAlgebraSpec& spec) {
  SeriesReport report;
  const int n = spec.dim;
  SubspaceQ term = full_space<Rational>(n);
  report.terms.push_back(term);
  report.dims.push_back(term.dim());
  while (true) {
    if (term.dim() == 0) break;
    MatQ stack(n * term.dim(), n);
    Eigen::Index r = 0;
    for (int i = 0; i < n; ++i) {
      VecQ ei = VecQ::Zero(n);
      ei(i) = 1;
      for (int w = 0; w < term.dim(); ++w)
        stack.row(r++) = spec.bracket<Rational>(ei, term.rows.row(w).transpose()).transpose();
    }
    SubspaceQ next = span_rows<Rational>(stack, n);
    if (next.dim() == term.dim()) break;  // stabilized above zero
    term = next;
    report.terms.push_back(term);
    report.dims.push_back(term.dim());
  }
  report.nilpotent = report.dims.back() == 0;
  if (report.nilpotent) report.nilpotency_class = static_cast<int>(report.dims.size()) - 1;
  return report;
}

SubspaceQ nilpotent_shadow(const LieAlgebraSpec& spec) {
  return lower_central_series(spec).terms.back();
}

QuotientResult quotient_algebra(const LieAlgebraSpec& spec, const SubspaceQ& ideal) {
  const int n = spec.dim;
  if (ideal.ambient != n) throw std::invalid_argument("quotient_algebra: ambient mismatch");
  // ideal check first, reporting a violating bracket by name
  for (int i = 0; i < n; ++i) {
    VecQ ei = VecQ::Zero(n);
    ei(i) = 1;
    for (int w = 0; w < ideal.dim(); ++w) {
      const VecQ br = spec.bracket<Rational>(ei, ideal.rows.row(w).transpose());
      if (!in_span<Rational>(ideal, br)) {
        std::ostringstream msg;
        msg << "quotient_algebra: not an ideal, [e_" << i << ", basis_" << w
            << "] leaves the subspace";
        throw std::invalid_argument(msg.str());
      }
    }
  }
  // complement = standard basis indices away from the ideal's pivot columns
  std::vector<bool> is_pivot(static_cast<size_t>(n), false);
  for (Eigen::Index r = 0; r < ideal.rows.rows(); ++r)
    for (Eigen::Index j = 0; j < n; ++j)
      if (sgn(ideal.rows(r, j)) != 0) {
        is_pivot[static_cast<size_t>(j)] = true;
        break;
      }
  QuotientResult out;
  for (int j = 0; j < n; ++j)
    if (!is_pivot[static_cast<size_t>(j)]) out.complement.push_back(j);
  const int q = static_cast<int>(out.complement.size());

  // full change of basis M = [ideal rows ; complement unit rows], x = M^T y
  MatQ m(n, n);
  for (Eigen::Index r = 0; r < ideal.rows.rows(); ++r) m.row(r) = ideal.rows.row(r);
  for (int t = 0; t < q; ++t) {
    VecQ e = VecQ::Zero(n);
    e(out.complement[static_cast<size_t>(t)]) = 1;
    m.row(ideal.dim() + t) = e.transpose();
  }
  const MatQ minv = exact_inverse<Rational>(MatQ(m.transpose()));
  out.projection = minv.bottomRows(q);

  out.algebra = LieAlgebraSpec::zero(q);
  if (!spec.labels.empty()) {
    for (int t = 0; t < q; ++t)
      out.algebra.labels.push_back(spec.labels[static_cast<size_t>(out.complement[static_cast<size_t>(t)])]);
  }
  for (int u = 0; u < q; ++u) {
    VecQ eu = VecQ::Zero(n);
    eu(out.complement[static_cast<size_t>(u)]) = 1;
    for (int v = u + 1; v < q; ++v) {
      VecQ ev = VecQ::Zero(n);
      ev(out.complement[static_cast<size_t>(v)]) = 1;
      const VecQ br = out.projection * spec.bracket<Rational>(eu, ev);
      for (int k = 0; k < q; ++k)
        if (sgn(br(k)) != 0) out.algebra.set_bracket(u, v, k, br(k));
    }
  }
  return out;
}

// ---- float subspace checks ----

namespace {

// brackets of basis columns, projected coordinates and residuals
Eigen::VectorXd float_bracket_cols(const LieAlgebraSpec& spec, const Eigen::VectorXd& x,
                                   const Eigen::VectorXd& y) {
  return spec.bracket_float(x, y);
}

}  // namespace

bool float_is_subalgebra(const LieAlgebraSpec& spec, const FloatSubspace& h, double tol) {
  const auto& b = h.basis;
  for (int u = 0; u < h.dim(); ++u)
    for (int v = u + 1; v < h.dim(); ++v) {
      const Eigen::VectorXd br = float_bracket_cols(spec, b.col(u), b.col(v));
      const double residual = (br - b * (b.transpose() * br)).norm();
      if (residual > tol * (1.0 + br.norm())) return false;
    }
  return true;
}

bool float_subalgebra_is_nilpotent(const LieAlgebraSpec& spec, const FloatSubspace& h,
                                   double tol) {
  if (!float_is_subalgebra(spec, h, tol)) return false;
  Eigen::MatrixXd term = h.basis;
  for (int guard = 0; guard <= h.dim() + 1; ++guard) {
    if (term.cols() == 0) return true;
    Eigen::MatrixXd stack(spec.dim, h.dim() * term.cols());
    Eigen::Index col = 0;
    for (int u = 0; u < h.dim(); ++u)
      for (Eigen::Index w = 0; w < term.cols(); ++w)
        stack.col(col++) = float_bracket_cols(spec, h.basis.col(u), term.col(w));
    Eigen::MatrixXd next = float_column_space(stack, tol);
    if (next.cols() == term.cols()) return next.cols() == 0;
    term = next;
  }
  return false;
}

bool float_is_self_normalizing(const LieAlgebraSpec& spec, const FloatSubspace& h, double tol) {
  const int n = spec.dim;
  const int d = h.dim();
  if (d == 0) return n == 0;
  // x is in the normalizer iff (I - bb^T)[x, h_j] = 0 for all j
  const Eigen::MatrixXd proj_out =
      Eigen::MatrixXd::Identity(n, n) - h.basis * h.basis.transpose();
  Eigen::MatrixXd constraints(n * d, n);
  Eigen::Index row = 0;
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < n; ++i) {
      Eigen::VectorXd ei = Eigen::VectorXd::Zero(n);
      ei(i) = 1.0;
      const Eigen::VectorXd res = proj_out * float_bracket_cols(spec, ei, h.basis.col(j));
      for (int p = 0; p < n; ++p) constraints(row + p, i) = res(p);
    }
    row += n;
  }
  const int kernel_dim = n - float_rank(constraints, tol);
  return kernel_dim == d;
}

}  // namespace denselab
