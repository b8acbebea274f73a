#include "denselab/regular.hpp"

#include <Eigen/Eigenvalues>
#include <stdexcept>

#include "denselab/qlinalg.hpp"

namespace denselab {
namespace {

MatK ad_minus_identity_power(const GroupModel& m, const GroupElement& g) {
  const int n = m.dim();
  MatK p = m.adjoint_exact(g);
  for (int i = 0; i < n; ++i) p(i, i) = p(i, i) - FieldElement(1);
  MatK acc = p;
  for (int k = 1; k < n; ++k) acc = MatK(acc * p);
  return acc;
}

Eigen::MatrixXd ad_minus_identity_power_float(const GroupModel& m, const GroupElement& g) {
  const int n = m.dim();
  Eigen::MatrixXd p = m.adjoint_float(g) - Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd acc = p;
  for (int k = 1; k < n; ++k) acc = acc * p;
  return acc;
}

}  // namespace

int unit_eigenvalue_multiplicity(const GroupModel& m, const GroupElement& g) {
  const int n = m.dim();
  if (m.exact_backend()) return n - exact_rank<FieldElement>(ad_minus_identity_power(m, g));
  Eigen::EigenSolver<Eigen::MatrixXd> es(m.adjoint_float(g), false);
  int count = 0;
  for (int i = 0; i < n; ++i)
    if (std::abs(es.eigenvalues()(i) - std::complex<double>(1.0, 0.0)) < 1e-6) ++count;
  return count;
}

int minimal_unit_multiplicity(const GroupModel& m) {
  switch (m.kind()) {
    case ModelKind::SL2R:
    case ModelKind::SO3:
      return 1;  // rank of the group: generic Ad fixes only a line
    default:
      return m.dim();  // unipotent adjoint: the multiplicity is always full
  }
}

bool is_regular(const GroupModel& m, const GroupElement& g) {
  return unit_eigenvalue_multiplicity(m, g) == minimal_unit_multiplicity(m);
}

SubspaceK cartan_of_regular(const GroupModel& m, const GroupElement& g) {
  if (!m.exact_backend()) throw std::invalid_argument("cartan_of_regular: matrix model");
  if (!is_regular(m, g)) throw std::invalid_argument("cartan_of_regular: element is not regular");
  DenseMat<FieldElement> kernel = exact_kernel<FieldElement>(ad_minus_identity_power(m, g));
  MatK rows(kernel.cols(), kernel.rows());
  for (int j = 0; j < kernel.cols(); ++j)
    for (int i = 0; i < kernel.rows(); ++i) rows(j, i) = kernel(i, j);
  return span_rows<FieldElement>(rows, m.dim());
}

FloatSubspace cartan_of_regular_float(const GroupModel& m, const GroupElement& g) {
  if (!is_regular(m, g)) throw std::invalid_argument("cartan_of_regular_float: element is not regular");
  FloatSubspace h;
  h.ambient = m.dim();
  h.basis = float_kernel(ad_minus_identity_power_float(m, g), 1e-8);
  return h;
}

CartanCheck check_cartan(const GroupModel& m, const SubspaceK& h) {
  CartanCheck c;
  c.bracket_closed = is_subalgebra<FieldElement>(m.algebra(), h);
  c.nilpotent = c.bracket_closed && subalgebra_is_nilpotent<FieldElement>(m.algebra(), h);
  c.self_normalizing = is_self_normalizing<FieldElement>(m.algebra(), h);
  return c;
}

CartanCheck check_cartan_float(const GroupModel& m, const FloatSubspace& h, double tol) {
  CartanCheck c;
  c.bracket_closed = float_is_subalgebra(m.algebra(), h, tol);
  c.nilpotent = c.bracket_closed && float_subalgebra_is_nilpotent(m.algebra(), h, tol);
  c.self_normalizing = float_is_self_normalizing(m.algebra(), h, tol);
  return c;
}

}  // namespace denselab
