#pragma once

#include <string>
#include <vector>

#include "denselab/lie_algebra.hpp"
#include "denselab/rng.hpp"

namespace denselab {

// Concrete connected Lie groups. The polynomial-law models (Euclidean, Torus,
// Heisenberg, Filiform4) carry exact multiquadratic coordinates so density
// certificates stay exact; SL(2,R) and SO(3) are float matrix models since
// their charts are transcendental.
enum class ModelKind { Euclidean, Torus, Heisenberg, Filiform4, SL2R, SO3 };

std::string model_name(ModelKind kind, int n);

struct GroupElement {
  ModelKind kind = ModelKind::Euclidean;
  VecK x;             // coordinate tuple (exact backends)
  Eigen::MatrixXd m;  // matrix payload (SL2R: 2x2, SO3: 3x3)
};

// Relatively compact neighbourhood of the identity: a coordinate box for the
// exact models or an exponential-chart ball for the matrix models.
struct Neighbourhood {
  enum class Chart { Box, ExpBall };
  Chart chart = Chart::Box;
  std::vector<double> half_width;  // Box: per-coordinate, all > 0
  double radius = 0.0;             // ExpBall: algebra Frobenius-norm radius

  static Neighbourhood box(std::vector<double> half_widths);
  static Neighbourhood exp_ball(double radius);
};

class GroupModel {
 public:
  static GroupModel euclidean(int n);
  static GroupModel torus(int n);
  static GroupModel heisenberg();
  static GroupModel filiform4();
  static GroupModel sl2r();
  static GroupModel so3();
  // "euclidean2", "torus3", "heisenberg", "filiform4", "sl2r", "so3"
  static GroupModel by_name(const std::string& name);

  ModelKind kind() const { return kind_; }
  int dim() const { return n_; }
  const std::string& name() const { return name_; }
  bool exact_backend() const;
  const LieAlgebraSpec& algebra() const { return algebra_; }

  GroupElement identity() const;
  // validity-checked constructors
  GroupElement element_from_coords(const VecK& coords) const;
  GroupElement element_from_matrix(const Eigen::MatrixXd& m) const;
  bool is_valid(const GroupElement& g) const;

  GroupElement multiply(const GroupElement& a, const GroupElement& b) const;
  GroupElement inverse(const GroupElement& a) const;
  // zeta_g(h) = g h g^-1 h^-1
  GroupElement commutator(const GroupElement& g, const GroupElement& h) const;

  // canonical-coordinate charts; exact and polynomial on the exact backends,
  // closed-form matrix exp/log on SL2R and SO3
  GroupElement exp_exact(const VecK& v) const;
  VecK log_exact(const GroupElement& g) const;
  GroupElement exp_float(const Eigen::VectorXd& v) const;
  // throws std::domain_error outside the injectivity radius
  Eigen::VectorXd log_float(const GroupElement& g) const;
  double injectivity_radius() const;

  MatK adjoint_exact(const GroupElement& g) const;
  Eigen::MatrixXd adjoint_float(const GroupElement& g) const;

  double distance_to_identity(const GroupElement& g) const;
  bool is_identity_exact(const GroupElement& g) const;
  // dedup key: canonical coordinates (exact) or 1e-12-quantized entries (float)
  std::string element_key(const GroupElement& g) const;

  // Haar sampling restricted to W. The Lebesgue sampler covers every model
  // (coordinate volume is Haar on the unimodular polynomial models; quaternion
  // rejection on SO3; exponential-chart density rejection on SL2R). The exact
  // sampler draws coordinates q0 + q1 sqrt2 + q2 sqrt3 + q3 sqrt5 with the q's
  // on a rational grid of denominator 2^16, so downstream certificates stay exact.
  GroupElement sample(const Neighbourhood& w, Rng& rng) const;
  GroupElement sample_exact(const Neighbourhood& w, Rng& rng) const;

  Neighbourhood default_window() const;

  int abelianization_dim() const;
  // image in G/G' as exact coordinates (exact backends only)
  VecK abelianize(const GroupElement& g) const;

 private:
  GroupModel(ModelKind kind, int n, LieAlgebraSpec algebra, std::string name);
  void require_kind(const GroupElement& g, const char* op) const;

  ModelKind kind_;
  int n_;
  LieAlgebraSpec algebra_;
  std::string name_;
};

// bundled quotient map onto Filiform4 / center, in Heisenberg coordinates
GroupElement filiform_to_heisenberg(const GroupElement& g);

// operator norm of a small matrix (largest singular value)
double operator_norm(const Eigen::MatrixXd& m);

}  // namespace denselab
