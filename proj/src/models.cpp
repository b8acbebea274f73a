#include "denselab/models.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace denselab {
namespace {

constexpr double kMatrixTol = 1e-12;
constexpr long kGridHalfSpan = 8192;   // grid numerators in [-2^13, 2^13]
constexpr long kGridDenomLog2 = 16;    // coordinates land in 0.8 * half_width

VecK zero_vec(int n) {
  VecK v(n);
  for (int i = 0; i < n; ++i) v(i) = FieldElement();
  return v;
}

// wrap every coordinate into [0, 1) exactly
VecK reduce_mod_one(const VecK& v) {
  VecK out(v.size());
  for (int i = 0; i < v.size(); ++i) {
    FieldElement c = v(i);
    Integer fl = c.floor();
    out(i) = c - FieldElement(Rational(fl));
  }
  return out;
}

Eigen::Matrix2d sl2_from_coords(double e, double h, double f) {
  Eigen::Matrix2d x;
  x << h, e, f, -h;
  return x;
}

// analytic pair (cosh/cos, sinhc/sinc) as functions of q = mu^2 (signed)
void cs_of_q(double q, double& c, double& s) {
  if (std::abs(q) < 1e-8) {
    c = 1.0 + q / 2.0 + q * q / 24.0;
    s = 1.0 + q / 6.0 + q * q / 120.0;
  } else if (q > 0) {
    double mu = std::sqrt(q);
    c = std::cosh(mu);
    s = std::sinh(mu) / mu;
  } else {
    double th = std::sqrt(-q);
    c = std::cos(th);
    s = std::sin(th) / th;
  }
}

Eigen::Matrix3d hat(const Eigen::Vector3d& w) {
  Eigen::Matrix3d k;
  k << 0, -w(2), w(1), w(2), 0, -w(0), -w(1), w(0), 0;
  return k;
}

}  // namespace

std::string model_name(ModelKind kind, int n) {
  switch (kind) {
    case ModelKind::Euclidean:
      return "euclidean" + std::to_string(n);
    case ModelKind::Torus:
      return "torus" + std::to_string(n);
    case ModelKind::Heisenberg:
      return "heisenberg";
    case ModelKind::Filiform4:
      return "filiform4";
    case ModelKind::SL2R:
      return "sl2r";
    case ModelKind::SO3:
      return "so3";
  }
  return "unknown";
}

Neighbourhood Neighbourhood::box(std::vector<double> half_widths) {
  if (half_widths.empty()) throw std::invalid_argument("box needs at least one half-width");
  for (double h : half_widths)
    if (!(h > 0)) throw std::invalid_argument("box half-widths must be positive");
  Neighbourhood w;
  w.chart = Chart::Box;
  w.half_width = std::move(half_widths);
  return w;
}

Neighbourhood Neighbourhood::exp_ball(double radius) {
  if (!(radius > 0)) throw std::invalid_argument("exp-ball radius must be positive");
  Neighbourhood w;
  w.chart = Chart::ExpBall;
  w.radius = radius;
  return w;
}

GroupModel::GroupModel(ModelKind kind, int n, LieAlgebraSpec algebra, std::string name)
    : kind_(kind), n_(n), algebra_(std::move(algebra)), name_(std::move(name)) {}

GroupModel GroupModel::euclidean(int n) {
  if (n < 1) throw std::invalid_argument("euclidean model needs n >= 1");
  return GroupModel(ModelKind::Euclidean, n, LieAlgebraSpec::zero(n), model_name(ModelKind::Euclidean, n));
}

GroupModel GroupModel::torus(int n) {
  if (n < 1) throw std::invalid_argument("torus model needs n >= 1");
  return GroupModel(ModelKind::Torus, n, LieAlgebraSpec::zero(n), model_name(ModelKind::Torus, n));
}

GroupModel GroupModel::heisenberg() {
  return GroupModel(ModelKind::Heisenberg, 3, LieAlgebraSpec::heisenberg(), "heisenberg");
}

GroupModel GroupModel::filiform4() {
  return GroupModel(ModelKind::Filiform4, 4, LieAlgebraSpec::filiform4(), "filiform4");
}

GroupModel GroupModel::sl2r() { return GroupModel(ModelKind::SL2R, 3, LieAlgebraSpec::sl2(), "sl2r"); }

GroupModel GroupModel::so3() { return GroupModel(ModelKind::SO3, 3, LieAlgebraSpec::so3(), "so3"); }

GroupModel GroupModel::by_name(const std::string& name) {
  auto tail_int = [&](size_t prefix_len) {
    int n = std::stoi(name.substr(prefix_len));
    return n;
  };
  if (name.rfind("euclidean", 0) == 0 && name.size() > 9) return euclidean(tail_int(9));
  if (name.rfind("torus", 0) == 0 && name.size() > 5) return torus(tail_int(5));
  if (name == "heisenberg") return heisenberg();
  if (name == "filiform4") return filiform4();
  if (name == "sl2r") return sl2r();
  if (name == "so3") return so3();
  throw std::invalid_argument("unknown model: " + name);
}

bool GroupModel::exact_backend() const {
  return kind_ == ModelKind::Euclidean || kind_ == ModelKind::Torus ||
         kind_ == ModelKind::Heisenberg || kind_ == ModelKind::Filiform4;
}

void GroupModel::require_kind(const GroupElement& g, const char* op) const {
  if (g.kind != kind_) throw std::invalid_argument(std::string(op) + ": model mismatch");
  // same kind but wrong arity (euclidean2 element into euclidean3, say)
  if (exact_backend() && g.x.size() != n_)
    throw std::invalid_argument(std::string(op) + ": model mismatch");
}

GroupElement GroupModel::identity() const {
  GroupElement g;
  g.kind = kind_;
  if (exact_backend())
    g.x = zero_vec(n_);
  else
    g.m = Eigen::MatrixXd::Identity(kind_ == ModelKind::SL2R ? 2 : 3, kind_ == ModelKind::SL2R ? 2 : 3);
  return g;
}

GroupElement GroupModel::element_from_coords(const VecK& coords) const {
  if (!exact_backend()) throw std::invalid_argument("element_from_coords: matrix model");
  if (coords.size() != n_) throw std::invalid_argument("element_from_coords: wrong length");
  GroupElement g;
  g.kind = kind_;
  g.x = kind_ == ModelKind::Torus ? reduce_mod_one(coords) : coords;
  return g;
}

GroupElement GroupModel::element_from_matrix(const Eigen::MatrixXd& m) const {
  if (exact_backend()) throw std::invalid_argument("element_from_matrix: coordinate model");
  GroupElement g;
  g.kind = kind_;
  g.m = m;
  if (!is_valid(g)) throw std::invalid_argument("element_from_matrix: matrix fails model constraints");
  return g;
}

bool GroupModel::is_valid(const GroupElement& g) const {
  if (g.kind != kind_) return false;
  if (exact_backend()) {
    if (g.x.size() != n_) return false;
    if (kind_ == ModelKind::Torus) {
      for (int i = 0; i < n_; ++i) {
        if (g.x(i).sign() < 0) return false;
        if ((g.x(i) - FieldElement(1)).sign() >= 0) return false;
      }
    }
    return true;
  }
  int d = kind_ == ModelKind::SL2R ? 2 : 3;
  if (g.m.rows() != d || g.m.cols() != d) return false;
  if (kind_ == ModelKind::SL2R) return std::abs(g.m.determinant() - 1.0) <= kMatrixTol;
  double ortho = (g.m.transpose() * g.m - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff();
  return ortho <= kMatrixTol && std::abs(g.m.determinant() - 1.0) <= 1e-9;
}

GroupElement GroupModel::multiply(const GroupElement& a, const GroupElement& b) const {
  require_kind(a, "multiply");
  require_kind(b, "multiply");
  GroupElement g;
  g.kind = kind_;
  switch (kind_) {
    case ModelKind::Euclidean:
      g.x = a.x + b.x;
      break;
    case ModelKind::Torus:
      g.x = reduce_mod_one(a.x + b.x);
      break;
    case ModelKind::Heisenberg: {
      g.x = zero_vec(3);
      g.x(0) = a.x(0) + b.x(0);
      g.x(1) = a.x(1) + b.x(1);
      g.x(2) = a.x(2) + b.x(2) + a.x(0) * b.x(1);
      break;
    }
    case ModelKind::Filiform4: {
      g.x = zero_vec(4);
      const FieldElement &a1 = a.x(0), &b1 = a.x(1), &c1 = a.x(2), &d1 = a.x(3);
      const FieldElement &a2 = b.x(0), &b2 = b.x(1), &c2 = b.x(2), &d2 = b.x(3);
      g.x(0) = a1 + a2;
      g.x(1) = b1 + b2;
      g.x(2) = c1 + c2 + a1 * b2;
      g.x(3) = d1 + d2 + a1 * c2 + a1 * a1 * Rational(1, 2) * b2;
      break;
    }
    case ModelKind::SL2R:
    case ModelKind::SO3:
      g.m = a.m * b.m;
      break;
  }
  return g;
}

GroupElement GroupModel::inverse(const GroupElement& a) const {
  require_kind(a, "inverse");
  GroupElement g;
  g.kind = kind_;
  switch (kind_) {
    case ModelKind::Euclidean:
      g.x = -a.x;
      break;
    case ModelKind::Torus:
      g.x = reduce_mod_one(-a.x);
      break;
    case ModelKind::Heisenberg: {
      g.x = zero_vec(3);
      g.x(0) = -a.x(0);
      g.x(1) = -a.x(1);
      g.x(2) = a.x(0) * a.x(1) - a.x(2);
      break;
    }
    case ModelKind::Filiform4: {
      const FieldElement &av = a.x(0), &bv = a.x(1), &cv = a.x(2), &dv = a.x(3);
      g.x = zero_vec(4);
      g.x(0) = -av;
      g.x(1) = -bv;
      g.x(2) = av * bv - cv;
      g.x(3) = -dv + av * cv - av * av * Rational(1, 2) * bv;
      break;
    }
    case ModelKind::SL2R: {
      // adjugate over the actual determinant, not the adjugate alone: a
      // det-1 shortcut squares any determinant drift in each conjugation,
      // which explodes under iterated commutators
      Eigen::Matrix2d m;
      m << a.m(1, 1), -a.m(0, 1), -a.m(1, 0), a.m(0, 0);
      g.m = m / a.m.determinant();
      break;
    }
    case ModelKind::SO3:
      // true inverse for the same reason; equals the transpose up to the
      // orthogonality drift of the input
      g.m = a.m.inverse();
      break;
  }
  return g;
}

GroupElement GroupModel::commutator(const GroupElement& g, const GroupElement& h) const {
  return multiply(multiply(multiply(g, h), inverse(g)), inverse(h));
}

GroupElement GroupModel::exp_exact(const VecK& v) const {
  if (!exact_backend()) throw std::invalid_argument("exp_exact: matrix model");
  if (v.size() != n_) throw std::invalid_argument("exp_exact: wrong length");
  GroupElement g;
  g.kind = kind_;
  switch (kind_) {
    case ModelKind::Euclidean:
      g.x = v;
      break;
    case ModelKind::Torus:
      g.x = reduce_mod_one(v);
      break;
    case ModelKind::Heisenberg: {
      g.x = zero_vec(3);
      g.x(0) = v(0);
      g.x(1) = v(1);
      g.x(2) = v(2) + v(0) * v(1) * Rational(1, 2);
      break;
    }
    case ModelKind::Filiform4: {
      const FieldElement &al = v(0), &be = v(1), &ga = v(2), &de = v(3);
      g.x = zero_vec(4);
      g.x(0) = al;
      g.x(1) = be;
      g.x(2) = ga + al * be * Rational(1, 2);
      g.x(3) = de + al * ga * Rational(1, 2) + al * al * be * Rational(1, 6);
      break;
    }
    default:
      break;
  }
  return g;
}

VecK GroupModel::log_exact(const GroupElement& g) const {
  require_kind(g, "log_exact");
  if (!exact_backend()) throw std::invalid_argument("log_exact: matrix model");
  switch (kind_) {
    case ModelKind::Euclidean:
      return g.x;
    case ModelKind::Torus: {
      // representative in [-1/2, 1/2)
      VecK v(n_);
      for (int i = 0; i < n_; ++i) {
        FieldElement c = g.x(i);
        if ((c - FieldElement(Rational(1, 2))).sign() >= 0) c = c - FieldElement(1);
        v(i) = c;
      }
      return v;
    }
    case ModelKind::Heisenberg: {
      VecK v = zero_vec(3);
      v(0) = g.x(0);
      v(1) = g.x(1);
      v(2) = g.x(2) - g.x(0) * g.x(1) * Rational(1, 2);
      return v;
    }
    case ModelKind::Filiform4: {
      const FieldElement &a = g.x(0), &b = g.x(1), &c = g.x(2), &d = g.x(3);
      VecK v = zero_vec(4);
      v(0) = a;
      v(1) = b;
      v(2) = c - a * b * Rational(1, 2);
      v(3) = d - a * c * Rational(1, 2) + a * a * b * Rational(1, 12);
      return v;
    }
    default:
      return g.x;
  }
}

GroupElement GroupModel::exp_float(const Eigen::VectorXd& v) const {
  if (v.size() != n_) throw std::invalid_argument("exp_float: wrong length");
  if (exact_backend()) {
    VecK w(n_);
    for (int i = 0; i < n_; ++i) w(i) = FieldElement(Rational(v(i)));
    return exp_exact(w);
  }
  GroupElement g;
  g.kind = kind_;
  if (kind_ == ModelKind::SL2R) {
    Eigen::Matrix2d x = sl2_from_coords(v(0), v(1), v(2));
    double q = -x.determinant();  // h^2 + ef
    double c, s;
    cs_of_q(q, c, s);
    g.m = c * Eigen::Matrix2d::Identity() + s * x;
  } else {
    Eigen::Vector3d w = v;
    double th = w.norm();
    double s1, s2;
    if (th < 1e-8) {
      s1 = 1.0 - th * th / 6.0;
      s2 = 0.5 - th * th / 24.0;
    } else {
      s1 = std::sin(th) / th;
      s2 = (1.0 - std::cos(th)) / (th * th);
    }
    Eigen::Matrix3d k = hat(w);
    g.m = Eigen::Matrix3d::Identity() + s1 * k + s2 * (k * k);
  }
  return g;
}

Eigen::VectorXd GroupModel::log_float(const GroupElement& g) const {
  require_kind(g, "log_float");
  if (exact_backend()) {
    VecK v = log_exact(g);
    Eigen::VectorXd out(n_);
    for (int i = 0; i < n_; ++i) out(i) = v(i).to_float();
    return out;
  }
  Eigen::VectorXd out(n_);
  if (kind_ == ModelKind::SL2R) {
    if (operator_norm(g.m - Eigen::Matrix2d::Identity()) > injectivity_radius() + 1e-12)
      throw std::domain_error("log_float: element outside the sl2r chart domain");
    double tau = 0.5 * g.m.trace();
    double s;
    if (tau > 1.0 + 1e-12) {
      double z = std::acosh(tau);
      s = std::sinh(z) / z;
    } else if (tau < 1.0 - 1e-12) {
      double z = std::acos(std::max(tau, -1.0));
      s = std::sin(z) / z;
    } else {
      s = 1.0;
    }
    Eigen::Matrix2d x = (g.m - tau * Eigen::Matrix2d::Identity()) / s;
    out << x(0, 1), x(0, 0), x(1, 0);
  } else {
    double ctheta = 0.5 * (g.m.trace() - 1.0);
    ctheta = std::min(1.0, std::max(-1.0, ctheta));
    double th = std::acos(ctheta);
    if (th > injectivity_radius() - 1e-9)
      throw std::domain_error("log_float: rotation at or beyond the cut locus");
    double factor;
    if (th < 1e-8)
      factor = 0.5 + th * th / 12.0;
    else
      factor = th / (2.0 * std::sin(th));
    out << factor * (g.m(2, 1) - g.m(1, 2)), factor * (g.m(0, 2) - g.m(2, 0)),
        factor * (g.m(1, 0) - g.m(0, 1));
  }
  return out;
}

double GroupModel::injectivity_radius() const {
  switch (kind_) {
    case ModelKind::Torus:
      return 0.5;
    case ModelKind::SL2R:
      return 0.5;  // operator-norm ball around I inside the principal branch
    case ModelKind::SO3:
      return M_PI;
    default:
      return std::numeric_limits<double>::infinity();
  }
}

MatK GroupModel::adjoint_exact(const GroupElement& g) const {
  require_kind(g, "adjoint_exact");
  if (!exact_backend()) throw std::invalid_argument("adjoint_exact: matrix model");
  MatK ad(n_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) ad(i, j) = FieldElement(i == j ? 1 : 0);
  if (kind_ == ModelKind::Heisenberg) {
    ad(2, 0) = -g.x(1);
    ad(2, 1) = g.x(0);
  } else if (kind_ == ModelKind::Filiform4) {
    const FieldElement &a = g.x(0), &b = g.x(1), &c = g.x(2);
    ad(2, 0) = -b;
    ad(2, 1) = a;
    ad(3, 0) = -c;
    ad(3, 1) = a * a * Rational(1, 2);
    ad(3, 2) = a;
  }
  return ad;
}

Eigen::MatrixXd GroupModel::adjoint_float(const GroupElement& g) const {
  require_kind(g, "adjoint_float");
  if (!is_valid(g)) throw std::invalid_argument("adjoint_float: invalid element");
  if (exact_backend()) {
    MatK ad = adjoint_exact(g);
    Eigen::MatrixXd out(n_, n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) out(i, j) = ad(i, j).to_float();
    return out;
  }
  if (kind_ == ModelKind::SO3) return g.m;  // Ad(R) acts as R on axis vectors
  // basis (E, H, F); conjugate each and read traceless coordinates back off
  Eigen::Matrix2d ginv;
  ginv << g.m(1, 1), -g.m(0, 1), -g.m(1, 0), g.m(0, 0);
  Eigen::Matrix2d basis[3];
  basis[0] << 0, 1, 0, 0;
  basis[1] << 1, 0, 0, -1;
  basis[2] << 0, 0, 1, 0;
  Eigen::MatrixXd out(3, 3);
  for (int j = 0; j < 3; ++j) {
    Eigen::Matrix2d m = g.m * basis[j] * ginv;
    out(0, j) = m(0, 1);  // E coordinate
    out(1, j) = m(0, 0);  // H coordinate
    out(2, j) = m(1, 0);  // F coordinate
  }
  return out;
}

double GroupModel::distance_to_identity(const GroupElement& g) const {
  require_kind(g, "distance_to_identity");
  switch (kind_) {
    case ModelKind::Torus: {
      double acc = 0;
      for (int i = 0; i < n_; ++i) {
        double f = g.x(i).to_float();
        double d = std::min(f, 1.0 - f);
        acc += d * d;
      }
      return std::sqrt(acc);
    }
    case ModelKind::SL2R:
      return operator_norm(g.m - Eigen::Matrix2d::Identity());
    case ModelKind::SO3: {
      double c = std::min(1.0, std::max(-1.0, 0.5 * (g.m.trace() - 1.0)));
      return std::acos(c);
    }
    default: {
      double acc = 0;
      for (int i = 0; i < n_; ++i) {
        double f = g.x(i).to_float();
        acc += f * f;
      }
      return std::sqrt(acc);
    }
  }
}

bool GroupModel::is_identity_exact(const GroupElement& g) const {
  require_kind(g, "is_identity_exact");
  if (exact_backend()) {
    for (int i = 0; i < n_; ++i)
      if (!g.x(i).is_zero()) return false;
    return true;
  }
  int d = kind_ == ModelKind::SL2R ? 2 : 3;
  return (g.m - Eigen::MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff() == 0.0;
}

std::string GroupModel::element_key(const GroupElement& g) const {
  require_kind(g, "element_key");
  std::ostringstream os;
  if (exact_backend()) {
    for (int i = 0; i < n_; ++i) {
      if (i) os << ';';
      os << g.x(i).str();
    }
  } else {
    // quantize so keys absorb float jitter well below model tolerances
    for (int i = 0; i < g.m.rows(); ++i)
      for (int j = 0; j < g.m.cols(); ++j) {
        if (i || j) os << ';';
        os << static_cast<long long>(std::llround(g.m(i, j) * 1e12));
      }
  }
  return os.str();
}

GroupElement GroupModel::sample(const Neighbourhood& w, Rng& rng) const {
  if (exact_backend()) {
    if (w.chart != Neighbourhood::Chart::Box)
      throw std::invalid_argument("sample: coordinate models take box neighbourhoods");
    if (static_cast<int>(w.half_width.size()) != n_)
      throw std::invalid_argument("sample: box arity mismatch");
    VecK v(n_);
    for (int i = 0; i < n_; ++i)
      v(i) = FieldElement(Rational(rng.uniform(-w.half_width[i], w.half_width[i])));
    return element_from_coords(v);
  }
  if (w.chart != Neighbourhood::Chart::ExpBall)
    throw std::invalid_argument("sample: matrix models take exp-ball neighbourhoods");
  const double r = w.radius;
  const long budget = 10'000'000;
  if (kind_ == ModelKind::SO3) {
    // uniform quaternion, rejected into the angle ball: Haar on SO(3)
    for (long trial = 0; trial < budget; ++trial) {
      double q[4];
      double norm2 = 0;
      for (double& qi : q) {
        qi = rng.normal();
        norm2 += qi * qi;
      }
      if (norm2 < 1e-12) continue;
      double nrm = std::sqrt(norm2);
      for (double& qi : q) qi /= nrm;
      double angle = 2.0 * std::atan2(std::sqrt(q[1] * q[1] + q[2] * q[2] + q[3] * q[3]), std::abs(q[0]));
      if (angle > std::min(r, M_PI)) continue;
      double w0 = q[0], x = q[1], y = q[2], z = q[3];  // matrix is quadratic in q: sign-free
      Eigen::Matrix3d m;
      m << 1 - 2 * (y * y + z * z), 2 * (x * y - z * w0), 2 * (x * z + y * w0),
          2 * (x * y + z * w0), 1 - 2 * (x * x + z * z), 2 * (y * z - x * w0),
          2 * (x * z - y * w0), 2 * (y * z + x * w0), 1 - 2 * (x * x + y * y);
      GroupElement g;
      g.kind = kind_;
      g.m = m;
      return g;
    }
    throw std::runtime_error("so3 sampler exhausted its proposal budget; ball radius " +
                             std::to_string(r) + " accepts too rarely");
  }
  // SL2R: uniform proposal in the Frobenius ball of the chart, thinned by the
  // Haar density  sinh(mu)^2/mu^2  (hyperbolic) or  sin(th)^2/th^2  (elliptic),
  // where q = mu^2 = h^2 + ef.  |X|_F^2 = 2h^2 + e^2 + f^2 gives q <= r^2/2,
  // so the hyperbolic branch bounds the weight.
  double mu_max = r / std::sqrt(2.0);
  double w_max = std::pow(std::sinh(mu_max) / mu_max, 2);
  for (long trial = 0; trial < budget; ++trial) {
    double z[3];
    double norm2 = 0;
    for (double& zi : z) {
      zi = rng.normal();
      norm2 += zi * zi;
    }
    if (norm2 < 1e-12) continue;
    double scale = r * std::cbrt(rng.u01()) / std::sqrt(norm2);
    double h = scale * z[0] / std::sqrt(2.0), e = scale * z[1], f = scale * z[2];
    double q = h * h + e * f;
    double weight;
    if (std::abs(q) < 1e-12) {
      weight = 1.0;
    } else if (q > 0) {
      double mu = std::sqrt(q);
      weight = std::pow(std::sinh(mu) / mu, 2);
    } else {
      double th = std::sqrt(-q);
      weight = std::pow(std::sin(th) / th, 2);
    }
    if (rng.u01() * w_max > weight) continue;
    Eigen::VectorXd v(3);
    v << e, h, f;
    return exp_float(v);
  }
  throw std::runtime_error("sl2r sampler exhausted its proposal budget");
}

GroupElement GroupModel::sample_exact(const Neighbourhood& w, Rng& rng) const {
  if (!exact_backend())
    throw std::invalid_argument("sample_exact: needs polynomial coordinates");
  if (w.chart != Neighbourhood::Chart::Box)
    throw std::invalid_argument("sample_exact: coordinate models take box neighbourhoods");
  if (static_cast<int>(w.half_width.size()) != n_)
    throw std::invalid_argument("sample_exact: box arity mismatch");
  // coordinate = hw * (m0 + m1*sqrt2 + m2*sqrt3 + m3*sqrt5) / 2^16 with
  // |mi| <= 2^13, so |coordinate| <= 0.798*hw: inside the box, and generic
  // draws are irrational in every surd direction.
  const Integer denom = Integer(1) << kGridDenomLog2;
  static const int kSurd[4] = {1, 2, 3, 5};
  VecK v(n_);
  for (int i = 0; i < n_; ++i) {
    FieldElement c;
    for (int k = 0; k < 4; ++k) {
      long m = rng.uniform_int(-kGridHalfSpan, kGridHalfSpan);
      Rational q(Integer(m), denom);
      q.canonicalize();
      c = c + FieldElement::radical(kSurd[k]) * FieldElement(q);
    }
    v(i) = c * FieldElement(Rational(w.half_width[i]));
  }
  return element_from_coords(v);
}

Neighbourhood GroupModel::default_window() const {
  switch (kind_) {
    case ModelKind::Torus:
      return Neighbourhood::box(std::vector<double>(n_, 0.45));
    case ModelKind::SL2R:
      return Neighbourhood::exp_ball(0.35);
    case ModelKind::SO3:
      return Neighbourhood::exp_ball(1.0);
    default:
      return Neighbourhood::box(std::vector<double>(n_, 1.0));
  }
}

int GroupModel::abelianization_dim() const {
  switch (kind_) {
    case ModelKind::Heisenberg:
    case ModelKind::Filiform4:
      return 2;
    case ModelKind::SL2R:
    case ModelKind::SO3:
      return 0;  // perfect groups: trivial abelianization
    default:
      return n_;
  }
}

VecK GroupModel::abelianize(const GroupElement& g) const {
  require_kind(g, "abelianize");
  if (!exact_backend()) throw std::invalid_argument("abelianize: matrix model");
  int d = abelianization_dim();
  VecK v(d);
  for (int i = 0; i < d; ++i) v(i) = g.x(i);
  return v;
}

GroupElement filiform_to_heisenberg(const GroupElement& g) {
  if (g.kind != ModelKind::Filiform4)
    throw std::invalid_argument("filiform_to_heisenberg: wrong source model");
  GroupElement h;
  h.kind = ModelKind::Heisenberg;
  VecK v(3);
  for (int i = 0; i < 3; ++i) v(i) = g.x(i);
  h.x = v;
  return h;
}

double operator_norm(const Eigen::MatrixXd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  return svd.singularValues()(0);
}

}  // namespace denselab
