#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>

#include "denselab/models.hpp"

using namespace denselab;

namespace {

bool kv_eq(const VecK& a, const VecK& b) {
  if (a.size() != b.size()) return false;
  for (int i = 0; i < a.size(); ++i)
    if (a(i) != b(i)) return false;
  return true;
}

bool elem_eq_exact(const GroupElement& a, const GroupElement& b) {
  return a.kind == b.kind && kv_eq(a.x, b.x);
}

double elem_dist_float(const GroupElement& a, const GroupElement& b) {
  return (a.m - b.m).cwiseAbs().maxCoeff();
}

GroupElement coords4(const GroupModel& m, const char* a, const char* b, const char* c,
                     const char* d) {
  VecK v(4);
  v(0) = FieldElement::parse(a);
  v(1) = FieldElement::parse(b);
  v(2) = FieldElement::parse(c);
  v(3) = FieldElement::parse(d);
  return m.element_from_coords(v);
}

// exact matrix exponential truncated after `terms` powers; exact for
// nilpotent arguments whose power vanishes by then
MatK mat_exp_series(const MatK& a, int terms) {
  const int n = static_cast<int>(a.rows());
  MatK sum(n, n), term(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      sum(i, j) = FieldElement(i == j ? 1 : 0);
      term(i, j) = sum(i, j);
    }
  for (int k = 1; k <= terms; ++k) {
    MatK next(n, n);
    next = term * a;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) next(i, j) = next(i, j) * FieldElement(Rational(1, k));
    term = next;
    sum = MatK(sum + term);
  }
  return sum;
}

}  // namespace

TEST_CASE("group axioms hold exactly on the coordinate models") {
  Rng rng(11);
  for (const char* name : {"euclidean2", "euclidean3", "torus2", "heisenberg", "filiform4"}) {
    GroupModel m = GroupModel::by_name(name);
    CAPTURE(name);
    Neighbourhood w = m.default_window();
    for (int t = 0; t < 20; ++t) {
      GroupElement a = m.sample_exact(w, rng);
      GroupElement b = m.sample_exact(w, rng);
      GroupElement c = m.sample_exact(w, rng);
      CHECK(elem_eq_exact(m.multiply(m.multiply(a, b), c), m.multiply(a, m.multiply(b, c))));
      CHECK(elem_eq_exact(m.multiply(a, m.identity()), a));
      CHECK(elem_eq_exact(m.multiply(m.identity(), a), a));
      CHECK(m.is_identity_exact(m.multiply(a, m.inverse(a))));
      CHECK(m.is_identity_exact(m.multiply(m.inverse(a), a)));
      CHECK(m.is_valid(a));
    }
  }
}

TEST_CASE("group axioms hold to float tolerance on the matrix models") {
  Rng rng(12);
  for (const char* name : {"sl2r", "so3"}) {
    GroupModel m = GroupModel::by_name(name);
    CAPTURE(name);
    Neighbourhood w = m.default_window();
    for (int t = 0; t < 20; ++t) {
      GroupElement a = m.sample(w, rng);
      GroupElement b = m.sample(w, rng);
      GroupElement c = m.sample(w, rng);
      CHECK(elem_dist_float(m.multiply(m.multiply(a, b), c), m.multiply(a, m.multiply(b, c))) < 1e-12);
      CHECK(elem_dist_float(m.multiply(a, m.inverse(a)), m.identity()) < 1e-12);
      CHECK(m.is_valid(a));
    }
  }
}

TEST_CASE("filiform multiplication, inverse and commutator reference values") {
  GroupModel m = GroupModel::filiform4();
  GroupElement g = coords4(m, "1", "0", "0", "0");
  GroupElement h = coords4(m, "0", "1", "0", "0");
  // the polynomial law picks up the c- and d-corrections
  CHECK(elem_eq_exact(m.multiply(g, h), coords4(m, "1", "1", "1", "1/2")));
  CHECK(elem_eq_exact(m.inverse(g), coords4(m, "-1", "0", "0", "0")));
  // commutator of the first two generators lands on the derived coordinates
  GroupElement z = m.commutator(g, h);
  CHECK(elem_eq_exact(z, coords4(m, "0", "0", "1", "1/2")));
  // and one further commutator step is central
  GroupElement z2 = m.commutator(g, z);
  CHECK(z2.x(0).is_zero());
  CHECK(z2.x(1).is_zero());
  CHECK(z2.x(2).is_zero());
  CHECK(z2.x(3) == FieldElement(1));
  // third step: the center commutes with everything
  CHECK(m.is_identity_exact(m.commutator(g, z2)));
}

TEST_CASE("heisenberg law matches its defining polynomial") {
  GroupModel m = GroupModel::heisenberg();
  VecK a(3), b(3);
  a(0) = FieldElement::sqrt2();
  a(1) = FieldElement(Rational(1, 3));
  a(2) = FieldElement(0);
  b(0) = FieldElement(Rational(1, 2));
  b(1) = FieldElement::sqrt3();
  b(2) = FieldElement(1);
  GroupElement p = m.multiply(m.element_from_coords(a), m.element_from_coords(b));
  CHECK(p.x(0) == FieldElement::sqrt2() + FieldElement(Rational(1, 2)));
  CHECK(p.x(1) == FieldElement(Rational(1, 3)) + FieldElement::sqrt3());
  CHECK(p.x(2) == FieldElement(1) + FieldElement::sqrt2() * FieldElement::sqrt3());
}

TEST_CASE("torus coordinates stay reduced and wrap exactly") {
  GroupModel m = GroupModel::torus(2);
  VecK a(2);
  a(0) = FieldElement(Rational(7, 10));
  a(1) = FieldElement::sqrt2();  // 1.414... wraps to sqrt2 - 1
  GroupElement g = m.element_from_coords(a);
  CHECK(g.x(0) == FieldElement(Rational(7, 10)));
  CHECK(g.x(1) == FieldElement::sqrt2() - FieldElement(1));
  GroupElement gg = m.multiply(g, g);
  CHECK(gg.x(0) == FieldElement(Rational(2, 5)));  // 1.4 mod 1
  CHECK(gg.x(1) == FieldElement(2) * FieldElement::sqrt2() - FieldElement(2));
  CHECK(m.is_valid(gg));
  // hand-built unreduced tuple is not a valid torus element
  GroupElement bad;
  bad.kind = ModelKind::Torus;
  VecK w(2);
  w(0) = FieldElement(Rational(3, 2));
  w(1) = FieldElement(0);
  bad.x = w;
  CHECK_FALSE(m.is_valid(bad));
  // inverse wraps back into [0,1)
  GroupElement inv = m.inverse(g);
  CHECK(inv.x(0) == FieldElement(Rational(3, 10)));
  CHECK(m.is_identity_exact(m.multiply(g, inv)));
}

TEST_CASE("exact exp and log are mutually inverse polynomial charts") {
  Rng rng(13);
  for (const char* name : {"euclidean3", "heisenberg", "filiform4"}) {
    GroupModel m = GroupModel::by_name(name);
    CAPTURE(name);
    for (int t = 0; t < 20; ++t) {
      GroupElement g = m.sample_exact(m.default_window(), rng);
      CHECK(elem_eq_exact(m.exp_exact(m.log_exact(g)), g));
      VecK v = m.log_exact(m.sample_exact(m.default_window(), rng));
      CHECK(kv_eq(m.log_exact(m.exp_exact(v)), v));
    }
  }
  // torus: log picks the centered representative, exp wraps it back
  GroupModel t2 = GroupModel::torus(2);
  VecK a(2);
  a(0) = FieldElement(Rational(9, 10));
  a(1) = FieldElement(Rational(1, 10));
  GroupElement g = t2.element_from_coords(a);
  VecK lg = t2.log_exact(g);
  CHECK(lg(0) == FieldElement(Rational(-1, 10)));
  CHECK(lg(1) == FieldElement(Rational(1, 10)));
  CHECK(elem_eq_exact(t2.exp_exact(lg), g));
}

TEST_CASE("exp is a one-parameter homomorphism on the filiform model") {
  GroupModel m = GroupModel::filiform4();
  Rng rng(14);
  for (int t = 0; t < 10; ++t) {
    VecK x = m.log_exact(m.sample_exact(m.default_window(), rng));
    Rational s(3, 7), u(-2, 5);
    VecK sx(4), ux(4), sux(4);
    for (int i = 0; i < 4; ++i) {
      sx(i) = x(i) * FieldElement(s);
      ux(i) = x(i) * FieldElement(u);
      sux(i) = x(i) * FieldElement(s + u);
    }
    CHECK(elem_eq_exact(m.multiply(m.exp_exact(sx), m.exp_exact(ux)), m.exp_exact(sux)));
  }
}

TEST_CASE("sl2r chart: closed-form exp and log across all trace classes") {
  GroupModel m = GroupModel::sl2r();
  // hyperbolic: pure H direction gives diag(e^t, e^-t)
  Eigen::VectorXd v(3);
  v << 0, 0.3, 0;
  GroupElement g = m.exp_float(v);
  CHECK(g.m(0, 0) == doctest::Approx(std::exp(0.3)).epsilon(1e-12));
  CHECK(g.m(1, 1) == doctest::Approx(std::exp(-0.3)).epsilon(1e-12));
  CHECK(std::abs(g.m(0, 1)) < 1e-15);
  // elliptic: E - F generates rotations
  v << 0.2, 0, -0.2;
  g = m.exp_float(v);
  CHECK(g.m(0, 0) == doctest::Approx(std::cos(0.2)).epsilon(1e-12));
  CHECK(g.m(0, 1) == doctest::Approx(std::sin(0.2)).epsilon(1e-12));
  // nilpotent: unipotent upper triangular
  v << 0.25, 0, 0;
  g = m.exp_float(v);
  CHECK(g.m(0, 0) == doctest::Approx(1.0));
  CHECK(g.m(0, 1) == doctest::Approx(0.25));
  // round trips in every class
  Rng rng(15);
  for (int t = 0; t < 50; ++t) {
    Eigen::VectorXd x(3);
    for (int i = 0; i < 3; ++i) x(i) = rng.uniform(-0.2, 0.2);
    Eigen::VectorXd back = m.log_float(m.exp_float(x));
    CHECK((back - x).norm() < 1e-10);
    CHECK(std::abs(m.exp_float(x).m.determinant() - 1.0) < 1e-13);
  }
  // far from the identity the principal chart refuses
  Eigen::MatrixXd far(2, 2);
  far << 4, 0, 0, 0.25;
  CHECK_THROWS_AS((void)m.log_float(m.element_from_matrix(far)), std::domain_error);
}

TEST_CASE("so3 chart: Rodrigues exp, axis-angle log, cut locus error") {
  GroupModel m = GroupModel::so3();
  Eigen::VectorXd v(3);
  v << 0, 0, 0.3;  // 0.3 rad about the z-axis
  GroupElement g = m.exp_float(v);
  CHECK(g.m(0, 0) == doctest::Approx(std::cos(0.3)).epsilon(1e-12));
  CHECK(g.m(1, 0) == doctest::Approx(std::sin(0.3)).epsilon(1e-12));
  CHECK(g.m(2, 2) == doctest::Approx(1.0));
  CHECK((m.log_float(g) - v).norm() < 1e-12);
  CHECK(m.distance_to_identity(g) == doctest::Approx(0.3).epsilon(1e-10));
  Rng rng(16);
  for (int t = 0; t < 50; ++t) {
    Eigen::VectorXd x(3);
    for (int i = 0; i < 3; ++i) x(i) = rng.uniform(-1.0, 1.0);
    Eigen::VectorXd back = m.log_float(m.exp_float(x));
    CHECK((back - x).norm() < 1e-10);
  }
  // a half-turn sits on the cut locus: log must refuse, not wrap
  Eigen::MatrixXd half_turn(3, 3);
  half_turn << 1, 0, 0, 0, -1, 0, 0, 0, -1;
  CHECK_THROWS_AS((void)m.log_float(m.element_from_matrix(half_turn)), std::domain_error);
}

TEST_CASE("exact adjoint equals the exponentiated little-adjoint") {
  Rng rng(17);
  for (const char* name : {"heisenberg", "filiform4"}) {
    GroupModel m = GroupModel::by_name(name);
    CAPTURE(name);
    for (int t = 0; t < 10; ++t) {
      GroupElement g = m.sample_exact(m.default_window(), rng);
      MatK ad_g = m.adjoint_exact(g);
      MatK little = m.algebra().ad<FieldElement>(m.log_exact(g));
      MatK series = mat_exp_series(little, m.dim());  // nilpotent: series terminates
      bool equal = true;
      for (int i = 0; i < m.dim(); ++i)
        for (int j = 0; j < m.dim(); ++j)
          if (ad_g(i, j) != series(i, j)) equal = false;
      CHECK(equal);
      // Ad is a homomorphism, exactly
      GroupElement h = m.sample_exact(m.default_window(), rng);
      MatK lhs = m.adjoint_exact(m.multiply(g, h));
      MatK rhs = MatK(m.adjoint_exact(g) * m.adjoint_exact(h));
      bool hom = true;
      for (int i = 0; i < m.dim(); ++i)
        for (int j = 0; j < m.dim(); ++j)
          if (lhs(i, j) != rhs(i, j)) hom = false;
      CHECK(hom);
    }
  }
}

TEST_CASE("matrix-model adjoints: reference eigenvalues and homomorphism") {
  GroupModel sl = GroupModel::sl2r();
  Eigen::MatrixXd diag(2, 2);
  diag << 2, 0, 0, 0.5;
  Eigen::MatrixXd ad = sl.adjoint_float(sl.element_from_matrix(diag));
  // in the (E, H, F) basis conjugation by diag(2, 1/2) scales by (4, 1, 1/4)
  Eigen::MatrixXd expect(3, 3);
  expect << 4, 0, 0, 0, 1, 0, 0, 0, 0.25;
  CHECK((ad - expect).cwiseAbs().maxCoeff() < 1e-12);

  Rng rng(18);
  for (const char* name : {"sl2r", "so3"}) {
    GroupModel m = GroupModel::by_name(name);
    CAPTURE(name);
    for (int t = 0; t < 10; ++t) {
      GroupElement g = m.sample(m.default_window(), rng);
      GroupElement h = m.sample(m.default_window(), rng);
      Eigen::MatrixXd lhs = m.adjoint_float(m.multiply(g, h));
      Eigen::MatrixXd rhs = m.adjoint_float(g) * m.adjoint_float(h);
      CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-9);
      // Ad(g) respects the bracket structure: check on basis pairs
      auto c = m.algebra().c_float();
      Eigen::MatrixXd adg = m.adjoint_float(g);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          Eigen::VectorXd lhs2 = adg * m.algebra().bracket_float(
                                           Eigen::VectorXd::Unit(3, i), Eigen::VectorXd::Unit(3, j));
          Eigen::VectorXd rhs2 = m.algebra().bracket_float(adg.col(i), adg.col(j));
          CHECK((lhs2 - rhs2).cwiseAbs().maxCoeff() < 1e-9);
        }
    }
  }
  // so3 adjoint is the rotation itself
  GroupModel so = GroupModel::so3();
  GroupElement r = so.sample(so.default_window(), rng);
  CHECK((so.adjoint_float(r) - r.m).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("quotient onto the three-dimensional nilpotent model is a homomorphism") {
  GroupModel fil = GroupModel::filiform4();
  GroupModel heis = GroupModel::heisenberg();
  Rng rng(19);
  for (int t = 0; t < 25; ++t) {
    GroupElement g = fil.sample_exact(fil.default_window(), rng);
    GroupElement h = fil.sample_exact(fil.default_window(), rng);
    GroupElement lhs = filiform_to_heisenberg(fil.multiply(g, h));
    GroupElement rhs = heis.multiply(filiform_to_heisenberg(g), filiform_to_heisenberg(h));
    CHECK(elem_eq_exact(lhs, rhs));
    CHECK(elem_eq_exact(filiform_to_heisenberg(fil.inverse(g)), heis.inverse(filiform_to_heisenberg(g))));
  }
}

TEST_CASE("element construction enforces model constraints") {
  GroupModel sl = GroupModel::sl2r();
  Eigen::MatrixXd bad(2, 2);
  bad << 2, 0, 0, 2;  // det 4
  CHECK_THROWS_AS((void)sl.element_from_matrix(bad), std::invalid_argument);
  GroupModel so = GroupModel::so3();
  Eigen::MatrixXd refl = Eigen::MatrixXd::Identity(3, 3);
  refl(2, 2) = -1;  // orthogonal but orientation-reversing
  CHECK_THROWS_AS((void)so.element_from_matrix(refl), std::invalid_argument);
  Eigen::MatrixXd skew(3, 3);
  skew << 1, 0.5, 0, 0, 1, 0, 0, 0, 1;  // not orthogonal
  CHECK_THROWS_AS((void)so.element_from_matrix(skew), std::invalid_argument);
  GroupModel e2 = GroupModel::euclidean(2);
  VecK v(3);
  v(0) = v(1) = v(2) = FieldElement(0);
  CHECK_THROWS_AS((void)e2.element_from_coords(v), std::invalid_argument);
  // cross-model products are rejected
  GroupModel e3 = GroupModel::euclidean(3);
  CHECK_THROWS_AS((void)e2.multiply(e2.identity(), e3.identity()), std::invalid_argument);
  CHECK_THROWS_AS((void)sl.adjoint_float(so.identity()), std::invalid_argument);
}

TEST_CASE("distance to identity per model") {
  GroupModel e2 = GroupModel::euclidean(2);
  VecK v(2);
  v(0) = FieldElement(3);
  v(1) = FieldElement(4);
  CHECK(e2.distance_to_identity(e2.element_from_coords(v)) == doctest::Approx(5.0));
  GroupModel t1 = GroupModel::torus(1);
  VecK w(1);
  w(0) = FieldElement(Rational(9, 10));  // wraps: distance 0.1
  CHECK(t1.distance_to_identity(t1.element_from_coords(w)) == doctest::Approx(0.1));
  GroupModel sl = GroupModel::sl2r();
  Eigen::MatrixXd d(2, 2);
  double t = 0.2;
  d << std::exp(t), 0, 0, std::exp(-t);
  CHECK(sl.distance_to_identity(sl.element_from_matrix(d)) ==
        doctest::Approx(std::exp(t) - 1).epsilon(1e-10));
}

TEST_CASE("element keys separate distinct elements and agree on equal ones") {
  GroupModel fil = GroupModel::filiform4();
  Rng rng(20);
  GroupElement a = fil.sample_exact(fil.default_window(), rng);
  GroupElement b = fil.sample_exact(fil.default_window(), rng);
  CHECK(fil.element_key(a) == fil.element_key(a));
  CHECK(fil.element_key(a) != fil.element_key(b));
  GroupModel so = GroupModel::so3();
  GroupElement r1 = so.sample(so.default_window(), rng);
  GroupElement r2 = so.sample(so.default_window(), rng);
  CHECK(so.element_key(r1) == so.element_key(r1));
  CHECK(so.element_key(r1) != so.element_key(r2));
}

TEST_CASE("abelianization is a homomorphism onto the first coordinates") {
  GroupModel fil = GroupModel::filiform4();
  REQUIRE(fil.abelianization_dim() == 2);
  Rng rng(21);
  GroupElement g = fil.sample_exact(fil.default_window(), rng);
  GroupElement h = fil.sample_exact(fil.default_window(), rng);
  VecK ab = fil.abelianize(fil.multiply(g, h));
  CHECK(ab(0) == g.x(0) + h.x(0));
  CHECK(ab(1) == g.x(1) + h.x(1));
  CHECK(GroupModel::sl2r().abelianization_dim() == 0);
  CHECK(GroupModel::euclidean(3).abelianization_dim() == 3);
}

TEST_CASE("model lookup by name round-trips") {
  for (const char* name : {"euclidean2", "euclidean5", "torus3", "heisenberg", "filiform4", "sl2r", "so3"}) {
    GroupModel m = GroupModel::by_name(name);
    CHECK(m.name() == name);
  }
  CHECK_THROWS_AS((void)GroupModel::by_name("solvmanifold"), std::invalid_argument);
}
