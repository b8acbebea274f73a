#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "denselab/regular.hpp"

using namespace denselab;

TEST_CASE("frozen generic multiplicities per model") {
  CHECK(minimal_unit_multiplicity(GroupModel::euclidean(2)) == 2);
  CHECK(minimal_unit_multiplicity(GroupModel::torus(3)) == 3);
  CHECK(minimal_unit_multiplicity(GroupModel::heisenberg()) == 3);
  CHECK(minimal_unit_multiplicity(GroupModel::filiform4()) == 4);
  CHECK(minimal_unit_multiplicity(GroupModel::sl2r()) == 1);
  CHECK(minimal_unit_multiplicity(GroupModel::so3()) == 1);
}

TEST_CASE("unipotent adjoints make every element of the coordinate models regular") {
  Rng rng(31);
  for (const char* name : {"euclidean2", "torus2", "heisenberg", "filiform4"}) {
    GroupModel m = GroupModel::by_name(name);
    CAPTURE(name);
    for (int t = 0; t < 25; ++t) {
      GroupElement g = m.sample_exact(m.default_window(), rng);
      CHECK(unit_eigenvalue_multiplicity(m, g) == m.dim());
      CHECK(is_regular(m, g));
    }
  }
}

TEST_CASE("sl2r: hyperbolic and elliptic elements are regular, parabolic and central are not") {
  GroupModel m = GroupModel::sl2r();
  Eigen::MatrixXd hyp(2, 2), par(2, 2), rot(2, 2);
  hyp << 2, 0, 0, 0.5;
  par << 1, 1, 0, 1;
  double th = 0.4;
  rot << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
  CHECK(unit_eigenvalue_multiplicity(m, m.element_from_matrix(hyp)) == 1);
  CHECK(is_regular(m, m.element_from_matrix(hyp)));
  CHECK(unit_eigenvalue_multiplicity(m, m.element_from_matrix(rot)) == 1);
  // unipotent adjoint: all three eigenvalues collapse to 1
  CHECK(unit_eigenvalue_multiplicity(m, m.element_from_matrix(par)) == 3);
  CHECK_FALSE(is_regular(m, m.element_from_matrix(par)));
  CHECK(unit_eigenvalue_multiplicity(m, m.identity()) == 3);
  CHECK_THROWS_AS((void)cartan_of_regular_float(m, m.element_from_matrix(par)), std::invalid_argument);
  CHECK_THROWS_AS((void)cartan_of_regular_float(m, m.identity()), std::invalid_argument);
}

TEST_CASE("so3: nontrivial rotations are regular, the identity is not") {
  GroupModel m = GroupModel::so3();
  Eigen::VectorXd v(3);
  v << 0, 0, 0.3;
  GroupElement g = m.exp_float(v);
  CHECK(unit_eigenvalue_multiplicity(m, g) == 1);
  CHECK(is_regular(m, g));
  CHECK(unit_eigenvalue_multiplicity(m, m.identity()) == 3);
  CHECK_FALSE(is_regular(m, m.identity()));
}

TEST_CASE("cartan of a regular hyperbolic element is the diagonal line with all three properties") {
  GroupModel m = GroupModel::sl2r();
  Eigen::MatrixXd hyp(2, 2);
  hyp << 2, 0, 0, 0.5;
  FloatSubspace h = cartan_of_regular_float(m, m.element_from_matrix(hyp));
  REQUIRE(h.dim() == 1);
  // the fixed line is the H direction (coordinates e, h, f)
  Eigen::Vector3d dir = h.basis.col(0);
  CHECK(std::abs(std::abs(dir(1)) - 1.0) < 1e-9);
  CHECK(std::abs(dir(0)) < 1e-9);
  CHECK(std::abs(dir(2)) < 1e-9);
  CartanCheck c = check_cartan_float(m, h);
  CHECK(c.bracket_closed);
  CHECK(c.nilpotent);
  CHECK(c.self_normalizing);
  CHECK(c.all());
}

TEST_CASE("cartan of a regular rotation is its axis line") {
  GroupModel m = GroupModel::so3();
  Rng rng(32);
  for (int t = 0; t < 10; ++t) {
    GroupElement g = m.sample(m.default_window(), rng);
    if (!is_regular(m, g)) continue;  // identity-adjacent draw, measure zero anyway
    FloatSubspace h = cartan_of_regular_float(m, g);
    REQUIRE(h.dim() == 1);
    Eigen::Vector3d axis = m.log_float(g).normalized();
    double overlap = std::abs(axis.dot(h.basis.col(0)));
    CHECK(overlap == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(check_cartan_float(m, h).all());
  }
}

TEST_CASE("cartan of the nilpotent models is the whole algebra") {
  Rng rng(33);
  for (const char* name : {"heisenberg", "filiform4"}) {
    GroupModel m = GroupModel::by_name(name);
    CAPTURE(name);
    GroupElement g = m.sample_exact(m.default_window(), rng);
    SubspaceK h = cartan_of_regular(m, g);
    CHECK(h.dim() == m.dim());
    CartanCheck c = check_cartan(m, h);
    CHECK(c.bracket_closed);
    CHECK(c.nilpotent);
    CHECK(c.self_normalizing);
  }
}

TEST_CASE("multiplicity is a conjugation invariant") {
  Rng rng(34);
  GroupModel fil = GroupModel::filiform4();
  for (int t = 0; t < 10; ++t) {
    GroupElement g = fil.sample_exact(fil.default_window(), rng);
    GroupElement h = fil.sample_exact(fil.default_window(), rng);
    GroupElement conj = fil.multiply(fil.multiply(h, g), fil.inverse(h));
    CHECK(unit_eigenvalue_multiplicity(fil, conj) == unit_eigenvalue_multiplicity(fil, g));
  }
  GroupModel sl = GroupModel::sl2r();
  for (int t = 0; t < 10; ++t) {
    GroupElement g = sl.sample(sl.default_window(), rng);
    GroupElement h = sl.sample(sl.default_window(), rng);
    GroupElement conj = sl.multiply(sl.multiply(h, g), sl.inverse(h));
    CHECK(unit_eigenvalue_multiplicity(sl, conj) == unit_eigenvalue_multiplicity(sl, g));
  }
}

TEST_CASE("exact and float multiplicity agree on the exact models") {
  Rng rng(35);
  for (const char* name : {"heisenberg", "filiform4", "euclidean2"}) {
    GroupModel m = GroupModel::by_name(name);
    CAPTURE(name);
    GroupElement g = m.sample_exact(m.default_window(), rng);
    int exact_mult = unit_eigenvalue_multiplicity(m, g);
    Eigen::EigenSolver<Eigen::MatrixXd> es(m.adjoint_float(g), false);
    int float_mult = 0;
    for (int i = 0; i < m.dim(); ++i)
      if (std::abs(es.eigenvalues()(i) - std::complex<double>(1, 0)) < 1e-6) ++float_mult;
    CHECK(exact_mult == float_mult);
  }
}
