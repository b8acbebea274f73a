#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "denselab/density.hpp"

using namespace denselab;

namespace {

VecK kvec2(const char* a, const char* b) {
  VecK v(2);
  v(0) = FieldElement::parse(a);
  v(1) = FieldElement::parse(b);
  return v;
}

VecK kvec1(const char* a) {
  VecK v(1);
  v(0) = FieldElement::parse(a);
  return v;
}

const char* kSqrt2 = "0,1,0,0,0,0,0,0";
const char* kSqrt3 = "0,0,1,0,0,0,0,0";

// brute-force word orbit in R^1: all integer combinations with small
// coefficients; reports the largest gap around the target interval
double orbit_max_gap_1d(const std::vector<double>& gens, int coeff_bound, double window) {
  std::vector<double> pts;
  std::vector<double> acc{0.0};
  for (double g : gens) {
    std::vector<double> next;
    for (double base : acc)
      for (int c = -coeff_bound; c <= coeff_bound; ++c) next.push_back(base + c * g);
    acc = std::move(next);
  }
  for (double v : acc)
    if (std::abs(v) <= window * 1.5) pts.push_back(v);
  if (pts.empty()) return 2 * window;
  std::sort(pts.begin(), pts.end());
  double gap = 0, prev = -window;
  for (double v : pts) {
    if (v < -window) { prev = v; continue; }
    if (v > window) { v = window; }
    gap = std::max(gap, v - prev);
    prev = v;
    if (prev >= window) break;
  }
  gap = std::max(gap, window - prev);
  return gap;
}

}  // namespace

TEST_CASE("three generators with free surd coefficients are dense in the plane") {
  std::vector<VecK> gens{kvec2("1", "0"), kvec2("0", "1"), kvec2(kSqrt2, kSqrt3)};
  DensityResult r = decide_density(gens, 2);
  CHECK(r.verdict == Verdict::Dense);
  CHECK_FALSE(r.witness.has_value());
}

TEST_CASE("rational third generator stays in a closed integral level set") {
  std::vector<VecK> gens{kvec2("1", "0"), kvec2("0", "1"), kvec2("1/2", "1/3")};
  DensityResult r = decide_density(gens, 2);
  REQUIRE(r.verdict == Verdict::NotDense);
  REQUIRE(r.witness.has_value());
  CHECK(witness_check(gens, r.witness->functional));
  for (const FieldElement& v : r.witness->values) CHECK(v.is_integer());
}

TEST_CASE("n generators of full rank form a lattice, never dense") {
  std::vector<VecK> gens{kvec2("1", "0"), kvec2(kSqrt2, "1")};
  DensityResult r = decide_density(gens, 2);
  REQUIRE(r.verdict == Verdict::NotDense);
  CHECK(r.witness.has_value());
  CHECK(witness_check(gens, r.witness->functional));
}

TEST_CASE("rank-deficient generators are annihilated by a kernel functional") {
  // the second coordinate never moves: both generators sit on a line
  std::vector<VecK> gens{kvec2("1", "0"), kvec2(kSqrt2, "0")};
  DensityResult r = decide_density(gens, 2);
  REQUIRE(r.verdict == Verdict::NotDense);
  REQUIRE(r.witness.has_value());
  // the witness annihilates every generator outright
  for (const FieldElement& v : r.witness->values) CHECK(v.is_zero());
}

TEST_CASE("equal surd coordinates collapse onto an integral diagonal stripe") {
  std::vector<VecK> gens{kvec2("1", "0"), kvec2("0", "1"), kvec2(kSqrt2, kSqrt2)};
  DensityResult r = decide_density(gens, 2);
  REQUIRE(r.verdict == Verdict::NotDense);
  CHECK(witness_check(gens, r.witness->functional));
}

TEST_CASE("a certifying subset settles larger generator collections") {
  std::vector<VecK> gens{kvec2("1", "0"), kvec2("0", "1"), kvec2(kSqrt2, kSqrt3),
                         kvec2("1/2", "1/2")};
  DensityResult r = decide_density(gens, 2);
  CHECK(r.verdict == Verdict::Dense);
}

TEST_CASE("purely rational oversupply is inconclusive, never a false verdict") {
  std::vector<VecK> gens{kvec2("1", "0"), kvec2("0", "1"), kvec2("1/2", "0"), kvec2("0", "1/2")};
  DensityResult r = decide_density(gens, 2);
  CHECK(r.verdict == Verdict::Inconclusive);
  CHECK_FALSE(r.witness.has_value());
}

TEST_CASE("empty and undersized generating sets are never dense") {
  DensityResult r0 = decide_density({}, 2);
  CHECK(r0.verdict == Verdict::NotDense);
  DensityResult r1 = decide_density({kvec2(kSqrt2, kSqrt3)}, 2);
  CHECK(r1.verdict == Verdict::NotDense);
}

TEST_CASE("witness check rejects zero and non-integral functionals") {
  std::vector<VecK> gens{kvec2("1", "0")};
  VecK zero(2);
  zero(0) = zero(1) = FieldElement(0);
  CHECK_FALSE(witness_check(gens, zero));
  VecK half(2);
  half(0) = FieldElement(Rational(1, 2));
  half(1) = FieldElement(0);
  CHECK_FALSE(witness_check(gens, half));  // value 1/2 is not an integer
  VecK good(2);
  good(0) = FieldElement(3);
  good(1) = FieldElement::sqrt2();  // irrational entry is fine: value 3 is integral
  CHECK(witness_check(gens, good));
}

TEST_CASE("verdicts are invariant under generator moves preserving the subgroup") {
  std::vector<VecK> dense_gens{kvec2("1", "0"), kvec2("0", "1"), kvec2(kSqrt2, kSqrt3)};
  REQUIRE(decide_density(dense_gens, 2).verdict == Verdict::Dense);
  // swap
  std::vector<VecK> swapped{dense_gens[2], dense_gens[0], dense_gens[1]};
  CHECK(decide_density(swapped, 2).verdict == Verdict::Dense);
  // inversion of one generator
  std::vector<VecK> inverted = dense_gens;
  inverted[1] = VecK(-inverted[1]);
  CHECK(decide_density(inverted, 2).verdict == Verdict::Dense);
  // elementary move g_i <- g_i + g_j
  std::vector<VecK> sheared = dense_gens;
  sheared[2] = VecK(sheared[2] + sheared[0]);
  CHECK(decide_density(sheared, 2).verdict == Verdict::Dense);
  // the same moves keep a lattice a lattice
  std::vector<VecK> lat{kvec2("1", "0"), kvec2("0", "1")};
  std::vector<VecK> lat2{VecK(lat[0] + lat[1]), lat[1]};
  CHECK(decide_density(lat, 2).verdict == Verdict::NotDense);
  CHECK(decide_density(lat2, 2).verdict == Verdict::NotDense);
}

TEST_CASE("verdicts are invariant under unimodular coordinate changes") {
  std::vector<VecK> gens{kvec2("1", "0"), kvec2("0", "1"), kvec2(kSqrt2, kSqrt3)};
  // U = [[2, 1], [1, 1]] in GL_2(Z)
  auto apply = [](const VecK& v) {
    VecK w(2);
    w(0) = FieldElement(2) * v(0) + v(1);
    w(1) = v(0) + v(1);
    return w;
  };
  std::vector<VecK> moved;
  for (const VecK& g : gens) moved.push_back(apply(g));
  CHECK(decide_density(moved, 2).verdict == Verdict::Dense);
  std::vector<VecK> lat{kvec2("1", "0"), kvec2(kSqrt2, "1")};
  std::vector<VecK> lat_moved;
  for (const VecK& g : lat) lat_moved.push_back(apply(g));
  DensityResult r = decide_density(lat_moved, 2);
  REQUIRE(r.verdict == Verdict::NotDense);
  CHECK(witness_check(lat_moved, r.witness->functional));
}

TEST_CASE("torus: one generator with independent surds fills the two-torus") {
  std::vector<VecK> gens{kvec2(kSqrt2, kSqrt3)};  // mod 1 implicitly
  DensityResult r = decide_density_torus(gens, 2);
  CHECK(r.verdict == Verdict::Dense);
}

TEST_CASE("torus: rational generators are killed by an explicit character") {
  std::vector<VecK> gens{kvec2("1/3", "1/7")};
  DensityResult r = decide_density_torus(gens, 2);
  REQUIRE(r.verdict == Verdict::NotDense);
  REQUIRE(r.witness.has_value());
  CHECK(witness_check_torus(gens, r.witness->functional));
  // the character is a nonzero integer vector
  bool nonzero = false;
  for (int j = 0; j < 2; ++j) {
    CHECK(r.witness->functional(j).is_integer());
    nonzero |= !r.witness->functional(j).is_zero();
  }
  CHECK(nonzero);
}

TEST_CASE("torus: equal surd coordinates are caught by the difference character") {
  std::vector<VecK> gens{kvec2(kSqrt2, kSqrt2)};
  DensityResult r = decide_density_torus(gens, 2);
  REQUIRE(r.verdict == Verdict::NotDense);
  CHECK(witness_check_torus(gens, r.witness->functional));
  // m = +-(1, -1) annihilates the diagonal
  FieldElement sum = r.witness->functional(0) + r.witness->functional(1);
  CHECK(sum.is_zero());
}

TEST_CASE("torus: two generators covering both surd directions are dense") {
  std::vector<VecK> gens{kvec2(kSqrt2, "0"), kvec2("0", kSqrt3)};
  CHECK(decide_density_torus(gens, 2).verdict == Verdict::Dense);
}

TEST_CASE("torus: mixed rational and surd directions") {
  // second coordinate only moves rationally: a character survives
  std::vector<VecK> gens{kvec2(kSqrt2, "0"), kvec2("0", "1/5")};
  DensityResult r = decide_density_torus(gens, 2);
  REQUIRE(r.verdict == Verdict::NotDense);
  CHECK(witness_check_torus(gens, r.witness->functional));
}

TEST_CASE("decision agrees with a brute-force orbit in one dimension") {
  // dense pair: 1 and sqrt2; the orbit has no gap of 0.01 in [-1, 1]
  DensityResult dense = decide_density({kvec1("1"), kvec1(kSqrt2)}, 1);
  CHECK(dense.verdict == Verdict::Dense);
  double gap = orbit_max_gap_1d({1.0, std::sqrt(2.0)}, 200, 1.0);
  CHECK(gap < 0.01);
  // non-dense pair: 1 and 1/2; the orbit keeps gaps of exactly 1/2
  DensityResult sparse = decide_density({kvec1("1"), kvec1("1/2")}, 1);
  CHECK(sparse.verdict == Verdict::NotDense);
  double sparse_gap = orbit_max_gap_1d({1.0, 0.5}, 200, 1.0);
  CHECK(sparse_gap == doctest::Approx(0.5));
}

TEST_CASE("model reduction: filiform density is decided on the abelianization") {
  GroupModel fil = GroupModel::filiform4();
  auto mk = [&](const char* a, const char* b) {
    VecK v(4);
    v(0) = FieldElement::parse(a);
    v(1) = FieldElement::parse(b);
    v(2) = FieldElement(0);
    v(3) = FieldElement(0);
    return fil.element_from_coords(v);
  };
  std::vector<GroupElement> gens{mk("1", "0"), mk("0", "1"), mk(kSqrt2, kSqrt3)};
  ModelDensityReport rep = model_density_check(fil, gens);
  CHECK(rep.reduced_dim == 2);
  CHECK(rep.result.verdict == Verdict::Dense);
  std::vector<GroupElement> lat{mk("1", "0"), mk("0", "1")};
  ModelDensityReport rep2 = model_density_check(fil, lat);
  CHECK(rep2.result.verdict == Verdict::NotDense);
  CHECK(witness_check(rep2.reduced_gens, rep2.result.witness->functional));
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS((void)decide_density({kvec2("1", "0"), kvec1("1")}, 2), std::invalid_argument);
  CHECK_THROWS_AS((void)decide_density({}, 0), std::invalid_argument);
  GroupModel sl = GroupModel::sl2r();
  CHECK_THROWS_AS((void)model_density_check(sl, {}), std::invalid_argument);
}
