#pragma once

#include <vector>

#include "denselab/density.hpp"
#include "denselab/models.hpp"

namespace denselab {

// Iterated commutator h <- g h g^-1 h^-1.  On the exact nilpotent models the
// orbit reaches the identity exactly, in at most the nilpotency class many
// steps; on the matrix models it contracts geometrically near a regular g.
struct ConvergenceReport {
  bool converged = false;
  int iterations = 0;              // steps consumed when converged
  std::vector<double> distances;   // distance to identity after each step
};

ConvergenceReport commutator_orbit(const GroupModel& m, const GroupElement& g,
                                   const GroupElement& h, int max_iter = 200,
                                   double eps_id = 1e-9);

// Bisected estimate of the contraction radius of zeta_g: the largest ball
// radius (on a fixed bisection grid) from which every probe orbit converges.
struct ZRadiusOptions {
  double r_max = 2.0;
  int bisect_steps = 12;
  int probes = 24;
  // generous budget: near the basin boundary orbits contract slowly, and an
  // undersized budget would report the budget rather than the dynamics
  int max_iter = 400;
  double eps_id = 1e-9;
  uint64_t seed = 7;
};

struct ZRadiusReport {
  double radius = 0.0;          // largest certified-passing radius on the grid
  double failing_radius = 0.0;  // smallest observed failing radius (0: none)
  double grid_step = 0.0;       // final bisection resolution
  int probes_run = 0;
};

ZRadiusReport estimate_z_radius(const GroupModel& m, const GroupElement& g,
                                const ZRadiusOptions& opts = {});

// Dimension estimator for the closure of the generated subgroup: breadth-first
// search over reduced words, logs of the elements landing in the rho-ball
// around the identity, then span saturation under brackets and Ad(g_i).
struct ClosureOptions {
  int word_length = 12;
  double rho = 0.2;
  double eps_span = 1e-8;  // singular-value cutoff on the float path
  int beam_cap = 4096;     // per-depth frontier cap, float backends only
};

struct ClosureReport {
  int dimension = 0;
  int ball_points = 0;     // distinct non-identity elements within rho
  long nodes = 0;          // distinct group elements visited
  bool exact = false;      // exact span arithmetic was used
  SubspaceK span_exact;    // estimated subalgebra (exact backends)
  Eigen::MatrixXd span;    // orthonormal columns (float view, all backends)
};

ClosureReport closure_dimension(const GroupModel& m, const std::vector<GroupElement>& gens,
                                const ClosureOptions& opts = {});

// Frozen one-parameter family of two-generator instances in the 4-dimensional
// filiform model whose closure is the central line: the first coordinates get
// independent surds, the abelianization is a rank-2 lattice, and two short
// central words have sizes with irrational ratio.
struct LineInstance {
  GroupElement g1, g2;
  Rational u1, u2;  // grid parameters in [9/10, 11/10]
};

LineInstance make_line_instance(Rng& rng);

struct LineDensityReport {
  DensityResult abelian;     // NotDense: lattice witness on the abelianization
  DensityResult central;     // Dense: the central sizes generate a dense line
  GroupElement w1, w2;       // central words zeta_{g1}(z), zeta_{g2}(z)
  ClosureReport closure;     // estimated dimension 1, spanning the center
  bool z_outside_ball = false;
  bool words_inside_ball = false;
  bool neither_dense_nor_discrete = false;
};

LineDensityReport analyze_line_instance(const LineInstance& inst,
                                        const ClosureOptions& opts);

}  // namespace denselab
