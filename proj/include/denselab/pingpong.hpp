#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "denselab/rng.hpp"

namespace denselab {

// Projective line coordinates: a line through the origin at angle a in [0, pi)
// is the point phi = 2a of the circle R/2piZ. Hyperbolic matrices act on it by
// north-south dynamics, which is what the ping-pong argument feeds on.

// image of the projective point phi under g, in [0, 2pi)
double projective_action(const Eigen::Matrix2d& g, double phi);

// closed arc centered at `center` with the given half width, on R/2piZ
struct Arc {
  double center = 0.0;
  double half_width = 0.0;

  bool contains(double phi) const;
  // signed room left after placing phi: >= 0 inside, < 0 outside
  double margin(double phi) const;
};

struct PingPongPiece {
  Eigen::Matrix2d g;       // hyperbolic element owning the two arcs
  Arc attracting;          // neighbourhood of its attracting fixed line
  Arc repelling;           // neighbourhood of its repelling fixed line
};

// n hyperbolic elements with 2n pairwise disjoint arcs on the projective line
struct PieceFamily {
  int n = 0;
  double delta = 0.0;   // guaranteed gap between adjacent arcs
  double lambda = 0.0;  // common eigenvalue ratio of the pieces
  std::vector<PingPongPiece> pieces;
};

struct PingPongCertificate {
  bool valid = false;
  int n = 0;
  double delta = 0.0;
  double lambda = 0.0;
  int checks_per_piece = 0;
  double min_arc_gap = 0.0;   // smallest gap between distinct arcs
  double worst_margin = 0.0;  // smallest image margin over all checks
  std::string str() const;    // round-trippable %.17g serialization
};

// canonical family: 2n equally spaced arcs of half width (pi/n - delta)/2,
// attracting arcs at even positions, repelling at odd; piece i's attracting
// arc sits at slot attract_slot[i] (a permutation of 0..n-1). The eigenvalue
// ratio lambda doubles from 4 until the mapping test passes.
// Throws std::invalid_argument unless 0 < delta < pi/n.
PieceFamily build_schottky_family(int n, double delta);
PieceFamily build_schottky_family(int n, double delta, const std::vector<int>& attract_slot);

// verifies the ping-pong hypotheses: all 2n arcs pairwise disjoint, and each
// piece maps the complement of its repelling arc strictly inside its
// attracting arc (checked on the complement's endpoints plus a uniform grid).
// A valid certificate proves the pieces generate a free, discrete subgroup.
PingPongCertificate check_ping_pong(const PieceFamily& family, int samples_per_piece = 256);

// one optimality trial: n attracting directions drawn uniformly on the
// projective line, binned into n equal slots. When the slots form a
// permutation, the canonical family over that permutation is built and
// certified. The permutation event has probability exactly n!/n^n.
struct OptimalityTrial {
  bool permutation_event = false;
  std::vector<int> slots;
  PingPongCertificate certificate;  // valid only on the permutation event
};

OptimalityTrial optimality_trial(int n, double delta, Rng& rng);

}  // namespace denselab
