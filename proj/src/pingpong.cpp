#include "denselab/pingpong.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace denselab {
namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kPi = 3.1415926535897932384626433832795;

double wrap_two_pi(double phi) {
  double r = std::fmod(phi, kTwoPi);
  if (r < 0) r += kTwoPi;
  return r;
}

// shortest angular distance on R/2piZ
double circle_dist(double a, double b) {
  double d = std::fabs(wrap_two_pi(a) - wrap_two_pi(b));
  return std::min(d, kTwoPi - d);
}

Eigen::Matrix2d piece_matrix(double alpha_plus, double alpha_minus, double lambda) {
  // columns span the attracting and repelling lines; conjugating the diagonal
  // flow by this basis puts the fixed points where the arcs are
  Eigen::Matrix2d s;
  s << std::cos(alpha_plus), std::cos(alpha_minus), std::sin(alpha_plus), std::sin(alpha_minus);
  const double det = s.determinant();  // sin(alpha_minus - alpha_plus) != 0
  s /= std::sqrt(std::fabs(det));
  if (det < 0) s.col(1) = -s.col(1);
  Eigen::Matrix2d d = Eigen::Matrix2d::Zero();
  d(0, 0) = std::sqrt(lambda);
  d(1, 1) = 1.0 / std::sqrt(lambda);
  return s * d * s.inverse();
}

void validate_slots(int n, const std::vector<int>& attract_slot) {
  if (static_cast<int>(attract_slot.size()) != n)
    throw std::invalid_argument("build_schottky_family: slot list must have one entry per piece");
  std::vector<bool> seen(static_cast<size_t>(n), false);
  for (int s : attract_slot) {
    if (s < 0 || s >= n || seen[static_cast<size_t>(s)])
      throw std::invalid_argument("build_schottky_family: slots must form a permutation");
    seen[static_cast<size_t>(s)] = true;
  }
}

PieceFamily family_at_lambda(int n, double delta, const std::vector<int>& attract_slot,
                             double lambda) {
  const double spacing = kPi / n;            // 2n positions around the circle
  const double half_width = (spacing - delta) / 2.0;
  PieceFamily fam;
  fam.n = n;
  fam.delta = delta;
  fam.lambda = lambda;
  for (int i = 0; i < n; ++i) {
    const double attract_center = 2.0 * attract_slot[static_cast<size_t>(i)] * spacing;
    const double repel_center = attract_center + spacing;
    PingPongPiece piece;
    piece.attracting = {attract_center, half_width};
    piece.repelling = {wrap_two_pi(repel_center), half_width};
    piece.g = piece_matrix(attract_center / 2.0, repel_center / 2.0, lambda);
    fam.pieces.push_back(piece);
  }
  return fam;
}

}  // namespace

double projective_action(const Eigen::Matrix2d& g, double phi) {
  const double alpha = 0.5 * phi;
  Eigen::Vector2d v(std::cos(alpha), std::sin(alpha));
  Eigen::Vector2d w = g * v;
  return wrap_two_pi(2.0 * std::atan2(w.y(), w.x()));
}

bool Arc::contains(double phi) const { return margin(phi) >= 0.0; }

double Arc::margin(double phi) const { return half_width - circle_dist(phi, center); }

PieceFamily build_schottky_family(int n, double delta) {
  std::vector<int> identity(static_cast<size_t>(n > 0 ? n : 0));
  for (int i = 0; i < n; ++i) identity[static_cast<size_t>(i)] = i;
  return build_schottky_family(n, delta, identity);
}

PieceFamily build_schottky_family(int n, double delta, const std::vector<int>& attract_slot) {
  if (n <= 0) throw std::invalid_argument("build_schottky_family: need at least one piece");
  if (!(delta > 0.0) || !(delta < kPi / n))
    throw std::invalid_argument("build_schottky_family: gap must lie in (0, pi/n)");
  validate_slots(n, attract_slot);
  double lambda = 4.0;
  for (int attempt = 0; attempt < 40; ++attempt) {
    PieceFamily fam = family_at_lambda(n, delta, attract_slot, lambda);
    if (check_ping_pong(fam).valid) return fam;
    lambda *= 2.0;
  }
  throw std::runtime_error("build_schottky_family: no eigenvalue ratio certified the family");
}

PingPongCertificate check_ping_pong(const PieceFamily& family, int samples_per_piece) {
  PingPongCertificate cert;
  cert.n = family.n;
  cert.delta = family.delta;
  cert.lambda = family.lambda;
  cert.checks_per_piece = samples_per_piece;
  if (family.pieces.empty() || samples_per_piece < 2) return cert;

  std::vector<Arc> arcs;
  for (const PingPongPiece& p : family.pieces) {
    arcs.push_back(p.attracting);
    arcs.push_back(p.repelling);
  }
  double min_gap = kTwoPi;
  for (size_t i = 0; i < arcs.size(); ++i)
    for (size_t j = i + 1; j < arcs.size(); ++j) {
      const double gap =
          circle_dist(arcs[i].center, arcs[j].center) - arcs[i].half_width - arcs[j].half_width;
      min_gap = std::min(min_gap, gap);
    }
  cert.min_arc_gap = min_gap;

  // each piece must push the complement of its repelling arc strictly inside
  // its attracting arc; the action is monotone on the circle, so the endpoint
  // images bound the image arc and the grid just corroborates
  double worst = kTwoPi;
  for (const PingPongPiece& p : family.pieces) {
    const double lo = p.repelling.center + p.repelling.half_width;
    const double len = kTwoPi - 2.0 * p.repelling.half_width;
    for (int s = 0; s < samples_per_piece; ++s) {
      const double phi = lo + len * s / (samples_per_piece - 1);
      worst = std::min(worst, p.attracting.margin(projective_action(p.g, phi)));
    }
  }
  cert.worst_margin = worst;
  cert.valid = min_gap > 0.0 && worst > 0.0;
  return cert;
}

std::string PingPongCertificate::str() const {
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "valid=%d n=%d delta=%.17g lambda=%.17g checks=%d gap=%.17g margin=%.17g",
                valid ? 1 : 0, n, delta, lambda, checks_per_piece, min_arc_gap, worst_margin);
  return buf;
}

OptimalityTrial optimality_trial(int n, double delta, Rng& rng) {
  if (n <= 0) throw std::invalid_argument("optimality_trial: need at least one piece");
  OptimalityTrial trial;
  std::vector<bool> seen(static_cast<size_t>(n), false);
  bool distinct = true;
  for (int i = 0; i < n; ++i) {
    const double phi = rng.uniform(0.0, kTwoPi);
    int slot = std::min(n - 1, static_cast<int>(phi / (kTwoPi / n)));
    trial.slots.push_back(slot);
    if (seen[static_cast<size_t>(slot)]) distinct = false;
    seen[static_cast<size_t>(slot)] = true;
  }
  trial.permutation_event = distinct;
  if (distinct) trial.certificate = check_ping_pong(build_schottky_family(n, delta, trial.slots));
  return trial;
}

}  // namespace denselab
