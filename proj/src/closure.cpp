#include "denselab/closure.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

#include "denselab/qlinalg.hpp"

namespace denselab {
namespace {

constexpr long kNodeBudget = 2'000'000;

Neighbourhood probe_ball(const GroupModel& m, double r) {
  if (m.exact_backend()) return Neighbourhood::box(std::vector<double>(m.dim(), r));
  return Neighbourhood::exp_ball(r);
}

VecK row_of(const MatK& rows, int i) {
  VecK v(rows.cols());
  for (int j = 0; j < rows.cols(); ++j) v(j) = rows(i, j);
  return v;
}

// close a subspace under brackets and the adjoints of the generators (and
// their inverses): the Lie algebra of the closure is invariant under both
SubspaceK saturate_exact(const GroupModel& m, const std::vector<GroupElement>& gens,
                         SubspaceK h) {
  const LieAlgebraSpec& alg = m.algebra();
  std::vector<MatK> ads;
  for (const GroupElement& g : gens) {
    ads.push_back(m.adjoint_exact(g));
    ads.push_back(m.adjoint_exact(m.inverse(g)));
  }
  while (h.dim() < alg.dim) {
    const int d = h.dim();
    if (d == 0) return h;
    std::vector<VecK> extra;
    for (int i = 0; i < d; ++i) {
      VecK vi = row_of(h.rows, i);
      for (int j = i + 1; j < d; ++j)
        extra.push_back(alg.bracket<FieldElement>(vi, row_of(h.rows, j)));
      for (const MatK& ad : ads) extra.push_back(VecK(ad * vi));
    }
    MatK stacked(d + static_cast<int>(extra.size()), alg.dim);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < alg.dim; ++j) stacked(i, j) = h.rows(i, j);
    for (size_t r = 0; r < extra.size(); ++r)
      for (int j = 0; j < alg.dim; ++j) stacked(d + static_cast<int>(r), j) = extra[r](j);
    SubspaceK grown = span_rows<FieldElement>(stacked, alg.dim);
    if (grown.dim() == h.dim()) return grown;
    h = grown;
  }
  return h;
}

Eigen::MatrixXd saturate_float(const GroupModel& m, const std::vector<GroupElement>& gens,
                               Eigen::MatrixXd basis, double eps) {
  const LieAlgebraSpec& alg = m.algebra();
  std::vector<Eigen::MatrixXd> ads;
  for (const GroupElement& g : gens) {
    ads.push_back(m.adjoint_float(g));
    ads.push_back(m.adjoint_float(m.inverse(g)));
  }
  while (basis.cols() < alg.dim) {
    const int d = static_cast<int>(basis.cols());
    if (d == 0) return basis;
    std::vector<Eigen::VectorXd> extra;
    for (int i = 0; i < d; ++i) {
      for (int j = i + 1; j < d; ++j)
        extra.push_back(alg.bracket_float(basis.col(i), basis.col(j)));
      for (const Eigen::MatrixXd& ad : ads) extra.push_back(ad * basis.col(i));
    }
    Eigen::MatrixXd stacked(alg.dim, d + static_cast<int>(extra.size()));
    stacked.leftCols(d) = basis;
    for (size_t c = 0; c < extra.size(); ++c) stacked.col(d + static_cast<int>(c)) = extra[c];
    Eigen::MatrixXd grown = float_column_space(stacked, eps);
    if (grown.cols() == basis.cols()) return grown;
    basis = grown;
  }
  return basis;
}

std::string bfs_key(const GroupModel& m, const GroupElement& g) { return m.element_key(g); }

}  // namespace

ConvergenceReport commutator_orbit(const GroupModel& m, const GroupElement& g,
                                   const GroupElement& h, int max_iter, double eps_id) {
  ConvergenceReport rep;
  GroupElement cur = h;
  auto at_identity = [&](const GroupElement& x) {
    return m.exact_backend() ? m.is_identity_exact(x) : m.distance_to_identity(x) <= eps_id;
  };
  for (int k = 0; k <= max_iter; ++k) {
    if (at_identity(cur)) {
      rep.converged = true;
      rep.iterations = k;
      return rep;
    }
    if (k == max_iter) break;
    cur = m.commutator(g, cur);
    rep.distances.push_back(m.distance_to_identity(cur));
  }
  rep.converged = false;
  rep.iterations = max_iter;
  return rep;
}

ZRadiusReport estimate_z_radius(const GroupModel& m, const GroupElement& g,
                                const ZRadiusOptions& opts) {
  ZRadiusReport rep;
  int stage = 0;
  auto all_probes_converge = [&](double r) {
    ++stage;
    for (int i = 0; i < opts.probes; ++i) {
      Rng prng(Rng::derive(opts.seed, static_cast<uint64_t>(stage) * 1009 + i));
      GroupElement h = m.exact_backend() ? m.sample_exact(probe_ball(m, r), prng)
                                         : m.sample(probe_ball(m, r), prng);
      ++rep.probes_run;
      if (!commutator_orbit(m, g, h, opts.max_iter, opts.eps_id).converged) return false;
    }
    return true;
  };
  double lo = 0.0, hi = opts.r_max;
  if (all_probes_converge(hi)) {
    rep.radius = hi;
    rep.failing_radius = 0.0;
    rep.grid_step = 0.0;
    return rep;
  }
  for (int s = 0; s < opts.bisect_steps; ++s) {
    double mid = 0.5 * (lo + hi);
    if (all_probes_converge(mid))
      lo = mid;
    else
      hi = mid;
  }
  rep.radius = lo;
  rep.failing_radius = hi;
  rep.grid_step = hi - lo;
  return rep;
}

ClosureReport closure_dimension(const GroupModel& m, const std::vector<GroupElement>& gens,
                                const ClosureOptions& opts) {
  if (gens.empty()) throw std::invalid_argument("closure_dimension: no generators");
  const int n = m.dim();
  ClosureReport rep;
  rep.exact = m.exact_backend();

  std::vector<GroupElement> letters;
  for (const GroupElement& g : gens) {
    letters.push_back(g);
    letters.push_back(m.inverse(g));  // letter l's inverse is letter l^1
  }
  const int nl = static_cast<int>(letters.size());

  std::unordered_set<std::string> visited;
  visited.insert(bfs_key(m, m.identity()));

  // exact path stores reconstructible coordinate keys; float path keeps elements
  struct ENode {
    std::string coords;
    int last;
  };
  struct FNode {
    GroupElement g;
    int last;
    double dist;
  };
  std::vector<ENode> efrontier;
  std::vector<FNode> ffrontier;
  if (rep.exact)
    efrontier.push_back({field_vector_str(m.identity().x), -1});
  else
    ffrontier.push_back({m.identity(), -1, 0.0});

  std::vector<VecK> ball_logs_exact;
  std::vector<Eigen::VectorXd> ball_logs_float;
  SubspaceK raw_exact;
  raw_exact.ambient = n;
  raw_exact.rows = MatK(0, n);
  Eigen::MatrixXd raw_float(n, 0);
  bool full = false;

  auto absorb = [&](const GroupElement& child) {
    double dist = m.distance_to_identity(child);
    if (dist > opts.rho) return;
    if (m.exact_backend() ? m.is_identity_exact(child) : dist == 0.0) return;
    ++rep.ball_points;
    if (full) return;
    if (rep.exact) {
      VecK lg = m.log_exact(child);
      if (in_span<FieldElement>(raw_exact, lg)) return;
      ball_logs_exact.push_back(lg);
      MatK stacked(raw_exact.rows.rows() + 1, n);
      for (int i = 0; i < raw_exact.rows.rows(); ++i)
        for (int j = 0; j < n; ++j) stacked(i, j) = raw_exact.rows(i, j);
      for (int j = 0; j < n; ++j) stacked(raw_exact.rows.rows(), j) = lg(j);
      raw_exact = span_rows<FieldElement>(stacked, n);
      SubspaceK sat = saturate_exact(m, gens, raw_exact);
      if (sat.dim() == n) full = true;
    } else {
      Eigen::VectorXd lg = m.log_float(child);
      Eigen::MatrixXd stacked(n, raw_float.cols() + 1);
      if (raw_float.cols() > 0) stacked.leftCols(raw_float.cols()) = raw_float;
      stacked.col(raw_float.cols()) = lg;
      if (float_rank(stacked, opts.eps_span) > raw_float.cols()) {
        ball_logs_float.push_back(lg);
        raw_float = stacked;
        if (saturate_float(m, gens, float_column_space(raw_float, opts.eps_span), opts.eps_span)
                .cols() == n)
          full = true;
      }
    }
  };

  for (int depth = 1; depth <= opts.word_length && !full; ++depth) {
    if (rep.exact) {
      std::vector<ENode> next;
      for (const ENode& node : efrontier) {
        GroupElement cur = m.element_from_coords(parse_field_vector(node.coords));
        for (int l = 0; l < nl; ++l) {
          if (node.last >= 0 && l == (node.last ^ 1)) continue;  // child is the parent
          GroupElement child = m.multiply(cur, letters[l]);
          if (!visited.insert(bfs_key(m, child)).second) continue;
          if (static_cast<long>(visited.size()) > kNodeBudget)
            throw std::runtime_error("closure_dimension: node budget exceeded");
          absorb(child);
          if (full) break;
          next.push_back({field_vector_str(child.x), l});
        }
        if (full) break;
      }
      efrontier = std::move(next);
    } else {
      std::vector<FNode> next;
      for (const FNode& node : ffrontier) {
        for (int l = 0; l < nl; ++l) {
          if (node.last >= 0 && l == (node.last ^ 1)) continue;
          GroupElement child = m.multiply(node.g, letters[l]);
          if (!visited.insert(bfs_key(m, child)).second) continue;
          absorb(child);
          if (full) break;
          next.push_back({child, l, m.distance_to_identity(child)});
        }
        if (full) break;
      }
      if (static_cast<int>(next.size()) > opts.beam_cap) {
        // deterministic distance-ordered beam: nearby elements carry the
        // structure the estimator needs, faraway prefixes get dropped
        std::stable_sort(next.begin(), next.end(),
                         [](const FNode& a, const FNode& b) { return a.dist < b.dist; });
        next.resize(opts.beam_cap);
      }
      ffrontier = std::move(next);
    }
  }

  rep.nodes = static_cast<long>(visited.size()) - 1;
  if (rep.exact) {
    SubspaceK sat = full ? full_space<FieldElement>(n) : saturate_exact(m, gens, raw_exact);
    rep.span_exact = sat;
    rep.dimension = sat.dim();
    Eigen::MatrixXd cols(n, sat.dim());
    for (int i = 0; i < sat.dim(); ++i)
      for (int j = 0; j < n; ++j) cols(j, i) = sat.rows(i, j).to_float();
    rep.span = sat.dim() == 0 ? Eigen::MatrixXd(n, 0) : float_column_space(cols, opts.eps_span);
  } else {
    Eigen::MatrixXd basis = full ? Eigen::MatrixXd::Identity(n, n)
                                 : saturate_float(m, gens, float_column_space(raw_float, opts.eps_span),
                                                  opts.eps_span);
    rep.span = basis;
    rep.dimension = static_cast<int>(basis.cols());
  }
  return rep;
}

LineInstance make_line_instance(Rng& rng) {
  GroupModel fil = GroupModel::filiform4();
  auto draw_u = [&rng]() {
    long mnum = rng.uniform_int(0, 1L << 16);
    Rational u(Integer(mnum), Integer(1) << 16);
    u.canonicalize();
    u = Rational(9, 10) + u * Rational(1, 5);  // [9/10, 11/10] on the dyadic grid
    return u;
  };
  LineInstance inst;
  inst.u1 = draw_u();
  inst.u2 = draw_u();
  VecK v1(4), v2(4);
  for (int i = 0; i < 4; ++i) v1(i) = v2(i) = FieldElement(0);
  v1(0) = FieldElement::sqrt2() * FieldElement(inst.u1 * Rational(3, 10));
  v2(0) = FieldElement::sqrt3() * FieldElement(inst.u2 * Rational(3, 10));
  v2(1) = FieldElement(Rational(13, 20));
  inst.g1 = fil.element_from_coords(v1);
  inst.g2 = fil.element_from_coords(v2);
  return inst;
}

LineDensityReport analyze_line_instance(const LineInstance& inst, const ClosureOptions& opts) {
  GroupModel fil = GroupModel::filiform4();
  LineDensityReport rep;
  rep.abelian = model_density_check(fil, {inst.g1, inst.g2}).result;

  GroupElement z = fil.commutator(inst.g1, inst.g2);
  rep.w1 = fil.commutator(inst.g1, z);
  rep.w2 = fil.commutator(inst.g2, z);
  for (int i = 0; i < 3; ++i)
    if (!rep.w1.x(i).is_zero() || !rep.w2.x(i).is_zero())
      throw std::logic_error("line instance words failed to be central");
  if (rep.w1.x(3).is_zero() || rep.w2.x(3).is_zero())
    throw std::logic_error("line instance words are degenerate");

  rep.z_outside_ball = fil.distance_to_identity(z) > opts.rho;
  rep.words_inside_ball = fil.distance_to_identity(rep.w1) <= opts.rho &&
                          fil.distance_to_identity(rep.w2) <= opts.rho;

  VecK s1(1), s2(1);
  s1(0) = rep.w1.x(3);
  s2(0) = rep.w2.x(3);
  rep.central = decide_density({s1, s2}, 1);

  rep.closure = closure_dimension(fil, {inst.g1, inst.g2}, opts);
  rep.neither_dense_nor_discrete =
      rep.abelian.verdict == Verdict::NotDense && rep.central.verdict == Verdict::Dense;
  return rep;
}

}  // namespace denselab
