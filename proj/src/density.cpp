#include "denselab/density.hpp"

#include <stdexcept>

#include "denselab/qlinalg.hpp"

namespace denselab {
namespace {

MatK stack_rows(const std::vector<VecK>& gens, const std::vector<int>& idx, int n) {
  MatK a(static_cast<int>(idx.size()), n);
  for (size_t r = 0; r < idx.size(); ++r)
    for (int j = 0; j < n; ++j) a(static_cast<int>(r), j) = gens[idx[r]](j);
  return a;
}

void validate_gens(const std::vector<VecK>& gens, int n) {
  if (n < 1) throw std::invalid_argument("decide_density: ambient dimension must be positive");
  for (const VecK& g : gens)
    if (g.size() != n) throw std::invalid_argument("decide_density: generator arity mismatch");
}

DensityResult not_dense_with(const std::vector<VecK>& gens, VecK w, std::string detail) {
  IntegralityWitness cert;
  cert.functional = std::move(w);
  cert.values.reserve(gens.size());
  for (const VecK& g : gens) {
    FieldElement v;
    for (int j = 0; j < g.size(); ++j) v = v + cert.functional(j) * g(j);
    cert.values.push_back(v);
  }
  if (!witness_check(gens, cert.functional))
    throw std::logic_error("density certificate failed its self-check");
  DensityResult res;
  res.verdict = Verdict::NotDense;
  res.witness = std::move(cert);
  res.detail = std::move(detail);
  return res;
}

// greedy independent-row selection; returns indices or empty if rank < n
std::vector<int> spanning_subset(const std::vector<VecK>& gens, const std::vector<int>& pool, int n) {
  std::vector<int> chosen;
  for (int idx : pool) {
    std::vector<int> trial = chosen;
    trial.push_back(idx);
    if (exact_rank<FieldElement>(stack_rows(gens, trial, n)) == static_cast<int>(trial.size()))
      chosen = std::move(trial);
    if (static_cast<int>(chosen.size()) == n) return chosen;
  }
  return {};
}

// Decide the k = n+1 case restricted to `pool` (n+1 entries).  A Dense answer
// holds for any superset; a NotDense answer only speaks about the pool itself,
// so the witness is built just when the pool is the whole input.
DensityResult decide_simplex(const std::vector<VecK>& gens, const std::vector<int>& pool, int n,
                             bool build_witness) {
  std::vector<int> s = spanning_subset(gens, pool, n);
  DensityResult res;
  if (s.empty()) {
    res.verdict = Verdict::Inconclusive;
    res.detail = "subset spans a proper subspace";
    return res;
  }
  int residual = -1;
  for (int idx : pool) {
    bool in_s = false;
    for (int j : s) in_s |= (j == idx);
    if (!in_s) residual = idx;
  }
  MatK a_s = stack_rows(gens, s, n);
  // expand the residual generator over the spanning subset: g_d = sum a_j g_j
  DenseMat<FieldElement> rhs(n, 1);
  for (int j = 0; j < n; ++j) rhs(j, 0) = gens[residual](j);
  // coefficients solve A_S^T a = g_d
  auto coeffs = exact_solve<FieldElement>(MatK(a_s.transpose()), rhs);
  if (!coeffs) throw std::logic_error("full-rank expansion failed");
  std::vector<FieldElement> a(n);
  for (int j = 0; j < n; ++j) a[j] = (*coeffs)(j, 0);
  QIndependence indep = q_independent_with_one(a);
  if (indep.independent) {
    res.verdict = Verdict::Dense;
    res.detail = "residual coefficients are free over Q together with 1";
    return res;
  }
  if (!build_witness) {
    res.verdict = Verdict::NotDense;
    res.detail = "integer relation among residual coefficients (pool only)";
    return res;
  }
  // relation r_0 + sum_j r_j a_j = 0 turns into the dual functional with
  // F(g_{s_j}) = r_j and F(g_d) = -r_0
  DenseMat<FieldElement> c(n, 1);
  for (int j = 0; j < n; ++j) c(j, 0) = FieldElement(indep.relation[static_cast<size_t>(j) + 1]);
  auto w = exact_solve<FieldElement>(a_s, c);
  if (!w) throw std::logic_error("dual functional solve failed");
  VecK functional(n);
  for (int j = 0; j < n; ++j) functional(j) = (*w)(j, 0);
  return not_dense_with(gens, functional, "integer relation among residual coefficients");
}

}  // namespace

std::string verdict_str(Verdict v) {
  switch (v) {
    case Verdict::Dense:
      return "dense";
    case Verdict::NotDense:
      return "not-dense";
    default:
      return "inconclusive";
  }
}

DensityResult decide_density(const std::vector<VecK>& gens, int n) {
  validate_gens(gens, n);
  const int k = static_cast<int>(gens.size());
  std::vector<int> all(k);
  for (int i = 0; i < k; ++i) all[i] = i;
  const int rank = k == 0 ? 0 : exact_rank<FieldElement>(stack_rows(gens, all, n));
  if (rank < n) {
    // everything lies in a proper subspace: any kernel direction annihilates
    MatK a = k == 0 ? MatK(0, n) : stack_rows(gens, all, n);
    DenseMat<FieldElement> ker = exact_kernel<FieldElement>(a);
    VecK w(n);
    for (int j = 0; j < n; ++j) w(j) = ker(j, 0);
    return not_dense_with(gens, w, "generators span a proper subspace");
  }
  if (k == n) {
    // a full-rank system of exactly n generators is a lattice
    MatK a = stack_rows(gens, all, n);
    DenseMat<FieldElement> e1(n, 1);
    for (int j = 0; j < n; ++j) e1(j, 0) = FieldElement(j == 0 ? 1 : 0);
    auto w = exact_solve<FieldElement>(a, e1);
    if (!w) throw std::logic_error("lattice dual solve failed");
    VecK functional(n);
    for (int j = 0; j < n; ++j) functional(j) = (*w)(j, 0);
    return not_dense_with(gens, functional, "full-rank lattice of minimal generator count");
  }
  if (k == n + 1) return decide_simplex(gens, all, n, true);
  // more generators than n+1: a dense sub-collection settles it
  std::vector<int> subset(n + 1);
  std::vector<int> stack;
  long examined = 0;
  const long budget = 20000;
  // iterate over all (n+1)-subsets in lexicographic order
  std::vector<int> c(n + 1);
  for (int i = 0; i <= n; ++i) c[i] = i;
  while (true) {
    if (++examined > budget) {
      DensityResult res;
      res.verdict = Verdict::Inconclusive;
      res.detail = "subset budget exhausted";
      return res;
    }
    DensityResult sub = decide_simplex(gens, c, n, false);
    if (sub.verdict == Verdict::Dense) {
      sub.detail += " (certifying subset of " + std::to_string(k) + " generators)";
      return sub;
    }
    int i = n;
    while (i >= 0 && c[i] == k - (n + 1) + i) --i;
    if (i < 0) break;
    ++c[i];
    for (int j = i + 1; j <= n; ++j) c[j] = c[j - 1] + 1;
  }
  DensityResult res;
  res.verdict = Verdict::Inconclusive;
  res.detail = "no subset of n+1 generators certifies density";
  return res;
}

DensityResult decide_density_torus(const std::vector<VecK>& gens, int n) {
  validate_gens(gens, n);
  const int k = static_cast<int>(gens.size());
  // stack the surd components: a character m kills the orbit iff m is in the
  // rational kernel of this matrix and scales the rational parts into Z
  MatQ b(7 * std::max(k, 1), n);
  for (int r = 0; r < b.rows(); ++r)
    for (int j = 0; j < n; ++j) b(r, j) = Rational(0);
  for (int g = 0; g < k; ++g)
    for (int s = 1; s < FieldElement::kDim; ++s)
      for (int j = 0; j < n; ++j) b(7 * g + s - 1, j) = gens[g](j).coeff(s);
  if (k > 0 && exact_rank<Rational>(b) == n) {
    DensityResult res;
    res.verdict = Verdict::Dense;
    res.detail = "surd components have full column rank: no character survives";
    return res;
  }
  DenseMat<Rational> ker = exact_kernel<Rational>(b);
  std::vector<Rational> mhat(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) mhat[static_cast<size_t>(j)] = ker(j, 0);
  normalize_relation(&mhat);
  // scale so the rational parts land in Z as well
  Integer t = 1;
  for (int g = 0; g < k; ++g) {
    Rational dot(0);
    for (int j = 0; j < n; ++j) dot += mhat[static_cast<size_t>(j)] * gens[g](j).rational_part();
    t = lcm(t, dot.get_den());
  }
  VecK functional(n);
  for (int j = 0; j < n; ++j)
    functional(j) = FieldElement(Rational(t) * mhat[static_cast<size_t>(j)]);
  IntegralityWitness cert;
  cert.functional = functional;
  for (const VecK& g : gens) {
    FieldElement v;
    for (int j = 0; j < n; ++j) v = v + functional(j) * g(j);
    cert.values.push_back(v);
  }
  if (!witness_check_torus(gens, functional))
    throw std::logic_error("torus character failed its self-check");
  DensityResult res;
  res.verdict = Verdict::NotDense;
  res.witness = std::move(cert);
  res.detail = "integer character annihilates every generator";
  return res;
}

bool witness_check(const std::vector<VecK>& gens, const VecK& functional) {
  bool nonzero = false;
  for (int j = 0; j < functional.size(); ++j) nonzero |= !functional(j).is_zero();
  if (!nonzero) return false;
  for (const VecK& g : gens) {
    if (g.size() != functional.size()) return false;
    FieldElement v;
    for (int j = 0; j < g.size(); ++j) v = v + functional(j) * g(j);
    if (!v.is_integer()) return false;
  }
  return true;
}

bool witness_check_torus(const std::vector<VecK>& gens, const VecK& functional) {
  for (int j = 0; j < functional.size(); ++j) {
    if (!functional(j).is_rational()) return false;
    if (!functional(j).is_integer()) return false;
  }
  return witness_check(gens, functional);
}

ModelDensityReport model_density_check(const GroupModel& model,
                                       const std::vector<GroupElement>& gens) {
  if (!model.exact_backend())
    throw std::invalid_argument("model_density_check: needs an exact coordinate model");
  ModelDensityReport rep;
  rep.reduced_dim = model.abelianization_dim();
  rep.reduced_gens.reserve(gens.size());
  for (const GroupElement& g : gens) rep.reduced_gens.push_back(model.abelianize(g));
  if (model.kind() == ModelKind::Torus)
    rep.result = decide_density_torus(rep.reduced_gens, rep.reduced_dim);
  else
    rep.result = decide_density(rep.reduced_gens, rep.reduced_dim);
  return rep;
}

}  // namespace denselab
