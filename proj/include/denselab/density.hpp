#pragma once

#include <optional>
#include <string>
#include <vector>

#include "denselab/field.hpp"
#include "denselab/models.hpp"

namespace denselab {

enum class Verdict { Dense, NotDense, Inconclusive };

std::string verdict_str(Verdict v);

// Certificate that a subgroup of R^n (or T^n) is not dense: a nonzero linear
// functional taking exactly integral values on every generator.  The subgroup
// then lies in the closed proper subset F^{-1}(Z).  For the torus the
// functional is itself an integer vector (a character).
struct IntegralityWitness {
  VecK functional;                    // row vector w, F(x) = <w, x>
  std::vector<FieldElement> values;   // F(g_i), each an exact integer
};

struct DensityResult {
  Verdict verdict = Verdict::Inconclusive;
  std::optional<IntegralityWitness> witness;  // present iff NotDense
  std::string detail;                         // which branch decided
};

// Exact density decision for the subgroup of R^n generated by `gens`:
//   rank < n            -> NotDense (kernel functional annihilates everything)
//   rank = n, k = n     -> NotDense (lattice; dual-basis functional)
//   rank = n, k = n+1   -> Dense iff {1, a_1..a_n} is Q-free, where the a_j
//                          expand the residual generator over a spanning
//                          subset; otherwise the relation is itself a witness
//   k > n+1             -> Dense if some (n+1)-subset certifies density,
//                          else Inconclusive (never a false verdict)
// Every NotDense answer carries a witness that is re-checked before return.
DensityResult decide_density(const std::vector<VecK>& gens, int n);

// Exact density decision on the torus T^n = R^n/Z^n (complete dichotomy):
// dense iff the surd components of the generators, stacked as a rational
// matrix, have full column rank; otherwise an integer character is produced.
DensityResult decide_density_torus(const std::vector<VecK>& gens, int n);

// machine check of a witness: functional is nonzero and takes exact integer
// values on every generator
bool witness_check(const std::vector<VecK>& gens, const VecK& functional);
// torus variant: additionally requires the functional be an integer vector
bool witness_check_torus(const std::vector<VecK>& gens, const VecK& functional);

// Density for the exact connected models via the abelianization: a subgroup
// of a simply connected nilpotent group is dense iff its image in G/[G,G] is;
// the torus goes through the character criterion directly.
struct ModelDensityReport {
  DensityResult result;
  std::vector<VecK> reduced_gens;  // generator images in the reduction target
  int reduced_dim = 0;
};

ModelDensityReport model_density_check(const GroupModel& model,
                                       const std::vector<GroupElement>& gens);

}  // namespace denselab
