#pragma once

#include "denselab/models.hpp"

namespace denselab {

// algebraic multiplicity of the eigenvalue 1 of Ad(g): exact models count
// dim ker (Ad(g) - I)^n by rank over the coefficient field, matrix models
// cluster eigenvalues within 1e-6 of 1
int unit_eigenvalue_multiplicity(const GroupModel& m, const GroupElement& g);

// the generic (minimal possible) multiplicity for the model; on the nilpotent
// and abelian models Ad is unipotent so every element attains it
int minimal_unit_multiplicity(const GroupModel& m);

// g is regular when its multiplicity is the model minimum
bool is_regular(const GroupModel& m, const GroupElement& g);

struct CartanCheck {
  bool bracket_closed = false;
  bool nilpotent = false;
  bool self_normalizing = false;
  bool all() const { return bracket_closed && nilpotent && self_normalizing; }
};

// Cartan subalgebra attached to a regular element: the generalized unit
// eigenspace ker (Ad(g) - I)^n.  Throws std::invalid_argument when g is not
// regular.
SubspaceK cartan_of_regular(const GroupModel& m, const GroupElement& g);
FloatSubspace cartan_of_regular_float(const GroupModel& m, const GroupElement& g);

CartanCheck check_cartan(const GroupModel& m, const SubspaceK& h);
CartanCheck check_cartan_float(const GroupModel& m, const FloatSubspace& h, double tol = 1e-8);

}  // namespace denselab
