#pragma once

// Exact solver for the transportation LP
//   min sum_ij c_ij x_ij  s.t.  sum_j x_ij = a_i, sum_i x_ij = b_j, x >= 0
// by the network (transportation) simplex method on a spanning-tree basis.

#include "phasespace/core.hpp"

namespace phasespace {

struct TransportSolution {
    Real cost = 0.0;
    RMatrix plan;       // supply x demand coupling
    long iterations = 0;
};

/// Supplies and demands must be nonnegative with equal totals (relative 1e-9);
/// the demand vector is rescaled to the supply total before solving.
TransportSolution solve_transport(const RVector& supply, const RVector& demand, const RMatrix& cost);

/// Smallest threshold tau such that a coupling exists using only pairs with
/// distance(i,j) <= tau.
Real bottleneck_transport(const RVector& supply, const RVector& demand, const RMatrix& distance);

} // namespace phasespace
