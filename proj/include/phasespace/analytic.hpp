#pragma once

// Closed-form reference results and the small numerical oracles that back
// them: qudit ellipse, Bessel zeros, the radial equation, scaling relations,
// mean-field string curves and the number/angle relation.

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "phasespace/groundstate.hpp"

namespace phasespace {

/// Requested (alpha, beta, n) has no implemented method.
class UnsupportedBranch : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Delta = 1 - 1/n; throws for n < 2.
Real qudit_radius(Index n);

/// (dp - D)^2 + (dq - D)^2 + (2 - 4/n) dp dq - D^2 with D = 1 - 1/n.
/// Nonpositive on achievable pairs, zero on the tradeoff boundary.
/// Throws std::invalid_argument outside [0, D]^2 (1e-12 slack).
Real qudit_boundary_residual(Index n, Real dp, Real dq);

/// J_nu(x) by power series in long double; nu >= -1/2, x >= 0.
Real bessel_j(Real nu, Real x);
/// First positive zero of J_nu by bracketing and bisection (1e-10).
Real bessel_first_zero(Real nu);
/// c_{inf,2}(n) = j_{n/2-1,1}.
Real c_inf2(Index n);
/// n/2 + 1.47292 n^(1/3) - 1
Real c_inf2_expansion(Index n);

struct RadialResult {
    Real energy = 0.0;
    Real coarse_energy = 0.0;  // same solve on half the grid
    Index grid = 0;
};

/// Lowest Dirichlet eigenvalue of -d^2/dr^2 + (4 lambda + (n-1)(n-3)) / (4 r^2)
/// on (0, radius) with phi ~ r^((n-1)/2) at 0. Throws ConvergenceError when
/// the grid and half-grid energies differ by more than rel_tol * E.
RadialResult radial_solver(Index n, Real lambda = 0.0, Index grid = 4096, Real radius = 1.0, Real rel_tol = 1e-3);

struct ScalingRelation {
    Real prefactor = 1.0;  // E(a,b) / E(1,1) = a^(beta/(alpha+beta)) b^(alpha/(alpha+beta))
    Real constant = 1.0;   // (alpha+beta) alpha^(-alpha/(alpha+beta)) beta^(-beta/(alpha+beta))
};

/// Finite alpha, beta >= 1 only; infinite exponents throw UnsupportedBranch.
ScalingRelation scaling_exponents(Real alpha, Real beta, Real a = 1.0, Real b = 1.0);
/// Inverts E = K c^(alpha beta / (alpha+beta)).
Real constant_from_energy(Real alpha, Real beta, Real energy);

/// ((1 + cos t)/2)^alpha, ((1 + sin t)/2)^beta. The lower boundary is
/// traced by t in [pi, 3 pi / 2].
std::pair<Real, Real> meanfield_curve(Real alpha, Real beta, Real t);
/// min over the Bloch sphere of x + t y with (x, y) on the curve above.
Real meanfield_energy(Real alpha, Real beta, Real t);

struct StringComparison {
    Index n = 0;
    UncertaintyRegion region;          // exact sweep on bits(n), Hamming metrics
    std::vector<Real> limit_energy;    // mean-field energy at each t
    Real max_gap = 0.0;                // max_t |E_n(t) - E_inf(t)|
};

/// Compares ground energies of D_P + t D_Q on n qubits (Hamming metric with
/// exponents alpha on Q, beta on P) with the mean-field limit. 1 <= n <= 12.
StringComparison qubit_string_comparison(Index n, Real alpha, Real beta, const std::vector<Real>& t_grid);

/// (alpha+beta) 2^(-alpha beta/(alpha+beta)) alpha^(-alpha/(alpha+beta)) beta^(-beta/(alpha+beta))
Real meanfield_limit_constant(Real alpha, Real beta);
/// min_v v^(alpha/2) + (4v)^(-beta/2) by golden section in log v.
Real meanfield_limit_numeric(Real alpha, Real beta);

/// dq^2 + dp^2 (4 - dp^2) - 1
Real number_angle_residual(Real dq, Real dp);
/// dp^2 (4 - dp^2) - 4 (1 - dq)^2, zero on the ground states of the
/// discrete/chordal pair on Z x T.
Real number_angle_family_residual(Real dq, Real dp);

struct ConstantEntry {
    Real alpha = 2.0, beta = 2.0;
    Index n = 1;
    Real value = 0.0;
    std::string method;  // "closed-form" or "numeric"
    Real error = 0.0;    // estimate
    std::string note;
};

/// c_{alpha beta}(n). Closed forms for (2,2,n), (inf,2,n), (2,inf,n),
/// (inf,inf,n); a line-grid ground state for finite (alpha, beta) at n = 1.
/// Anything else throws UnsupportedBranch.
ConstantEntry uncertainty_constant(Real alpha, Real beta, Index n);

class ConstantTable {
public:
    void add(const ConstantEntry& e);
    const ConstantEntry* find(Real alpha, Real beta, Index n) const;
    const std::vector<ConstantEntry>& entries() const { return entries_; }
    std::string to_csv() const;

private:
    std::vector<ConstantEntry> entries_;
};

} // namespace phasespace
