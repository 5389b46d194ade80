#pragma once

// Ground states of H(t) = d(P,0)^beta + t d(Q,0)^alpha and the tradeoff curve
// obtained by sweeping t.

#include <optional>
#include <vector>

#include "phasespace/eigensolver.hpp"
#include "phasespace/lca.hpp"
#include "phasespace/metric.hpp"

namespace phasespace {

struct Scenario {
    Group group;
    MetricSpec metric_q;  // on X, exponent alpha
    MetricSpec metric_p;  // on X^, exponent beta

    /// Throws std::invalid_argument if a metric does not fit its side.
    void validate() const;
};

/// d(x,0)^alpha on X.
RVector position_potential(const Scenario& s);
/// d(p,0)^beta on X^.
RVector momentum_potential(const Scenario& s);

/// F* diag(v) F for a function v on the dual, as a dense matrix on X.
CMatrix momentum_multiplier(const GroupSpec& g, const RVector& v);

/// Dense D_P + t D_Q. Rejects infinite exponents.
CMatrix build_hamiltonian(const Scenario& s, Real t);

/// H(t) kept in factored form: the kinetic part is built once (dense for
/// dimension <= dense_limit) and reused for every t.
class HamiltonianOperator {
public:
    explicit HamiltonianOperator(Scenario s, Index dense_limit = 1024);

    const Scenario& scenario() const { return s_; }
    Index dim() const { return potential_.size(); }
    bool dense() const { return dense_; }
    const RVector& potential() const { return potential_; }
    const RVector& dual_potential() const { return dual_potential_; }

    CMatrix matrix(Real t) const;
    void apply(Real t, const CVector& in, CVector& out) const;
    void apply_kinetic(const CVector& in, CVector& out) const;

    /// Smallest eigenpair of H(t): dense diagonalization or Lanczos.
    EigenPair ground_state(Real t, const CVector* start = nullptr) const;

private:
    Scenario s_;
    bool dense_;
    RVector potential_;
    RVector dual_potential_;
    CMatrix kinetic_;
};

/// Smallest eigenpair of a Hermitian matrix; residual <= 1e-9 ||H||.
EigenPair ground_state(const CMatrix& h);

struct UncertaintyPoint {
    Real t = 0.0;
    Real energy = 0.0;
    Real dq = 0.0;   // spread of the position marginal
    Real dp = 0.0;   // spread of the momentum marginal
    CVector state;   // centered ground state
    Real gap = kInfinity;
    bool degenerate = false;
    // Moment pairs at the ends of a degenerate ground space (if flagged).
    std::optional<std::pair<Real, Real>> segment_low_q;
    std::optional<std::pair<Real, Real>> segment_low_p;
    std::string error;  // non-empty if the solve failed at this t
};

struct UncertaintyRegion {
    Scenario scenario;
    std::vector<UncertaintyPoint> points;

    /// sup_t {E(t) - t delta} over the successful grid points; bounds
    /// d(rho^P)^beta from below given delta = d(rho^Q)^alpha.
    Real envelope(Real delta) const;
    /// envelope(dq^alpha) at each point.
    std::vector<Real> envelope_at_points() const;
};

/// Logarithmic grid of `count` points on [lo, hi].
std::vector<Real> log_grid(Real lo, Real hi, Index count);

/// Spreads of the marginals of `psi` (grid minimizers) and the state moved
/// so that both minimizers sit at the origin.
struct CenteredMoments {
    Real dq = 0.0;
    Real dp = 0.0;
    Index center_q = 0;
    Index center_p = 0;
    CVector state;
};
CenteredMoments centered_moments(const Scenario& s, const CVector& psi);

UncertaintyRegion sweep_tradeoff(const Scenario& s, const std::vector<Real>& t_grid);
UncertaintyRegion sweep_tradeoff(const HamiltonianOperator& h, const std::vector<Real>& t_grid);

/// The t -> 0 and t -> inf limits: ground space of D_P with smallest D_Q and
/// vice versa. Returns {low-momentum end, low-position end}.
std::pair<UncertaintyPoint, UncertaintyPoint> tradeoff_endpoints(const Scenario& s);

enum class HardSide { Q, P };

struct ConstrainedResult {
    Real energy = 0.0;   // minimal moment of the soft side
    CVector state;       // on the full group
    Index support = 0;   // number of points kept
};

/// Dirichlet restriction to {d(.,0) <= radius} on the hard side; minimizes
/// the soft side's moment operator there.
ConstrainedResult constrained_ground_state(const Scenario& s, HardSide side, Real radius);

/// Richardson extrapolation for an error linear in the grid spacing.
inline Real richardson(Real coarse, Real fine) { return 2.0 * fine - coarse; }

struct RadiusPoint {
    Real radius = 0.0;
    Real energy = 0.0;
    Real dq = 0.0;
    Real dp = 0.0;
};
/// Radius sweep replacing the t sweep for an infinite exponent.
std::vector<RadiusPoint> constrained_sweep(const Scenario& s, HardSide side, const std::vector<Real>& radii);

} // namespace phasespace
