#pragma once

// Joint measurements built from cloners: the asymmetric universal qudit
// cloner V phi = a phi (x) Omega + b Omega (x) phi, and phase-space covariant
// cloners Vhat = sum_xi u(xi) W(q,p) (x) W(-q,-p).

#include <vector>

#include "phasespace/covariant.hpp"

namespace phasespace {

struct ClonerParams {
    Index n = 2;
    Complex a = 1.0;
    Complex b = 0.0;

    /// |a|^2 + |b|^2 + 2 Re(conj(a) b) / n - 1
    Real normalization_error() const;
    /// Throws std::invalid_argument if the normalization fails by more than 1e-12.
    void validate() const;
};

/// a = r cos(theta), b = r sin(theta) with r fixed by the normalization.
/// theta in (pi/2, pi) gives a b < 0 and |b|^2 may exceed 1.
ClonerParams params_from_angle(Index n, Real theta);

/// Omega = n^(-1/2) sum_j |jj>
CVector maximally_entangled(Index n);
/// V as an n^3 x n matrix, factor order (1, 2, 3), first factor most significant.
CMatrix cloner_isometry(const ClonerParams& p);
/// <jl|Vhat|ki> = <jkl|V|i>
CMatrix rearrange(const CMatrix& v, Index n);
/// max |V U - (U (x) conj(U) (x) U) V|
Real intertwining_error(const CMatrix& v, const CMatrix& u);

CMatrix kron(const CMatrix& a, const CMatrix& b);
/// Partial traces of an operator on C^n (x) C^n.
CMatrix partial_trace_first(const CMatrix& m, Index n);
CMatrix partial_trace_second(const CMatrix& m, Index n);

/// Rank-one projectors onto the columns of an orthonormal basis.
std::vector<CMatrix> basis_projectors(const CMatrix& basis);

/// A finite POVM with outcomes (x, y), stored row-major: index x * ny + y.
struct JointPovm {
    Index nx = 0, ny = 0;
    std::vector<CMatrix> effects;

    const CMatrix& operator()(Index x, Index y) const { return effects[static_cast<std::size_t>(x * ny + y)]; }
    std::vector<CMatrix> first_marginal() const;
    std::vector<CMatrix> second_marginal() const;
    Real normalization_error() const;
    Real min_eigenvalue() const;
};

/// G_{x,y} = V*(F_x (x) 1 (x) E_y) V. Throws std::invalid_argument if either
/// family does not sum to the identity (1e-10).
JointPovm joint_povm_from_cloner(const ClonerParams& p, const std::vector<CMatrix>& f, const std::vector<CMatrix>& e);

/// Worst-case transport distance (discrete metric) between the outcome
/// distributions of a projective measurement and an approximation of it,
/// evaluated on the eigenstates of the former.
Real marginal_distance(const Group& g, Side side, const std::vector<CMatrix>& approx);

struct UncertaintyPair {
    Real dp = 0.0;
    Real dq = 0.0;
};

/// (dp, dq) of the cloner joint measurement with F = position and E =
/// momentum on cyclic(n); equals (Delta |a|^2, Delta |b|^2).
UncertaintyPair cloner_uncertainty_pair(const ClonerParams& p);

/// rho_F = n V*(|0><0| (x) 1 (x) |phi><phi|) V with phi the zero-momentum vector.
CovariantObservable covariant_from_cloner(const ClonerParams& p);

struct CloningPoint {
    Real theta = 0.0;
    Real a = 0.0, b = 0.0;
    UncertaintyPair pair;
    bool in_box = false;   // both uncertainties <= Delta
    Real residual = 0.0;   // qudit_boundary_residual, only meaningful in_box
};

/// Sweeps theta over [0, 2 pi) with the given step.
std::vector<CloningPoint> cloning_sweep(Index n, Real step = 1e-2);

struct PhaseSpaceCloner {
    PhaseSpaceFunction u;    // rescaled so that tr_2(Vhat* Vhat) = 1
    CMatrix vhat;
    JointPovm povm;          // G_{x,y} = tr_1 Vhat*(F_x (x) E_y) Vhat
    CovariantObservable observable;
    Real normalization_error = 0.0;  // tr_2(Vhat* Vhat) vs 1
    Real formula_error = 0.0;        // rho_F vs sum_q |chi_q><chi_q|
};

/// Throws std::invalid_argument for u = 0 or a non-square group.
PhaseSpaceCloner phase_space_cloner(const Group& g, PhaseSpaceFunction u);
/// sum_q |chi_q><chi_q| with chi_q = sum_p conj(u(q,p)) <p|q> e_p (unnormalized u).
CMatrix generator_from_coefficients(const PhaseSpaceFunction& u);
/// u(q,p) = sqrt(lambda_q) conj(<e_p|v_q>) <p|q> from rho = sum_q lambda_q |v_q><v_q|.
PhaseSpaceFunction coefficients_for_state(const DensityOperator& rho);

} // namespace phasespace
