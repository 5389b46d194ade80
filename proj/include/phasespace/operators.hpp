#pragma once

// Density operators, marginals and the phase-space convolutions
//   f*g (functions), f*A (operator), A*B (function)
// on finite models. Phase-space sums carry the cell weight dq*dp.

#include "phasespace/lca.hpp"
#include "phasespace/metric.hpp"

namespace phasespace {

/// Hermitian, positive semidefinite, unit trace; stored in the position basis.
class DensityOperator {
public:
    /// Validates (Hermitian 1e-12, trace 1e-12, eigenvalues >= -1e-10),
    /// hermitizes and clips small negative eigenvalues.
    DensityOperator(Group group, CMatrix entries);

    static DensityOperator pure(Group group, const CVector& psi);
    static DensityOperator maximally_mixed(Group group);

    const Group& group() const { return group_; }
    const CMatrix& matrix() const { return rho_; }
    Index dim() const { return rho_.rows(); }
    Real purity() const { return (rho_ * rho_).trace().real(); }

private:
    Group group_;
    CMatrix rho_;
};

/// Function on Xi = X x X^, rows indexed by q and columns by p.
struct PhaseSpaceFunction {
    Group group;
    CMatrix values;

    static PhaseSpaceFunction zero(Group g);
    /// f = delta_xi / (dq dp): the unit of phase-space convolution.
    static PhaseSpaceFunction delta(Group g, PhasePoint xi);
    static PhaseSpaceFunction constant(Group g, Complex c);

    Complex operator()(PhasePoint xi) const { return values(xi.q, xi.p); }
    /// sum_xi dq dp f(xi)
    Complex integral() const;
};

Distribution position_marginal(const DensityOperator& rho);
Distribution momentum_marginal(const DensityOperator& rho);
/// Marginals of a pure state given by its coefficient vector.
Distribution position_marginal(const Group& g, const CVector& psi);
Distribution momentum_marginal(const Group& g, const CVector& psi);

/// f*A = sum_eta dq dp f(eta) alpha_eta(A)
CMatrix convolve(const PhaseSpaceFunction& f, const CMatrix& a);
/// (A*B)(xi) = tr(A alpha_xi(beta_-(B)))
PhaseSpaceFunction convolve(const Group& g, const CMatrix& a, const CMatrix& b);
/// (f*g)(xi) = sum_eta dq dp f(eta) g(xi - eta)
PhaseSpaceFunction convolve(const PhaseSpaceFunction& f, const PhaseSpaceFunction& h);

/// sum_xi alpha_xi(A), used to pin the Haar convention (= |X| tr(A) 1).
CMatrix sum_of_translates(const GroupSpec& g, const CMatrix& a);

} // namespace phasespace
