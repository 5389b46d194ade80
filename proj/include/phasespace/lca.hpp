#pragma once

// Characters, Fourier transform, Weyl operators and parity on a GroupSpec.
// Vectors are coefficients in the orthonormal point basis of L^2(X); the
// wave function value at x is psi(x) = coefficient / sqrt(haar).

#include "phasespace/group.hpp"

namespace phasespace {

/// A phase-space point xi = (q, p), stored as point indices.
struct PhasePoint {
    Index q = 0;
    Index p = 0;
};

inline Complex character(const GroupSpec& g, Index p, Index x) { return g.character(p, x); }

inline CVector fourier(const GroupSpec& g, const CVector& psi) { return g.fourier(psi); }
inline CVector fourier_inverse(const GroupSpec& g, const CVector& phi) { return g.fourier_adjoint(phi); }

PhasePoint phase_origin(const GroupSpec& g);
/// Throws RangeError when a component leaves a truncated range.
PhasePoint phase_add(const GroupSpec& g, PhasePoint a, PhasePoint b);
PhasePoint phase_negate(const GroupSpec& g, PhasePoint a);

/// (W(q,p) psi)(x) = <p|x> psi(x+q). Throws RangeError if x+q leaves the
/// stored range for some x.
CVector weyl(const GroupSpec& g, PhasePoint xi, const CVector& psi);
CMatrix weyl_matrix(const GroupSpec& g, PhasePoint xi);

/// (Pi psi)(x) = psi(-x).
CVector parity(const GroupSpec& g, const CVector& psi);
CMatrix parity_matrix(const GroupSpec& g);

/// alpha_xi(A) = W(xi)* A W(xi).
CMatrix translate_operator(const GroupSpec& g, PhasePoint xi, const CMatrix& a);
/// beta_-(A) = Pi A Pi.
CMatrix reflect_operator(const GroupSpec& g, const CMatrix& a);

CVector position_eigenstate(const GroupSpec& g, Index x);
/// Momentum eigenvector e_p with e_p(x) proportional to <p|x>.
CVector momentum_eigenstate(const GroupSpec& g, Index p);

/// Wave function values psi(x) (density amplitudes w.r.t. Haar measure).
CVector wavefunction_values(const GroupSpec& g, Side side, const CVector& coefficients);

} // namespace phasespace
