#pragma once

#include <cstdint>
#include <functional>

#include "phasespace/core.hpp"

namespace phasespace {

struct EigenPair {
    Real value = 0.0;
    CVector vector;
    Real residual = 0.0;     // ||H v - value v||
    Real gap = kInfinity;    // distance to the next eigenvalue (estimate for Lanczos)
    long iterations = 0;
};

/// Dense Hermitian solve; uses a real symmetric solver when H is real.
EigenPair smallest_eigenpair(const CMatrix& h);
/// All eigenvalues in ascending order plus eigenvectors (dense).
void hermitian_eigensystem(const CMatrix& h, RVector& values, CMatrix& vectors);

using LinearMap = std::function<void(const CVector& in, CVector& out)>;

struct LanczosOptions {
    Index krylov = 80;
    long max_restarts = 2000;
    Real tolerance = 1e-10;  // relative to the spectral norm estimate
    std::uint64_t seed = 1;
};

/// Restarted Lanczos with full reorthogonalization for the smallest eigenpair
/// of a Hermitian map. Throws ConvergenceError with the iteration count.
EigenPair smallest_eigenpair(const LinearMap& apply, Index n, const LanczosOptions& opts = {},
                             const CVector* start = nullptr);

} // namespace phasespace
