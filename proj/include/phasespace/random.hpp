#pragma once

#include <random>

#include "phasespace/core.hpp"

namespace phasespace {

using Rng = std::mt19937_64;

/// Haar-random unit vector.
CVector random_pure_state(Index n, Rng& rng);
/// Ginibre density matrix of the given rank (rank 0 = full).
CMatrix random_density_matrix(Index n, Rng& rng, Index rank = 0);
/// Haar-random unitary (QR of a Ginibre matrix with phase fix).
CMatrix random_unitary(Index n, Rng& rng);

} // namespace phasespace
