#include "phasespace/random.hpp"

namespace phasespace {

namespace {

CMatrix ginibre(Index rows, Index cols, Rng& rng) {
    std::normal_distribution<Real> g;
    CMatrix a(rows, cols);
    for (Index j = 0; j < cols; ++j)
        for (Index i = 0; i < rows; ++i) a(i, j) = Complex(g(rng), g(rng));
    return a;
}

} // namespace

CVector random_pure_state(Index n, Rng& rng) { return ginibre(n, 1, rng).col(0).normalized(); }

CMatrix random_density_matrix(Index n, Rng& rng, Index rank) {
    const CMatrix a = ginibre(n, rank > 0 ? rank : n, rng);
    CMatrix rho = a * a.adjoint();
    rho /= rho.trace().real();
    return 0.5 * (rho + rho.adjoint());
}

CMatrix random_unitary(Index n, Rng& rng) {
    const CMatrix a = ginibre(n, n, rng);
    Eigen::HouseholderQR<CMatrix> qr(a);
    CMatrix q = qr.householderQ();
    const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Index j = 0; j < n; ++j) {
        const Complex d = r(j, j);
        if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
    }
    return q;
}

} // namespace phasespace
