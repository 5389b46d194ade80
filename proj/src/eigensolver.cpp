#include "phasespace/eigensolver.hpp"

#include <cmath>
#include <random>

namespace phasespace {

void hermitian_eigensystem(const CMatrix& h, RVector& values, CMatrix& vectors) {
    if (h.rows() != h.cols()) throw std::invalid_argument("eigensolver needs a square matrix");
    const Real scale = std::max<Real>(h.cwiseAbs().maxCoeff(), 1e-300);
    if (h.imag().cwiseAbs().maxCoeff() <= 1e-14 * scale) {
        const RMatrix re = 0.5 * (h.real() + h.real().transpose());
        Eigen::SelfAdjointEigenSolver<RMatrix> es(re);
        if (es.info() != Eigen::Success) throw ConvergenceError("dense symmetric eigensolver failed", 0);
        values = es.eigenvalues();
        vectors = es.eigenvectors().cast<Complex>();
        return;
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
    if (es.info() != Eigen::Success) throw ConvergenceError("dense Hermitian eigensolver failed", 0);
    values = es.eigenvalues();
    vectors = es.eigenvectors();
}

EigenPair smallest_eigenpair(const CMatrix& h) {
    RVector ev;
    CMatrix evec;
    hermitian_eigensystem(h, ev, evec);
    EigenPair out;
    out.value = ev(0);
    out.vector = evec.col(0);
    out.gap = ev.size() > 1 ? ev(1) - ev(0) : kInfinity;
    out.residual = (h * out.vector - out.value * out.vector).norm();
    return out;
}

EigenPair smallest_eigenpair(const LinearMap& apply, Index n, const LanczosOptions& opts, const CVector* start) {
    if (n < 1) throw std::invalid_argument("empty eigenproblem");
    const Index m = std::min<Index>(opts.krylov, n);

    CVector v0(n);
    if (start && start->size() == n && start->norm() > 0.0) {
        v0 = start->normalized();
    } else {
        std::mt19937_64 rng(opts.seed);
        std::normal_distribution<Real> g;
        for (Index i = 0; i < n; ++i) v0(i) = Complex(g(rng), g(rng));
        v0.normalize();
    }

    CMatrix V(n, m + 1);
    CVector w(n);
    RVector alpha(m), beta(m);
    Real hnorm = 0.0;
    EigenPair best;
    best.value = kInfinity;

    for (long restart = 0; restart < opts.max_restarts; ++restart) {
        V.col(0) = v0;
        Index k = 0;
        for (Index j = 0; j < m; ++j) {
            apply(V.col(j), w);
            alpha(j) = V.col(j).dot(w).real();
            w -= alpha(j) * V.col(j);
            if (j > 0) w -= beta(j - 1) * V.col(j - 1);
            for (int pass = 0; pass < 2; ++pass) {
                const CVector c = V.leftCols(j + 1).adjoint() * w;
                w -= V.leftCols(j + 1) * c;
            }
            beta(j) = w.norm();
            hnorm = std::max(hnorm, std::abs(alpha(j)) + beta(j) + (j > 0 ? beta(j - 1) : 0.0));
            k = j + 1;
            if (beta(j) <= 1e-14 * std::max(hnorm, 1e-300)) break;
            V.col(j + 1) = w / beta(j);
        }

        Eigen::SelfAdjointEigenSolver<RMatrix> tri;
        tri.computeFromTridiagonal(alpha.head(k), beta.head(std::max<Index>(k - 1, 0)), Eigen::ComputeEigenvectors);
        const RVector y = tri.eigenvectors().col(0);
        CVector psi = V.leftCols(k) * y.cast<Complex>();
        psi.normalize();
        const Real theta = tri.eigenvalues()(0);

        apply(psi, w);
        const Real res = (w - theta * psi).norm();
        best.value = theta;
        best.vector = psi;
        best.residual = res;
        best.iterations = restart + 1;
        best.gap = k > 1 ? tri.eigenvalues()(1) - theta : kInfinity;
        if (res <= opts.tolerance * std::max(hnorm, 1e-300) || k < m) return best;
        v0 = psi;
    }
    throw ConvergenceError("Lanczos did not reach the residual tolerance", opts.max_restarts);
}

} // namespace phasespace
