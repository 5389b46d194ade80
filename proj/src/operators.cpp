#include "phasespace/operators.hpp"

#include <cmath>

namespace phasespace {

DensityOperator::DensityOperator(Group group, CMatrix entries) : group_(std::move(group)), rho_(std::move(entries)) {
    if (!group_) throw std::invalid_argument("density operator needs a group");
    const Index n = group_->position().size();
    if (rho_.rows() != n || rho_.cols() != n) throw std::invalid_argument("density operator does not match the group");
    if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > 1e-12) throw std::invalid_argument("density operator is not Hermitian");
    if (std::abs(rho_.trace() - 1.0) > 1e-12) throw std::invalid_argument("density operator does not have unit trace");
    rho_ = 0.5 * (rho_ + rho_.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<CMatrix> es(rho_);
    const RVector& ev = es.eigenvalues();
    if (ev.minCoeff() < -1e-10) throw std::invalid_argument("density operator is not positive");
    if (ev.minCoeff() < 0.0) {
        const RVector clipped = ev.cwiseMax(0.0) / ev.cwiseMax(0.0).sum();
        rho_ = es.eigenvectors() * clipped.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
    }
}

DensityOperator DensityOperator::pure(Group group, const CVector& psi) {
    const CVector v = psi.normalized();
    return DensityOperator(std::move(group), v * v.adjoint());
}

DensityOperator DensityOperator::maximally_mixed(Group group) {
    const Index n = group->position().size();
    return DensityOperator(std::move(group), CMatrix::Identity(n, n) / static_cast<Real>(n));
}

PhaseSpaceFunction PhaseSpaceFunction::zero(Group g) {
    const Index nq = g->position().size(), np = g->momentum().size();
    return {std::move(g), CMatrix::Zero(nq, np)};
}

PhaseSpaceFunction PhaseSpaceFunction::delta(Group g, PhasePoint xi) {
    auto f = zero(g);
    f.values(xi.q, xi.p) = 1.0 / g->phase_weight();
    return f;
}

PhaseSpaceFunction PhaseSpaceFunction::constant(Group g, Complex c) {
    auto f = zero(std::move(g));
    f.values.setConstant(c);
    return f;
}

Complex PhaseSpaceFunction::integral() const { return group->phase_weight() * values.sum(); }

Distribution position_marginal(const DensityOperator& rho) {
    return Distribution(rho.group(), Side::Position, rho.matrix().diagonal().real());
}

Distribution momentum_marginal(const DensityOperator& rho) {
    const GroupSpec& g = *rho.group();
    // diag(F rho F*): F applied to the columns of rho F* = (F rho)*.
    CMatrix frho(g.momentum().size(), rho.dim());
    for (Index j = 0; j < rho.dim(); ++j) frho.col(j) = g.fourier(rho.matrix().col(j));
    const CMatrix rho_fstar = frho.adjoint();
    RVector m(g.momentum().size());
    for (Index k = 0; k < m.size(); ++k) m(k) = g.fourier(rho_fstar.col(k))(k).real();
    return Distribution(rho.group(), Side::Momentum, m);
}

Distribution position_marginal(const Group& g, const CVector& psi) {
    return Distribution(g, Side::Position, psi.cwiseAbs2() / psi.squaredNorm());
}

Distribution momentum_marginal(const Group& g, const CVector& psi) {
    const CVector f = g->fourier(psi);
    return Distribution(g, Side::Momentum, f.cwiseAbs2() / f.squaredNorm());
}

namespace {

void require_square(const GroupSpec& g) {
    if (!g.is_square()) throw std::invalid_argument("phase-space convolutions need |X| = |X^|");
}

} // namespace

CMatrix convolve(const PhaseSpaceFunction& f, const CMatrix& a) {
    const GroupSpec& g = *f.group;
    require_square(g);
    CMatrix out = CMatrix::Zero(a.rows(), a.cols());
    for (Index q = 0; q < g.position().size(); ++q)
        for (Index p = 0; p < g.momentum().size(); ++p) {
            const Complex w = f.values(q, p);
            if (w != Complex(0.0)) out += w * translate_operator(g, {q, p}, a);
        }
    return g.phase_weight() * out;
}

PhaseSpaceFunction convolve(const Group& group, const CMatrix& a, const CMatrix& b) {
    const GroupSpec& g = *group;
    require_square(g);
    const CMatrix bb = reflect_operator(g, b);
    PhaseSpaceFunction out = PhaseSpaceFunction::zero(group);
    for (Index q = 0; q < g.position().size(); ++q)
        for (Index p = 0; p < g.momentum().size(); ++p)
            out.values(q, p) = (a.cwiseProduct(translate_operator(g, {q, p}, bb).transpose())).sum();
    return out;
}

PhaseSpaceFunction convolve(const PhaseSpaceFunction& f, const PhaseSpaceFunction& h) {
    const GroupSpec& g = *f.group;
    const Space& X = g.position();
    const Space& P = g.momentum();
    PhaseSpaceFunction out = PhaseSpaceFunction::zero(f.group);
    for (Index q = 0; q < X.size(); ++q)
        for (Index p = 0; p < P.size(); ++p) {
            Complex acc = 0.0;
            for (Index q2 = 0; q2 < X.size(); ++q2) {
                const auto dq = X.subtract(q, q2);
                if (!dq) continue;
                for (Index p2 = 0; p2 < P.size(); ++p2) {
                    const auto dp = P.subtract(p, p2);
                    if (dp) acc += f.values(q2, p2) * h.values(*dq, *dp);
                }
            }
            out.values(q, p) = g.phase_weight() * acc;
        }
    return out;
}

CMatrix sum_of_translates(const GroupSpec& g, const CMatrix& a) {
    CMatrix out = CMatrix::Zero(a.rows(), a.cols());
    for (Index q = 0; q < g.position().size(); ++q)
        for (Index p = 0; p < g.momentum().size(); ++p) out += translate_operator(g, {q, p}, a);
    return out;
}

} // namespace phasespace
