#include "phasespace/cloning.hpp"

#include <cmath>

#include <unsupported/Eigen/KroneckerProduct>

#include "phasespace/analytic.hpp"

namespace phasespace {

Real ClonerParams::normalization_error() const {
    return std::norm(a) + std::norm(b) + 2.0 * (std::conj(a) * b).real() / static_cast<Real>(n) - 1.0;
}

void ClonerParams::validate() const {
    if (n < 2) throw std::invalid_argument("cloner dimension must be at least 2");
    if (std::abs(normalization_error()) > 1e-12) throw std::invalid_argument("cloner amplitudes are not normalized");
}

ClonerParams params_from_angle(Index n, Real theta) {
    const Real r = 1.0 / std::sqrt(1.0 + std::sin(2.0 * theta) / static_cast<Real>(n));
    return {n, r * std::cos(theta), r * std::sin(theta)};
}

CVector maximally_entangled(Index n) {
    CVector omega = CVector::Zero(n * n);
    for (Index j = 0; j < n; ++j) omega(j * n + j) = 1.0;
    return omega / std::sqrt(static_cast<Real>(n));
}

CMatrix kron(const CMatrix& a, const CMatrix& b) { return Eigen::kroneckerProduct(a, b).eval(); }

CMatrix cloner_isometry(const ClonerParams& p) {
    p.validate();
    const Index n = p.n;
    const CVector omega = maximally_entangled(n);
    CMatrix v(n * n * n, n);
    for (Index i = 0; i < n; ++i) {
        const CVector e = CVector::Unit(n, i);
        v.col(i) = p.a * kron(e, omega) + p.b * kron(omega, e);
    }
    return v;
}

CMatrix rearrange(const CMatrix& v, Index n) {
    CMatrix vhat(n * n, n * n);
    for (Index j = 0; j < n; ++j)
        for (Index k = 0; k < n; ++k)
            for (Index l = 0; l < n; ++l)
                for (Index i = 0; i < n; ++i) vhat(j * n + l, k * n + i) = v((j * n + k) * n + l, i);
    return vhat;
}

Real intertwining_error(const CMatrix& v, const CMatrix& u) {
    const CMatrix uuu = kron(kron(u, u.conjugate()), u);
    return (v * u - uuu * v).cwiseAbs().maxCoeff();
}

CMatrix partial_trace_first(const CMatrix& m, Index n) {
    CMatrix r = CMatrix::Zero(n, n);
    for (Index k = 0; k < n; ++k) r += m.block(k * n, k * n, n, n);
    return r;
}

CMatrix partial_trace_second(const CMatrix& m, Index n) {
    CMatrix r(n, n);
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) r(i, j) = m.block(i * n, j * n, n, n).trace();
    return r;
}

std::vector<CMatrix> basis_projectors(const CMatrix& basis) {
    std::vector<CMatrix> out;
    for (Index k = 0; k < basis.cols(); ++k) out.push_back(basis.col(k) * basis.col(k).adjoint());
    return out;
}

std::vector<CMatrix> JointPovm::first_marginal() const {
    std::vector<CMatrix> out;
    for (Index x = 0; x < nx; ++x) {
        CMatrix m = CMatrix::Zero(effects[0].rows(), effects[0].cols());
        for (Index y = 0; y < ny; ++y) m += (*this)(x, y);
        out.push_back(m);
    }
    return out;
}

std::vector<CMatrix> JointPovm::second_marginal() const {
    std::vector<CMatrix> out;
    for (Index y = 0; y < ny; ++y) {
        CMatrix m = CMatrix::Zero(effects[0].rows(), effects[0].cols());
        for (Index x = 0; x < nx; ++x) m += (*this)(x, y);
        out.push_back(m);
    }
    return out;
}

Real JointPovm::normalization_error() const {
    CMatrix s = CMatrix::Zero(effects[0].rows(), effects[0].cols());
    for (const auto& e : effects) s += e;
    return (s - CMatrix::Identity(s.rows(), s.cols())).cwiseAbs().maxCoeff();
}

Real JointPovm::min_eigenvalue() const {
    Real m = kInfinity;
    for (const auto& e : effects) m = std::min(m, Eigen::SelfAdjointEigenSolver<CMatrix>(e, Eigen::EigenvaluesOnly).eigenvalues()(0));
    return m;
}

namespace {

void check_complete(const std::vector<CMatrix>& family, Index n) {
    if (family.empty()) throw std::invalid_argument("empty measurement");
    CMatrix s = CMatrix::Zero(n, n);
    for (const auto& f : family) {
        if (f.rows() != n || f.cols() != n) throw std::invalid_argument("effect has the wrong dimension");
        s += f;
    }
    if ((s - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-10) throw std::invalid_argument("basis is not complete");
}

} // namespace

JointPovm joint_povm_from_cloner(const ClonerParams& p, const std::vector<CMatrix>& f, const std::vector<CMatrix>& e) {
    const Index n = p.n;
    check_complete(f, n);
    check_complete(e, n);
    const CMatrix v = cloner_isometry(p);
    const CMatrix id = CMatrix::Identity(n, n);
    JointPovm g{static_cast<Index>(f.size()), static_cast<Index>(e.size()), {}};
    for (const auto& fx : f) {
        const CMatrix left = kron(fx, id);
        for (const auto& ey : e) g.effects.push_back(v.adjoint() * kron(left, ey) * v);
    }
    return g;
}

Real marginal_distance(const Group& g, Side side, const std::vector<CMatrix>& approx) {
    const Index n = g->space(side).size();
    const MetricSpec m = make_metric(MetricKind::Discrete, 1.0);
    Real worst = 0.0;
    for (Index k = 0; k < n; ++k) {
        const CVector v = side == Side::Position ? position_eigenstate(*g, k) : momentum_eigenstate(*g, k);
        RVector out(n);
        for (Index y = 0; y < n; ++y) out(y) = v.dot(approx[static_cast<std::size_t>(y)] * v).real();
        const Distribution measured(g, side, out);
        worst = std::max(worst, transport_distance(measured, Distribution::point(g, side, k), m));
    }
    return worst;
}

namespace {

CMatrix momentum_basis(const GroupSpec& g) {
    const Index n = g.momentum().size();
    CMatrix b(g.position().size(), n);
    for (Index p = 0; p < n; ++p) b.col(p) = momentum_eigenstate(g, p);
    return b;
}

} // namespace

UncertaintyPair cloner_uncertainty_pair(const ClonerParams& p) {
    const Group g = make_cyclic(p.n);
    const auto povm = joint_povm_from_cloner(p, basis_projectors(CMatrix::Identity(p.n, p.n)), basis_projectors(momentum_basis(*g)));
    return {marginal_distance(g, Side::Momentum, povm.second_marginal()), marginal_distance(g, Side::Position, povm.first_marginal())};
}

CovariantObservable covariant_from_cloner(const ClonerParams& p) {
    const Group g = make_cyclic(p.n);
    const Index n = p.n;
    const CMatrix v = cloner_isometry(p);
    CMatrix f0 = CMatrix::Zero(n, n);
    f0(0, 0) = 1.0;
    const CVector phi = momentum_eigenstate(*g, 0);
    const CMatrix rho = static_cast<Real>(n) * v.adjoint() * kron(kron(f0, CMatrix::Identity(n, n)), phi * phi.adjoint()) * v;
    return CovariantObservable(DensityOperator(g, rho));
}

std::vector<CloningPoint> cloning_sweep(Index n, Real step) {
    if (!(step > 0.0)) throw std::invalid_argument("sweep step must be positive");
    const Real delta = qudit_radius(n);
    std::vector<CloningPoint> out;
    const auto count = static_cast<long>(std::ceil(2.0 * kPi / step));
    for (long k = 0; k < count; ++k) {
        const Real theta = static_cast<Real>(k) * step;
        const ClonerParams p = params_from_angle(n, theta);
        CloningPoint c{theta, p.a.real(), p.b.real(), cloner_uncertainty_pair(p), false, 0.0};
        c.in_box = c.pair.dp <= delta + 1e-12 && c.pair.dq <= delta + 1e-12;
        if (c.in_box) c.residual = qudit_boundary_residual(n, std::min(c.pair.dp, delta), std::min(c.pair.dq, delta));
        out.push_back(c);
    }
    return out;
}

CMatrix generator_from_coefficients(const PhaseSpaceFunction& u) {
    const GroupSpec& g = *u.group;
    const Index n = g.position().size();
    CMatrix rho = CMatrix::Zero(n, n);
    for (Index q = 0; q < n; ++q) {
        CVector chi = CVector::Zero(n);
        for (Index p = 0; p < g.momentum().size(); ++p)
            chi += std::conj(u.values(q, p)) * g.character(p, q) * momentum_eigenstate(g, p);
        rho += chi * chi.adjoint();
    }
    return rho;
}

PhaseSpaceFunction coefficients_for_state(const DensityOperator& rho) {
    const GroupSpec& g = *rho.group();
    if (!g.is_square()) throw std::invalid_argument("phase-space cloners need |X| = |X^|");
    const Index n = rho.dim();
    Eigen::SelfAdjointEigenSolver<CMatrix> es(rho.matrix());
    auto u = PhaseSpaceFunction::zero(rho.group());
    for (Index q = 0; q < n; ++q) {
        const Real lambda = std::max(es.eigenvalues()(q), 0.0);
        const CVector vq = es.eigenvectors().col(q);
        for (Index p = 0; p < n; ++p)
            u.values(q, p) = std::sqrt(lambda) * std::conj(momentum_eigenstate(g, p).dot(vq)) * g.character(p, q);
    }
    return u;
}

PhaseSpaceCloner phase_space_cloner(const Group& g, PhaseSpaceFunction u) {
    if (!g->is_square()) throw std::invalid_argument("phase-space cloners need |X| = |X^|");
    if (u.values.cwiseAbs().maxCoeff() == 0.0) throw std::invalid_argument("cloner coefficients vanish");
    const Index n = g->position().size();
    CMatrix vhat = CMatrix::Zero(n * n, n * n);
    for (Index q = 0; q < n; ++q)
        for (Index p = 0; p < n; ++p) {
            if (u.values(q, p) == Complex(0.0)) continue;
            const PhasePoint xi{q, p};
            vhat += u.values(q, p) * kron(weyl_matrix(*g, xi), weyl_matrix(*g, phase_negate(*g, xi)));
        }
    // tr_2(Vhat* Vhat) commutes with every Weyl operator, hence is c 1.
    const CMatrix t2 = partial_trace_second(vhat.adjoint() * vhat, n);
    const Real c = t2.trace().real() / static_cast<Real>(n);
    const Real s = 1.0 / std::sqrt(c);
    vhat *= s;
    u.values *= s;
    const Real norm_err = (partial_trace_second(vhat.adjoint() * vhat, n) - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff();

    const auto f = basis_projectors(CMatrix::Identity(n, n));
    const auto e = basis_projectors(momentum_basis(*g));
    JointPovm povm{n, n, {}};
    for (const auto& fx : f)
        for (const auto& ey : e) povm.effects.push_back(partial_trace_first(vhat.adjoint() * kron(fx, ey) * vhat, n));

    CMatrix rho = static_cast<Real>(n) * povm(0, 0);
    const Real tr = rho.trace().real();
    if (std::abs(tr - 1.0) > 1e-10) throw std::runtime_error("phase-space cloner generator does not have unit trace");
    rho /= tr;
    CMatrix formula = generator_from_coefficients(u);
    formula /= formula.trace().real();
    const Real formula_err = (rho - formula).cwiseAbs().maxCoeff();
    return {std::move(u), std::move(vhat), std::move(povm), CovariantObservable(DensityOperator(g, rho)), norm_err, formula_err};
}

} // namespace phasespace
