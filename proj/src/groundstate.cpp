#include "phasespace/groundstate.hpp"

#include <algorithm>
#include <cmath>

#include "phasespace/operators.hpp"

namespace phasespace {

void Scenario::validate() const {
    if (!group) throw std::invalid_argument("scenario needs a group");
    metric_q.validate(group->position());
    metric_p.validate(group->momentum());
}

namespace {

RVector potential(const Space& s, const MetricSpec& m) {
    RVector v(s.size());
    for (Index x = 0; x < s.size(); ++x) v(x) = m.power(m.distance(s, x, s.zero()));
    return v;
}

bool fully_periodic(const GroupSpec& g) {
    if (!g.is_square()) return false;
    for (const auto& ax : g.position().axes())
        if (!ax.periodic) return false;
    return true;
}

Real operator_norm_bound(const CMatrix& h) { return h.cwiseAbs().rowwise().sum().maxCoeff(); }

// Orthonormal basis of the eigenspace of `vectors` within tol of the lowest value.
CMatrix lowest_eigenspace(const RVector& values, const CMatrix& vectors, Real tol) {
    Index k = 1;
    while (k < values.size() && values(k) - values(0) <= tol) ++k;
    return vectors.leftCols(k);
}

// Minimizes the Hermitian form `op` inside span(basis).
CVector minimize_in_span(const CMatrix& basis, const CMatrix& op) {
    if (basis.cols() == 1) return basis.col(0);
    const CMatrix reduced = basis.adjoint() * op * basis;
    return (basis * smallest_eigenpair(reduced).vector).normalized();
}

} // namespace

RVector position_potential(const Scenario& s) { return potential(s.group->position(), s.metric_q); }

RVector momentum_potential(const Scenario& s) { return potential(s.group->momentum(), s.metric_p); }

CMatrix momentum_multiplier(const GroupSpec& g, const RVector& v) {
    const Space& X = g.position();
    if (v.size() != g.momentum().size()) throw std::invalid_argument("multiplier does not match the dual");
    const Index n = X.size();
    if (fully_periodic(g)) {
        // Translation invariant: D[x,y] = k(x - y) with k = F* v / sqrt|X|.
        const CVector kernel = g.fourier_adjoint(v.cast<Complex>()) / std::sqrt(static_cast<Real>(n));
        CMatrix d(n, n);
        for (Index y = 0; y < n; ++y)
            for (Index x = 0; x < n; ++x) d(x, y) = kernel(*X.subtract(x, y));
        return d;
    }
    const CMatrix F = g.fourier_matrix();
    return F.adjoint() * v.cast<Complex>().asDiagonal() * F;
}

CMatrix build_hamiltonian(const Scenario& s, Real t) {
    if (!(t > 0.0)) throw std::invalid_argument("t must be positive");
    if (s.metric_q.infinite() || s.metric_p.infinite())
        throw std::invalid_argument("infinite exponents go through the constrained solver");
    s.validate();
    CMatrix h = momentum_multiplier(*s.group, momentum_potential(s));
    h.diagonal() += t * position_potential(s).cast<Complex>();
    return h;
}

HamiltonianOperator::HamiltonianOperator(Scenario s, Index dense_limit) : s_(std::move(s)) {
    if (s_.metric_q.infinite() || s_.metric_p.infinite())
        throw std::invalid_argument("infinite exponents go through the constrained solver");
    s_.validate();
    potential_ = position_potential(s_);
    dual_potential_ = momentum_potential(s_);
    dense_ = potential_.size() <= dense_limit;
    if (dense_) kinetic_ = momentum_multiplier(*s_.group, dual_potential_);
}

CMatrix HamiltonianOperator::matrix(Real t) const {
    CMatrix h = dense_ ? kinetic_ : momentum_multiplier(*s_.group, dual_potential_);
    h.diagonal() += t * potential_.cast<Complex>();
    return h;
}

void HamiltonianOperator::apply_kinetic(const CVector& in, CVector& out) const {
    if (dense_) {
        out.noalias() = kinetic_ * in;
        return;
    }
    const CVector f = s_.group->fourier(in);
    out = s_.group->fourier_adjoint(dual_potential_.cast<Complex>().cwiseProduct(f));
}

void HamiltonianOperator::apply(Real t, const CVector& in, CVector& out) const {
    apply_kinetic(in, out);
    out += t * potential_.cast<Complex>().cwiseProduct(in);
}

EigenPair HamiltonianOperator::ground_state(Real t, const CVector* start) const {
    if (!(t > 0.0)) throw std::invalid_argument("t must be positive");
    if (dense_) return phasespace::ground_state(matrix(t));
    LanczosOptions opts;
    opts.tolerance = 1e-10;
    return smallest_eigenpair([&](const CVector& in, CVector& out) { apply(t, in, out); }, dim(), opts, start);
}

EigenPair ground_state(const CMatrix& h) {
    EigenPair e = smallest_eigenpair(h);
    const Real scale = std::max<Real>(operator_norm_bound(h), 1e-300);
    if (e.residual > 1e-9 * scale) throw ConvergenceError("ground state residual above tolerance", 1);
    return e;
}

Real UncertaintyRegion::envelope(Real delta) const {
    Real best = -kInfinity;
    for (const auto& p : points)
        if (p.error.empty()) best = std::max(best, p.energy - p.t * delta);
    return best;
}

std::vector<Real> UncertaintyRegion::envelope_at_points() const {
    std::vector<Real> out;
    out.reserve(points.size());
    for (const auto& p : points)
        out.push_back(p.error.empty() ? envelope(scenario.metric_q.power(p.dq)) : std::nan(""));
    return out;
}

std::vector<Real> log_grid(Real lo, Real hi, Index count) {
    if (count < 1 || !(lo > 0.0) || !(hi >= lo)) throw std::invalid_argument("bad logarithmic grid");
    std::vector<Real> grid(static_cast<std::size_t>(count));
    if (count == 1) {
        grid[0] = lo;
        return grid;
    }
    const Real a = std::log(lo), b = std::log(hi);
    for (Index i = 0; i < count; ++i)
        grid[static_cast<std::size_t>(i)] = std::exp(a + (b - a) * static_cast<Real>(i) / static_cast<Real>(count - 1));
    grid.back() = hi;
    return grid;
}

CenteredMoments centered_moments(const Scenario& s, const CVector& psi) {
    const auto sq = spread(position_marginal(s.group, psi), s.metric_q, false);
    const auto sp = spread(momentum_marginal(s.group, psi), s.metric_p, false);
    CenteredMoments c;
    c.dq = sq.value;
    c.dp = sp.value;
    c.center_q = sq.center;
    c.center_p = sp.center;
    c.state = psi;
    try {
        const Index minus_p = *s.group->momentum().negate(sp.center);
        c.state = weyl(*s.group, {sq.center, minus_p}, psi);
    } catch (const RangeError&) {
        // Truncated model: the shift would leave the stored range; keep psi.
    } catch (const std::bad_optional_access&) {
    }
    return c;
}

namespace {

UncertaintyPoint make_point(const Scenario& s, Real t, Real energy, const CVector& psi) {
    UncertaintyPoint pt;
    pt.t = t;
    pt.energy = energy;
    const auto c = centered_moments(s, psi);
    pt.dq = c.dq;
    pt.dp = c.dp;
    pt.state = c.state;
    return pt;
}

void record_degeneracy(const HamiltonianOperator& h, Real t, UncertaintyPoint& pt) {
    if (!h.dense()) return;
    RVector ev;
    CMatrix evec;
    hermitian_eigensystem(h.matrix(t), ev, evec);
    const CMatrix basis = lowest_eigenspace(ev, evec, 1e-10 * std::max<Real>(1.0, std::abs(ev(0))));
    if (basis.cols() < 2) return;
    const CMatrix dq = h.potential().cast<Complex>().asDiagonal();
    const CMatrix dp = h.matrix(t) - t * dq;
    const auto lq = centered_moments(h.scenario(), minimize_in_span(basis, dq));
    const auto lp = centered_moments(h.scenario(), minimize_in_span(basis, dp));
    pt.segment_low_q = std::make_pair(lq.dq, lq.dp);
    pt.segment_low_p = std::make_pair(lp.dq, lp.dp);
}

} // namespace

UncertaintyRegion sweep_tradeoff(const HamiltonianOperator& h, const std::vector<Real>& t_grid) {
    if (t_grid.empty()) throw std::invalid_argument("empty t grid");
    std::vector<Real> grid = t_grid;
    std::sort(grid.begin(), grid.end());
    UncertaintyRegion region{h.scenario(), {}};
    CVector previous;
    for (Real t : grid) {
        try {
            const EigenPair e = h.ground_state(t, previous.size() ? &previous : nullptr);
            UncertaintyPoint pt = make_point(h.scenario(), t, e.value, e.vector);
            pt.gap = e.gap;
            pt.degenerate = e.gap < 1e-10 * std::max<Real>(1.0, std::abs(e.value));
            if (pt.degenerate) record_degeneracy(h, t, pt);
            previous = e.vector;
            region.points.push_back(std::move(pt));
        } catch (const std::exception& ex) {
            UncertaintyPoint pt;
            pt.t = t;
            pt.energy = std::nan("");
            pt.dq = pt.dp = std::nan("");
            pt.error = ex.what();
            region.points.push_back(std::move(pt));
        }
    }
    return region;
}

UncertaintyRegion sweep_tradeoff(const Scenario& s, const std::vector<Real>& t_grid) {
    return sweep_tradeoff(HamiltonianOperator(s), t_grid);
}

std::pair<UncertaintyPoint, UncertaintyPoint> tradeoff_endpoints(const Scenario& s) {
    s.validate();
    const CMatrix dp = momentum_multiplier(*s.group, momentum_potential(s));
    const RVector u = position_potential(s);
    const CMatrix dq = u.cast<Complex>().asDiagonal();

    RVector ev;
    CMatrix evec;
    hermitian_eigensystem(dp, ev, evec);
    const Real tol_p = 1e-9 * std::max<Real>(1.0, ev.cwiseAbs().maxCoeff());
    const CVector low_p = minimize_in_span(lowest_eigenspace(ev, evec, tol_p), dq);
    UncertaintyPoint a = make_point(s, 0.0, ev(0), low_p);

    // D_Q is diagonal: its ground space is spanned by the points of minimal potential.
    const Real umin = u.minCoeff();
    const Real tol_q = 1e-9 * std::max<Real>(1.0, u.cwiseAbs().maxCoeff());
    std::vector<Index> idx;
    for (Index x = 0; x < u.size(); ++x)
        if (u(x) - umin <= tol_q) idx.push_back(x);
    CMatrix basis = CMatrix::Zero(u.size(), static_cast<Index>(idx.size()));
    for (std::size_t k = 0; k < idx.size(); ++k) basis(idx[k], static_cast<Index>(k)) = 1.0;
    const CVector low_q = minimize_in_span(basis, dp);
    UncertaintyPoint b = make_point(s, kInfinity, umin, low_q);
    return {a, b};
}

ConstrainedResult constrained_ground_state(const Scenario& s, HardSide side, Real radius) {
    const GroupSpec& g = *s.group;
    const bool hard_q = side == HardSide::Q;
    const Space& hard = hard_q ? g.position() : g.momentum();
    const MetricSpec& hm = hard_q ? s.metric_q : s.metric_p;
    const MetricSpec& soft = hard_q ? s.metric_p : s.metric_q;
    if (soft.infinite()) throw std::invalid_argument("both exponents infinite: the constant is infinite");
    s.validate();

    std::vector<Index> keep;
    for (Index x = 0; x < hard.size(); ++x)
        if (hm.distance(hard, x, hard.zero()) <= radius * (1.0 + 1e-12)) keep.push_back(x);
    if (keep.empty()) throw std::invalid_argument("constraint leaves no points");

    // Soft-side moment operator in the hard side's basis.
    CMatrix op;
    if (hard_q) {
        op = momentum_multiplier(g, momentum_potential(s));
    } else {
        const CMatrix F = g.fourier_matrix();
        op = F * position_potential(s).cast<Complex>().asDiagonal() * F.adjoint();
    }
    const auto k = static_cast<Index>(keep.size());
    CMatrix reduced(k, k);
    for (Index j = 0; j < k; ++j)
        for (Index i = 0; i < k; ++i) reduced(i, j) = op(keep[static_cast<std::size_t>(i)], keep[static_cast<std::size_t>(j)]);
    const EigenPair e = ground_state(reduced);

    CVector full = CVector::Zero(hard.size());
    for (Index i = 0; i < k; ++i) full(keep[static_cast<std::size_t>(i)]) = e.vector(i);
    ConstrainedResult r;
    r.energy = e.value;
    r.support = k;
    r.state = hard_q ? full : g.fourier_adjoint(full);
    return r;
}

std::vector<RadiusPoint> constrained_sweep(const Scenario& s, HardSide side, const std::vector<Real>& radii) {
    std::vector<RadiusPoint> out;
    for (Real r : radii) {
        const auto res = constrained_ground_state(s, side, r);
        const auto c = centered_moments(s, res.state);
        out.push_back({r, res.energy, c.dq, c.dp});
    }
    return out;
}

} // namespace phasespace
