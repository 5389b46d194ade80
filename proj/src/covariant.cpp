#include "phasespace/covariant.hpp"

#include <cmath>

namespace phasespace {

CovariantObservable::CovariantObservable(DensityOperator generator) : generator_(std::move(generator)) {
    const GroupSpec& g = *group();
    if (!g.is_square()) throw std::invalid_argument("covariant observables need |X| = |X^|");
    const Index n = g.position().size();
    const Real w = g.phase_weight();
    position_effects_.assign(static_cast<std::size_t>(n), CMatrix::Zero(n, n));
    momentum_effects_.assign(static_cast<std::size_t>(n), CMatrix::Zero(n, n));
    CMatrix total = CMatrix::Zero(n, n);
    for (Index q = 0; q < n; ++q)
        for (Index p = 0; p < n; ++p) {
            const CMatrix e = w * translate_operator(g, {q, p}, generator_.matrix());
            position_effects_[static_cast<std::size_t>(q)] += e;
            // alpha_(q,p) moves momentum by -p: this effect detects momentum -p.
            momentum_effects_[static_cast<std::size_t>(*g.momentum().negate(p))] += e;
            total += e;
        }
    normalization_error_ = (total - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
    if (normalization_error_ > 1e-10) throw std::runtime_error("covariant observable is not normalized");
}

CMatrix CovariantObservable::effect(PhasePoint xi) const {
    return group()->phase_weight() * translate_operator(*group(), xi, generator_.matrix());
}

CMatrix CovariantObservable::operator()(const PhaseSpaceFunction& f) const { return convolve(f, generator_.matrix()); }

Distribution CovariantObservable::noise(Side side) const {
    const DensityOperator beta(group(), reflect_operator(*group(), generator_.matrix()));
    return side == Side::Position ? position_marginal(beta) : momentum_marginal(beta);
}

CovariantObservable povm_from_generator(const DensityOperator& rho_f) { return CovariantObservable(rho_f); }

namespace {

RVector expectations(const std::vector<CMatrix>& effects, const CMatrix& rho) {
    RVector m(static_cast<Index>(effects.size()));
    for (std::size_t k = 0; k < effects.size(); ++k) m(static_cast<Index>(k)) = (rho.cwiseProduct(effects[k].transpose())).sum().real();
    return m;
}

} // namespace

OutputMarginals output_marginals(const CovariantObservable& f, const DensityOperator& rho) {
    return {Distribution(f.group(), Side::Position, expectations(f.position_effects(), rho.matrix())),
            Distribution(f.group(), Side::Momentum, expectations(f.momentum_effects(), rho.matrix()))};
}

OutputMarginals output_marginals_by_convolution(const CovariantObservable& f, const DensityOperator& rho) {
    return {convolve_distributions(position_marginal(rho), f.noise(Side::Position)),
            convolve_distributions(momentum_marginal(rho), f.noise(Side::Momentum))};
}

Real marginal_error(const CovariantObservable& f, const DensityOperator& rho, Side side, const MetricSpec& m) {
    const auto out = output_marginals(f, rho);
    if (side == Side::Position) return transport_distance(out.q, position_marginal(rho), m);
    return transport_distance(out.p, momentum_marginal(rho), m);
}

UncertaintyDetail measurement_uncertainty_detail(const CovariantObservable& f, Side side, const MetricSpec& m) {
    const GroupSpec& g = *f.group();
    const Index n = g.position().size();
    UncertaintyDetail d;
    d.sup_over_points = -1.0;
    for (Index k = 0; k < n; ++k) {
        const CVector v = side == Side::Position ? position_eigenstate(g, k) : momentum_eigenstate(g, k);
        const Real e = marginal_error(f, DensityOperator::pure(f.group(), v), side, m);
        if (e > d.sup_over_points) {
            d.sup_over_points = e;
            d.worst_point = k;
        }
    }
    d.noise_spread = spread(f.noise(side), m, false).value;
    return d;
}

Real measurement_uncertainty(const CovariantObservable& f, Side side, const MetricSpec& m) {
    const auto d = measurement_uncertainty_detail(f, side, m);
    if (std::abs(d.sup_over_points - d.noise_spread) > 1e-9)
        throw std::invalid_argument("observable is not centered for this metric");
    return d.sup_over_points;
}

CovariantObservable center_observable(const CovariantObservable& f, const MetricSpec& m_q, const MetricSpec& m_p) {
    const GroupSpec& g = *f.group();
    const Index cq = spread(f.noise(Side::Position), m_q, false).center;
    const Index cp = spread(f.noise(Side::Momentum), m_p, false).center;
    if (cq == g.position().zero() && cp == g.momentum().zero()) return f;
    const PhasePoint shift{cq, *g.momentum().negate(cp)};
    return CovariantObservable(DensityOperator(f.group(), translate_operator(g, shift, f.generator().matrix())));
}

namespace {

MurSample evaluate(const Scenario& s, const DensityOperator& rho_f) {
    const auto f = center_observable(povm_from_generator(rho_f), s.metric_q, s.metric_p);
    const auto q = measurement_uncertainty_detail(f, Side::Position, s.metric_q);
    const auto p = measurement_uncertainty_detail(f, Side::Momentum, s.metric_p);
    return {q.sup_over_points, p.sup_over_points, q.noise_spread, p.noise_spread};
}

Real deviation_of(const MurSample& m) { return std::max(std::abs(m.mur_q - m.pur_q), std::abs(m.mur_p - m.pur_p)); }

} // namespace

MurReport mur_equals_pur_check(const Scenario& s, Index samples, std::uint64_t seed) {
    s.validate();
    const Index n = s.group->position().size();
    Rng rng(seed);
    MurReport r;
    r.samples = samples;
    for (Index k = 0; k < samples; ++k) {
        const Index rank = 1 + k % n;
        const MurSample m = evaluate(s, DensityOperator(s.group, random_density_matrix(n, rng, rank)));
        r.max_abs_deviation = std::max(r.max_abs_deviation, deviation_of(m));
        r.points.push_back(m);
    }
    r.maximally_mixed = evaluate(s, DensityOperator::maximally_mixed(s.group));
    r.point_generator = evaluate(s, DensityOperator::pure(s.group, position_eigenstate(*s.group, s.group->position().zero())));
    r.max_abs_deviation = std::max({r.max_abs_deviation, deviation_of(r.maximally_mixed), deviation_of(r.point_generator)});
    r.pass = r.max_abs_deviation <= 1e-8;
    return r;
}

} // namespace phasespace
