#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "phasespace/covariant.hpp"

using namespace phasespace;

namespace {

MetricSpec discrete() { return make_metric(MetricKind::Discrete, 1.0); }

Real maxabs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

DensityOperator point(const Group& g, Index x) { return DensityOperator::pure(g, position_eigenstate(*g, x)); }

} // namespace

TEST_CASE("effects of simple generators") {
    auto c2 = make_cyclic(2);
    const CovariantObservable mixed(DensityOperator::maximally_mixed(c2));
    for (Index q = 0; q < 2; ++q)
        for (Index p = 0; p < 2; ++p) CHECK(maxabs(mixed.effect({q, p}) - CMatrix::Identity(2, 2) / 4.0) < 1e-15);
    CHECK(mixed.normalization_error() < 1e-14);

    auto c3 = make_cyclic(3);
    const CovariantObservable sharp(point(c3, 0));
    for (Index x = 0; x < 3; ++x) {
        CMatrix proj = CMatrix::Zero(3, 3);
        proj(x, x) = 1.0;
        CHECK(maxabs(sharp.position_effects()[static_cast<std::size_t>(x)] - proj) < 1e-14);
    }
    CHECK_THROWS_AS(CovariantObservable(DensityOperator::maximally_mixed(make_integers(2, 3))), std::invalid_argument);
}

TEST_CASE("direct and convolution marginals agree") {
    Rng rng(11);
    auto g = make_cyclic(5);
    for (int k = 0; k < 50; ++k) {
        const CovariantObservable f(DensityOperator(g, random_density_matrix(5, rng)));
        const DensityOperator rho(g, random_density_matrix(5, rng));
        const auto a = output_marginals(f, rho);
        const auto b = output_marginals_by_convolution(f, rho);
        CHECK((a.q.masses() - b.q.masses()).cwiseAbs().maxCoeff() < 1e-12);
        CHECK((a.p.masses() - b.p.masses()).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("measurement uncertainty examples") {
    for (Index d : {2, 3, 5}) {
        auto g = make_cyclic(d);
        const Real delta = 1.0 - 1.0 / static_cast<Real>(d);
        const CovariantObservable sharp(point(g, 0));
        CHECK(measurement_uncertainty(sharp, Side::Position, discrete()) < 1e-14);
        CHECK(measurement_uncertainty(sharp, Side::Momentum, discrete()) == doctest::Approx(delta).epsilon(1e-12));
        const CovariantObservable mixed(DensityOperator::maximally_mixed(g));
        CHECK(measurement_uncertainty(mixed, Side::Position, discrete()) == doctest::Approx(delta).epsilon(1e-12));
        CHECK(measurement_uncertainty(mixed, Side::Momentum, discrete()) == doctest::Approx(delta).epsilon(1e-12));
    }
}

TEST_CASE("sup over point states equals the noise spread for centered observables") {
    Rng rng(12);
    auto g = make_cyclic(4);
    const auto cyc = make_metric(MetricKind::CyclicAbsolute, 1.0);
    for (int k = 0; k < 20; ++k) {
        const auto f = center_observable(CovariantObservable(DensityOperator(g, random_density_matrix(4, rng))), cyc, cyc);
        for (Side s : {Side::Position, Side::Momentum}) {
            const auto d = measurement_uncertainty_detail(f, s, cyc);
            CHECK(std::abs(d.sup_over_points - d.noise_spread) < 1e-9);
        }
    }
}

TEST_CASE("centering") {
    auto g = make_cyclic(5);
    // Generator |2><2| has noise concentrated at -2 = 3.
    const CovariantObservable off(point(g, 2));
    CHECK(off.noise(Side::Position).mass(3) == doctest::Approx(1.0));
    const auto d = measurement_uncertainty_detail(off, Side::Position, discrete());
    CHECK(d.sup_over_points == doctest::Approx(1.0));
    CHECK(d.noise_spread < 1e-14);
    CHECK_THROWS_AS(measurement_uncertainty(off, Side::Position, discrete()), std::invalid_argument);
    const auto c = center_observable(off, discrete(), discrete());
    CHECK(c.noise(Side::Position).mass(0) == doctest::Approx(1.0));
    CHECK(measurement_uncertainty(c, Side::Position, discrete()) < 1e-14);

    const CovariantObservable centered(point(g, 0));
    CHECK(maxabs(center_observable(centered, discrete(), discrete()).generator().matrix() - centered.generator().matrix()) == 0.0);
}

TEST_CASE("covariance of the observable") {
    Rng rng(13);
    auto g = make_cyclic(3);
    const CovariantObservable f(DensityOperator(g, random_density_matrix(3, rng)));
    std::normal_distribution<Real> n;
    auto h = PhaseSpaceFunction::zero(g);
    for (Index i = 0; i < h.values.size(); ++i) h.values.data()[i] = n(rng);
    for (Index q = 0; q < 3; ++q)
        for (Index p = 0; p < 3; ++p) {
            // (alpha_xi h)(eta) = h(eta - xi)
            auto shifted = PhaseSpaceFunction::zero(g);
            for (Index a = 0; a < 3; ++a)
                for (Index b = 0; b < 3; ++b) shifted.values((a + q) % 3, (b + p) % 3) = h.values(a, b);
            CHECK(maxabs(translate_operator(*g, {q, p}, f(h)) - f(shifted)) < 1e-13);
        }
}

TEST_CASE("output errors never exceed the worst case") {
    Rng rng(14);
    auto g = make_cyclic(4);
    const auto cyc = make_metric(MetricKind::CyclicAbsolute, 2.0);
    for (int k = 0; k < 10; ++k) {
        const auto f = center_observable(CovariantObservable(DensityOperator(g, random_density_matrix(4, rng, 2))), cyc, cyc);
        const Real uq = measurement_uncertainty(f, Side::Position, cyc);
        const Real up = measurement_uncertainty(f, Side::Momentum, cyc);
        for (int j = 0; j < 10; ++j) {
            const DensityOperator rho(g, random_density_matrix(4, rng));
            CHECK(marginal_error(f, rho, Side::Position, cyc) <= uq + 1e-9);
            CHECK(marginal_error(f, rho, Side::Momentum, cyc) <= up + 1e-9);
        }
    }
}

TEST_CASE("measurement and preparation uncertainty coincide") {
    const Scenario s = {make_cyclic(3), discrete(), discrete()};
    const auto r = mur_equals_pur_check(s, 100, 5);
    CHECK(r.pass);
    CHECK(r.max_abs_deviation < 1e-9);
    CHECK(r.points.size() == 100);
    CHECK(r.maximally_mixed.mur_q == doctest::Approx(2.0 / 3.0));
    CHECK(r.maximally_mixed.mur_p == doctest::Approx(2.0 / 3.0));
    CHECK(r.point_generator.mur_q < 1e-14);
    CHECK(r.point_generator.mur_p == doctest::Approx(2.0 / 3.0));

    const Scenario c = {make_cyclic(5), make_metric(MetricKind::CyclicAbsolute, 1.0), make_metric(MetricKind::CyclicAbsolute, 2.0)};
    CHECK(mur_equals_pur_check(c, 30, 6).pass);
}
