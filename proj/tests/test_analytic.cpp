#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "phasespace/analytic.hpp"
#include "phasespace/groundstate.hpp"

using namespace phasespace;

namespace {

// J_n(x) = (1/pi) int_0^pi cos(n s - x sin s) ds, composite Simpson.
Real bessel_integral(int n, Real x) {
    const int m = 4000;
    const Real h = kPi / m;
    Real acc = 0.0;
    for (int i = 0; i <= m; ++i) {
        const Real s = i * h;
        const Real w = (i == 0 || i == m) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        acc += w * std::cos(n * s - x * std::sin(s));
    }
    return acc * h / 3.0 / kPi;
}

} // namespace

TEST_CASE("qudit radius and boundary residual") {
    CHECK(qudit_radius(2) == 0.5);
    CHECK(qudit_radius(3) == doctest::Approx(2.0 / 3.0));
    for (Index n = 2; n < 50; ++n) CHECK(qudit_radius(n + 1) > qudit_radius(n));
    CHECK_THROWS_AS(qudit_radius(1), std::invalid_argument);
    for (Index n : {2, 3, 7}) {
        const Real d = qudit_radius(n);
        CHECK(std::abs(qudit_boundary_residual(n, 0.0, d)) < 1e-15);
        CHECK(std::abs(qudit_boundary_residual(n, d, 0.0)) < 1e-15);
        CHECK(qudit_boundary_residual(n, 0.0, 0.0) == doctest::Approx(d * d));
        CHECK_THROWS_AS(qudit_boundary_residual(n, d + 0.1, 0.0), std::invalid_argument);
        CHECK_THROWS_AS(qudit_boundary_residual(n, -0.1, 0.0), std::invalid_argument);
    }
}

TEST_CASE("qudit ground states lie on the ellipse") {
    for (Index n : {2, 3, 4, 5}) {
        const Scenario s{make_cyclic(n), make_metric(MetricKind::Discrete, 1.0), make_metric(MetricKind::Discrete, 1.0)};
        const auto region = sweep_tradeoff(s, log_grid(1e-2, 1e2, 25));
        const CVector phi = CVector::Constant(n, 1.0 / std::sqrt(static_cast<Real>(n)));
        CVector zero = CVector::Zero(n);
        zero(0) = 1.0;
        // orthonormal basis of span{|0>, |phi>}
        const CVector e2 = (phi - zero * zero.dot(phi)).normalized();
        for (const auto& p : region.points) {
            CHECK(std::abs(qudit_boundary_residual(n, p.dp, p.dq)) < 1e-8);
            const Real w = std::norm(zero.dot(p.state)) + std::norm(e2.dot(p.state));
            CHECK(w > 1.0 - 1e-10);
        }
    }
}

TEST_CASE("Bessel function and zeros") {
    for (int n : {0, 1, 3, 10})
        for (Real x : {0.5, 2.0, 7.5, 20.0}) CHECK(std::abs(bessel_j(n, x) - bessel_integral(n, x)) < 1e-10);
    // J_{1/2}(x) = sqrt(2/(pi x)) sin x, J_{-1/2}(x) = sqrt(2/(pi x)) cos x
    for (Real x : {0.3, 1.0, 4.0, 12.0}) {
        CHECK(std::abs(bessel_j(0.5, x) - std::sqrt(2.0 / (kPi * x)) * std::sin(x)) < 1e-12);
        CHECK(std::abs(bessel_j(-0.5, x) - std::sqrt(2.0 / (kPi * x)) * std::cos(x)) < 1e-12);
    }
    CHECK(std::abs(bessel_first_zero(-0.5) - kPi / 2.0) < 1e-10);
    CHECK(std::abs(bessel_first_zero(0.5) - kPi) < 1e-10);
    CHECK(std::abs(bessel_first_zero(0.0) - 2.404825557695773) < 1e-10);
    CHECK(std::abs(bessel_first_zero(1.0) - 3.831705970207512) < 1e-10);
    CHECK_THROWS_AS(bessel_first_zero(-1.0), std::invalid_argument);
    // Growth of the first zero: j_{nu,1} - nu - 1.85576 nu^(1/3) shrinks relative to nu^(1/3).
    Real prev = kInfinity;
    for (Real nu : {5.0, 10.0, 20.0}) {
        const Real rel = (bessel_first_zero(nu) - nu - 1.85576 * std::cbrt(nu)) / std::cbrt(nu);
        CHECK(std::abs(rel) < prev);
        prev = std::abs(rel);
    }
}

TEST_CASE("c_inf2") {
    CHECK(std::abs(c_inf2(1) - kPi / 2.0) < 1e-10);
    CHECK(std::abs(c_inf2(2) - 2.404825557695773) < 1e-10);
    CHECK(std::abs(c_inf2(3) - kPi) < 1e-10);
    Real prev = kInfinity;
    for (Index n : {10, 20, 50}) {
        const Real r = 2.0 * c_inf2(n) / static_cast<Real>(n);
        CHECK(r > 1.0);
        CHECK(r < prev);
        prev = r;
    }
}

TEST_CASE("radial solver") {
    CHECK(std::abs(radial_solver(1).energy - kPi * kPi / 4.0) < 1e-6);
    CHECK(std::abs(radial_solver(3).energy - kPi * kPi) < 1e-5);
    const Real j01 = 2.404825557695773;
    CHECK(std::abs(radial_solver(2).energy - j01 * j01) < 1e-5);
    for (Index n : {1, 2, 3, 4, 6}) CHECK(std::abs(std::sqrt(radial_solver(n, 0.0, 8192).energy) - c_inf2(n)) < 1e-4);
    // Angular excitation raises the energy: lambda = l(l+n-2); n = 3, l = 1 gives j_{3/2,1}^2.
    const Real j32 = bessel_first_zero(1.5);
    CHECK(std::abs(radial_solver(3, 2.0, 8192).energy - j32 * j32) < 1e-3);
    CHECK(radial_solver(3, 2.0).energy > radial_solver(3).energy);
    CHECK(std::abs(radial_solver(1, 0.0, 4096, 2.0).energy - kPi * kPi / 16.0) < 1e-6);
    CHECK_THROWS_AS(radial_solver(3, 0.0, 16, 1.0, 1e-6), ConvergenceError);
}

TEST_CASE("scaling relations") {
    const auto s = scaling_exponents(2.0, 2.0);
    CHECK(s.constant == doctest::Approx(2.0));
    CHECK(s.prefactor == 1.0);
    CHECK(constant_from_energy(2.0, 2.0, 3.0) == doctest::Approx(1.5));
    CHECK(scaling_exponents(1.0, 3.0, 2.0, 5.0).prefactor == doctest::Approx(std::pow(2.0, 0.75) * std::pow(5.0, 0.25)));
    CHECK_THROWS_AS(scaling_exponents(kInfinity, 2.0), UnsupportedBranch);

    // Dilation and homogeneity on the line with |Q| + P^2, whose E(1,1) is the
    // first zero of Ai': E(a, b) = a^(2/3) b^(1/3) E.
    const Scenario line{make_line(512, 12.0), make_metric(MetricKind::Euclidean, 1.0), make_metric(MetricKind::Euclidean, 2.0)};
    const HamiltonianOperator h(line);
    // H = D_P + t D_Q, i.e. a = t on the alpha side, b = 1.
    const Real e1 = h.ground_state(1.0).value;
    const Real e4 = h.ground_state(4.0).value;
    // the |x| cusp limits the grid to O(h^2) accuracy
    CHECK(e1 == doctest::Approx(1.018792971647471).epsilon(1e-3));
    CHECK(e4 / e1 == doctest::Approx(scaling_exponents(1.0, 2.0, 4.0, 1.0).prefactor).epsilon(1e-3));
}

TEST_CASE("uncertainty constants") {
    CHECK(uncertainty_constant(2.0, 2.0, 3).value == 1.5);
    CHECK(std::abs(uncertainty_constant(kInfinity, 2.0, 2).value - 2.404825557695773) < 1e-10);
    CHECK(std::abs(uncertainty_constant(2.0, kInfinity, 1).value - kPi / 2.0) < 1e-10);
    CHECK(std::isinf(uncertainty_constant(kInfinity, kInfinity, 1).value));
    const auto num = uncertainty_constant(1.0, 2.0, 1);
    CHECK(num.method == "numeric");
    CHECK(num.error < 1e-4);
    CHECK(num.value == doctest::Approx(constant_from_energy(1.0, 2.0, 1.018792971647471)).epsilon(1e-4));
    CHECK_THROWS_AS(uncertainty_constant(1.0, 3.0, 2), UnsupportedBranch);
    CHECK_THROWS_AS(uncertainty_constant(kInfinity, 1.0, 1), UnsupportedBranch);

    ConstantTable t;
    t.add(uncertainty_constant(2.0, 2.0, 1));
    t.add(uncertainty_constant(kInfinity, 2.0, 2));
    t.add(uncertainty_constant(2.0, 2.0, 1));
    CHECK(t.entries().size() == 2);
    CHECK(t.find(2.0, 2.0, 1)->value == 0.5);
    CHECK(t.find(1.0, 1.0, 1) == nullptr);
    const std::string csv = t.to_csv();
    CHECK(csv.rfind("alpha,beta,n,value,method,error,note\n", 0) == 0);
    CHECK(csv.find("inf,2,2,2.404825557") != std::string::npos);
}

TEST_CASE("numerical line constant matches the textbook value") {
    // c_{2,2}(1) through the numeric path: E = 1 on the line, K = 2.
    const Scenario s{make_line(512, 12.0), make_metric(MetricKind::Euclidean, 2.0), make_metric(MetricKind::Euclidean, 2.0)};
    CHECK(constant_from_energy(2.0, 2.0, HamiltonianOperator(s).ground_state(1.0).value) == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("mean-field curve and limit") {
    const auto [x0, y0] = meanfield_curve(1.0, 2.0, 0.0);
    CHECK(x0 == 1.0);
    CHECK(y0 == doctest::Approx(0.25));
    const auto [x1, y1] = meanfield_curve(3.0, 1.0, kPi / 2.0);
    CHECK(x1 == doctest::Approx(0.125));
    CHECK(y1 == doctest::Approx(1.0));
    const auto [x2, y2] = meanfield_curve(1.0, 1.0, kPi / 4.0);
    CHECK(x2 == doctest::Approx(0.5 * (1.0 + std::sqrt(0.5))));
    CHECK(y2 == doctest::Approx(x2));

    // Bloch-disk oracle: the minimum of x + t y over all one-qubit states.
    for (Real t : {0.3, 1.0, 2.5}) {
        Real best = kInfinity;
        for (int i = 0; i <= 400; ++i)
            for (int j = 0; j <= 400; ++j) {
                const Real bx = -1.0 + i / 200.0, bz = -1.0 + j / 200.0;
                if (bx * bx + bz * bz > 1.0) continue;
                best = std::min(best, std::pow(0.5 * (1.0 + bx), 2.0) + t * std::pow(0.5 * (1.0 + bz), 1.0));
            }
        CHECK(meanfield_energy(2.0, 1.0, t) <= best + 1e-12);
        CHECK(meanfield_energy(2.0, 1.0, t) > best - 1e-3);
    }

    CHECK(meanfield_limit_constant(2.0, 2.0) == doctest::Approx(1.0));
    CHECK(meanfield_limit_constant(1.0, 1.0) == doctest::Approx(std::sqrt(2.0)));
    for (auto [a, b] : {std::pair{1.0, 1.0}, {2.0, 2.0}, {1.0, 3.0}, {2.5, 1.5}})
        CHECK(std::abs(meanfield_limit_numeric(a, b) - meanfield_limit_constant(a, b)) < 1e-10);
    CHECK_THROWS_AS(meanfield_limit_constant(kInfinity, 2.0), UnsupportedBranch);

    // Combining the limit with the scaling constant gives 2 c / n -> 1: at a = n^(-alpha/2),
    // b = n^(-beta/2) the limit energy equals K (c n^-1 ... )^(alpha beta/(alpha+beta)) with c = n/2.
    for (auto [a, b] : {std::pair{1.0, 1.0}, {2.0, 2.0}, {1.0, 3.0}}) {
        const Real k = scaling_exponents(a, b).constant;
        CHECK(k * std::pow(0.5, a * b / (a + b)) == doctest::Approx(meanfield_limit_constant(a, b)));
    }
}

TEST_CASE("number and angle") {
    CHECK(number_angle_residual(1.0, 0.0) == 0.0);
    const Real dp0 = std::sqrt(2.0 - std::sqrt(3.0));
    CHECK(std::abs(dp0 - 0.51764) < 1e-5);
    CHECK(std::abs(number_angle_residual(0.0, dp0)) < 1e-14);
    CHECK(number_angle_family_residual(1.0, 0.0) == 0.0);

    const Scenario s{make_integers(40, 81), make_metric(MetricKind::Discrete, 1.0), make_metric(MetricKind::Chordal, 2.0)};
    const auto region = sweep_tradeoff(s, log_grid(0.5, 100.0, 12));
    for (const auto& p : region.points) {
        CHECK(p.error.empty());
        CHECK(std::abs(number_angle_family_residual(p.dq, p.dp)) < 1e-8);
    }
}

TEST_CASE("qubit strings approach the mean-field curve") {
    const auto grid = log_grid(0.1, 10.0, 15);
    for (Index n : {1, 2, 4}) {
        // alpha = beta = 1: H is a sum of one-site terms, so E_n equals the limit.
        CHECK(qubit_string_comparison(n, 1.0, 1.0, grid).max_gap < 1e-12);
    }
    Real prev = kInfinity;
    for (Index n = 2; n <= 6; ++n) {
        const Real gap = qubit_string_comparison(n, 2.0, 2.0, grid).max_gap;
        CHECK(gap < prev);
        prev = gap;
    }
    CHECK_THROWS_AS(qubit_string_comparison(13, 1.0, 1.0, grid), std::invalid_argument);
}
