#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "phasespace/lca.hpp"

using namespace phasespace;

namespace {

CVector random_vector(Index n, std::mt19937_64& rng) {
    std::normal_distribution<Real> g;
    CVector v(n);
    for (Index i = 0; i < n; ++i) v(i) = Complex(g(rng), g(rng));
    return v.normalized();
}

Complex I(0.0, 1.0);

} // namespace

TEST_CASE("character values") {
    auto c2 = make_cyclic(2);
    CHECK(std::abs(character(*c2, 1, 1) - Complex(-1.0, 0.0)) < 1e-15);
    auto c4 = make_cyclic(4);
    CHECK(std::abs(character(*c4, 1, 1) - I) < 1e-15);
    for (auto g : {make_cyclic(5), make_line(16, 3.0), make_circle(8), make_integers(3, 9)})
        for (Index x = 0; x < g->position().size(); ++x)
            CHECK(std::abs(character(*g, g->momentum().zero(), x) - 1.0) < 1e-15);
}

TEST_CASE("character bilinearity") {
    for (auto g : {make_cyclic(6), make_product({make_cyclic(2), make_cyclic(3)}), make_line(8, 2.0), make_circle(6)}) {
        const Space& X = g->position();
        const Space& P = g->momentum();
        for (Index p = 0; p < P.size(); ++p)
            for (Index x1 = 0; x1 < X.size(); ++x1)
                for (Index x2 = 0; x2 < X.size(); ++x2) {
                    const Index s = *X.add(x1, x2);
                    CHECK(std::abs(g->character(p, s) - g->character(p, x1) * g->character(p, x2)) < 1e-12);
                }
        for (Index p1 = 0; p1 < P.size(); ++p1)
            for (Index p2 = 0; p2 < P.size(); ++p2)
                for (Index x = 0; x < X.size(); ++x) {
                    const Index s = *P.add(p1, p2);
                    CHECK(std::abs(g->character(s, x) - g->character(p1, x) * g->character(p2, x)) < 1e-12);
                }
    }
}

TEST_CASE("fourier") {
    auto c2 = make_cyclic(2);
    CVector e0 = position_eigenstate(*c2, 0);
    CVector f = fourier(*c2, e0);
    CHECK(std::abs(f(0) - 1.0 / std::sqrt(2.0)) < 1e-15);
    CHECK(std::abs(f(1) - 1.0 / std::sqrt(2.0)) < 1e-15);

    auto c5 = make_cyclic(5);
    CVector flat = fourier(*c5, position_eigenstate(*c5, 0));
    CHECK((flat.cwiseAbs().array() - 1.0 / std::sqrt(5.0)).abs().maxCoeff() < 1e-15);

    std::mt19937_64 rng(3);
    for (auto g : {make_cyclic(7), make_line(32, 4.0), make_circle(12), make_integers(4),
                   make_product({make_cyclic(3), make_line(8, 2.0)}), make_bits(3)}) {
        const CMatrix F = g->fourier_matrix();
        CHECK((F.adjoint() * F - CMatrix::Identity(F.cols(), F.cols())).cwiseAbs().maxCoeff() < 1e-12);
        CHECK((F * F.adjoint() - CMatrix::Identity(F.rows(), F.rows())).cwiseAbs().maxCoeff() < 1e-12);
        const CVector psi = random_vector(g->position().size(), rng);
        CHECK(std::abs(fourier(*g, psi).norm() - 1.0) < 1e-12);
        CHECK((fourier_inverse(*g, fourier(*g, psi)) - psi).norm() < 1e-12);
    }
}

TEST_CASE("fourier of the integers is an isometry onto its range") {
    auto g = make_integers(5, 16);
    const CMatrix F = g->fourier_matrix();
    CHECK(F.rows() == 16);
    CHECK((F.adjoint() * F - CMatrix::Identity(11, 11)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("weyl operator examples") {
    auto c2 = make_cyclic(2);
    CVector v(2);
    v << Complex(2.0, 0.0), Complex(3.0, 1.0);
    CHECK((weyl(*c2, {0, 0}, v) - v).norm() == 0.0);
    CVector swapped(2), flipped(2);
    swapped << v(1), v(0);
    flipped << v(0), -v(1);
    CHECK((weyl(*c2, {1, 0}, v) - swapped).norm() < 1e-15);
    CHECK((weyl(*c2, {0, 1}, v) - flipped).norm() < 1e-15);
}

TEST_CASE("weyl projective law and commutation phase") {
    for (Index d = 2; d <= 5; ++d) {
        auto g = make_cyclic(d);
        for (Index q1 = 0; q1 < d; ++q1)
            for (Index p1 = 0; p1 < d; ++p1)
                for (Index q2 = 0; q2 < d; ++q2)
                    for (Index p2 = 0; p2 < d; ++p2) {
                        const CMatrix w1 = weyl_matrix(*g, {q1, p1});
                        const CMatrix w2 = weyl_matrix(*g, {q2, p2});
                        const PhasePoint sum = phase_add(*g, {q1, p1}, {q2, p2});
                        const CMatrix w12 = weyl_matrix(*g, sum);
                        // With (W psi)(x) = <p|x> psi(x+q) the cocycle is <p2|q1>.
                        CHECK((w1 * w2 - g->character(p2, q1) * w12).cwiseAbs().maxCoeff() < 1e-12);
                        const Complex phase = g->character(p2, q1) * std::conj(g->character(p1, q2));
                        CHECK((w1 * w2 - phase * (w2 * w1)).cwiseAbs().maxCoeff() < 1e-12);
                    }
        // W(q,p)* = <p|q> W(-q,-p)
        for (Index q = 0; q < d; ++q)
            for (Index p = 0; p < d; ++p) {
                const CMatrix w = weyl_matrix(*g, {q, p});
                const CMatrix wneg = weyl_matrix(*g, phase_negate(*g, {q, p}));
                CHECK((w.adjoint() - g->character(p, q) * wneg).cwiseAbs().maxCoeff() < 1e-12);
                CHECK((w.adjoint() * w - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff() < 1e-12);
            }
    }
}

TEST_CASE("weyl vector and matrix forms agree on products") {
    std::mt19937_64 rng(5);
    auto g = make_product({make_cyclic(2), make_cyclic(3)});
    const CVector psi = random_vector(6, rng);
    for (Index q = 0; q < 6; ++q)
        for (Index p = 0; p < 6; ++p)
            CHECK((weyl(*g, {q, p}, psi) - weyl_matrix(*g, {q, p}) * psi).norm() < 1e-14);
}

TEST_CASE("parity") {
    auto c3 = make_cyclic(3);
    CHECK((parity(*c3, position_eigenstate(*c3, 1)) - position_eigenstate(*c3, 2)).norm() == 0.0);
    std::mt19937_64 rng(7);
    const CVector psi = random_vector(3, rng);
    CHECK((parity(*c3, parity(*c3, psi)) - psi).norm() == 0.0);
    CVector even(3);
    even << 1.0, 2.0, 2.0;
    CHECK((parity(*c3, even) - even).norm() == 0.0);

    for (Index d = 2; d <= 5; ++d) {
        auto g = make_cyclic(d);
        const CMatrix pi = parity_matrix(*g);
        for (Index q = 0; q < d; ++q)
            for (Index p = 0; p < d; ++p) {
                const CMatrix lhs = pi * weyl_matrix(*g, {q, p}) * pi;
                const CMatrix rhs = weyl_matrix(*g, phase_negate(*g, {q, p}));
                Index r, c;
                rhs.cwiseAbs().maxCoeff(&r, &c);
                const Complex ratio = lhs(r, c) / rhs(r, c);
                CHECK(std::abs(std::abs(ratio) - 1.0) < 1e-12);
                CHECK((lhs - ratio * rhs).cwiseAbs().maxCoeff() < 1e-12);
            }
    }
}

TEST_CASE("translate_operator") {
    std::mt19937_64 rng(11);
    auto g = make_cyclic(4);
    const CVector v = random_vector(4, rng);
    const CMatrix a = v * v.adjoint();
    CHECK((translate_operator(*g, {0, 0}, a) - a).cwiseAbs().maxCoeff() == 0.0);
    for (Index q = 0; q < 4; ++q)
        for (Index p = 0; p < 4; ++p) {
            const CMatrix w = weyl_matrix(*g, {q, p});
            const CMatrix t = translate_operator(*g, {q, p}, a);
            CHECK((t - w.adjoint() * a * w).cwiseAbs().maxCoeff() < 1e-12);
            CHECK(std::abs(t.trace() - a.trace()) < 1e-12);
            CHECK((t - t.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
        }

    // Regression value of the shift convention: alpha_(q,0)(|0><0|) = |q><q|.
    auto c3 = make_cyclic(3);
    CMatrix p0 = CMatrix::Zero(3, 3);
    p0(0, 0) = 1.0;
    for (Index q = 0; q < 3; ++q) {
        CMatrix expected = CMatrix::Zero(3, 3);
        expected(q, q) = 1.0;
        CHECK((translate_operator(*c3, {q, 0}, p0) - expected).cwiseAbs().maxCoeff() < 1e-15);
    }
}

TEST_CASE("truncated models fail loudly on range exits") {
    auto z = make_integers(2);
    CVector psi = CVector::Zero(5);
    psi(2) = 1.0;
    CHECK_THROWS_AS(weyl(*z, {z->position().index_of({1}).value(), 0}, psi), RangeError);
    CHECK_NOTHROW(weyl(*z, {z->position().zero(), 3}, psi));
    CHECK_THROWS_AS(phase_add(*z, {4, 0}, {4, 0}), RangeError);
}

TEST_CASE("group parsing") {
    CHECK(parse_group("cyclic:5")->position().size() == 5);
    CHECK(parse_group("product:[cyclic:2, cyclic:3]")->position().size() == 6);
    CHECK(parse_group("zline:{64,6}")->position().size() == 64);
    CHECK(parse_group("circle:{16}")->momentum().size() == 16);
    CHECK(parse_group("zint:{3}")->position().size() == 7);
    CHECK(parse_group("zint:{3,16}")->momentum().size() == 16);
    CHECK(parse_group("bits:{3}")->position().size() == 8);
    CHECK(parse_group("product:[bits:{2},zline:{8,2}]")->position().rank() == 3);
    CHECK_THROWS_AS(parse_group("cyclic"), std::invalid_argument);
    CHECK_THROWS_AS(parse_group("cyclic:x"), std::invalid_argument);
    CHECK_THROWS_AS(parse_group("torus:4"), std::invalid_argument);
    CHECK_THROWS_AS(parse_group("product:[cyclic:2"), std::invalid_argument);
    CHECK_THROWS_AS(parse_group("zint:{3,4}"), std::invalid_argument);
}

TEST_CASE("haar convention: dx dp |X| = 1") {
    for (auto g : {make_cyclic(5), make_line(32, 4.0), make_circle(12), make_integers(4), make_bits(3)}) {
        CHECK(std::abs(g->phase_weight() * static_cast<Real>(g->position().size()) - 1.0) < 1e-12);
    }
}
