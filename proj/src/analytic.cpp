#include "phasespace/analytic.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>



namespace phasespace {

Real qudit_radius(Index n) {
    if (n < 2) throw std::invalid_argument("qudit dimension must be at least 2");
    return 1.0 - 1.0 / static_cast<Real>(n);
}

Real qudit_boundary_residual(Index n, Real dp, Real dq) {
    const Real d = qudit_radius(n);
    constexpr Real slack = 1e-12;
    if (dp < -slack || dq < -slack || dp > d + slack || dq > d + slack)
        throw std::invalid_argument("uncertainties outside [0, 1 - 1/n]");
    return (dp - d) * (dp - d) + (dq - d) * (dq - d) + (2.0 - 4.0 / static_cast<Real>(n)) * dp * dq - d * d;
}

Real bessel_j(Real nu, Real x) {
    if (nu < -0.5) throw std::invalid_argument("Bessel order below -1/2");
    if (x < 0.0) throw std::invalid_argument("negative Bessel argument");
    using LD = long double;
    const LD half = static_cast<LD>(x) / 2.0L;
    const LD lnu = nu;
    if (x == 0.0) return nu == 0.0 ? 1.0 : (nu > 0.0 ? 0.0 : kInfinity);
    LD term = std::pow(half, lnu) / std::tgamma(lnu + 1.0L);
    LD sum = term;
    const LD h2 = half * half;
    for (int k = 1; k < 500; ++k) {
        term *= -h2 / (static_cast<LD>(k) * (static_cast<LD>(k) + lnu));
        sum += term;
        if (std::abs(term) < 1e-22L * std::abs(sum) && static_cast<LD>(k) > half) break;
    }
    return static_cast<Real>(sum);
}

Real bessel_first_zero(Real nu) {
    if (nu < -0.5) throw std::invalid_argument("Bessel order below -1/2");
    // j_{nu,1} > nu for nu >= 0; J_nu is positive just right of 0.
    Real lo = nu > 0.0 ? nu : 1e-3;
    const Real limit = nu + 2.0 * std::cbrt(std::max(nu, 1.0)) + 4.0;
    const Real step = 0.05;
    Real hi = lo + step;
    Real flo = bessel_j(nu, lo);
    long steps = 0;
    while (bessel_j(nu, hi) * flo > 0.0) {
        lo = hi;
        flo = bessel_j(nu, lo);
        hi += step;
        if (hi > limit) throw ConvergenceError("no sign change bracketing the first Bessel zero", steps);
        ++steps;
    }
    for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
        const Real mid = 0.5 * (lo + hi);
        if (bessel_j(nu, mid) * flo > 0.0) lo = mid; else hi = mid;
    }
    return 0.5 * (lo + hi);
}

Real c_inf2(Index n) {
    if (n < 1) throw std::invalid_argument("dimension must be positive");
    return bessel_first_zero(0.5 * static_cast<Real>(n) - 1.0);
}

Real c_inf2_expansion(Index n) {
    const Real x = static_cast<Real>(n);
    return x / 2.0 + 1.47292 * std::cbrt(x) - 1.0;
}

namespace {

// Sturm-sequence bisection for the smallest eigenvalue of a symmetric
// tridiagonal matrix (diagonal d, off-diagonal e).
Real lowest_tridiagonal_eigenvalue(const RVector& d, const RVector& e) {
    const Index m = d.size();
    Real lo = kInfinity, hi = -kInfinity;
    for (Index i = 0; i < m; ++i) {
        const Real r = (i > 0 ? std::abs(e(i - 1)) : 0.0) + (i + 1 < m ? std::abs(e(i)) : 0.0);
        lo = std::min(lo, d(i) - r);
        hi = std::max(hi, d(i) + r);
    }
    auto below = [&](Real x) {  // number of eigenvalues < x
        Index count = 0;
        Real q = d(0) - x;
        for (Index i = 0;;) {
            if (q < 0.0) ++count;
            if (++i == m) break;
            if (q == 0.0) q = std::numeric_limits<Real>::min();
            q = d(i) - x - e(i - 1) * e(i - 1) / q;
        }
        return count;
    };
    const Real scale = std::max(std::abs(lo), std::abs(hi));
    for (int it = 0; it < 200 && hi - lo > 4.0 * std::numeric_limits<Real>::epsilon() * scale; ++it) {
        const Real mid = 0.5 * (lo + hi);
        if (below(mid) >= 1) hi = mid; else lo = mid;
    }
    return 0.5 * (lo + hi);
}

// Finite-volume discretization of -(r^(n-1) u')' + lambda r^(n-3) u = E r^(n-1) u
// with phi = r^((n-1)/2) u, nodes r_i = i h, u(radius) = 0.
Real radial_energy(Index n, Real lambda, Index grid) {
    const Real h = 1.0 / static_cast<Real>(grid);
    const Real dn = static_cast<Real>(n);
    // node 0 is pinned when the centrifugal term is singular there
    const bool pin_origin = lambda > 0.0 && n <= 2;
    const Index first = pin_origin ? 1 : 0;
    const Index m = grid - first;
    RVector mass(m), diag(m), off(std::max<Index>(m - 1, 0));
    auto flux = [&](Index i) {  // coefficient between nodes i and i + 1
        return std::pow((static_cast<Real>(i) + 0.5) * h, dn - 1.0) / h;
    };
    for (Index k = 0; k < m; ++k) {
        const Index i = k + first;
        const Real r = static_cast<Real>(i) * h;
        const Real rp = r + 0.5 * h, rm = std::max(r - 0.5 * h, 0.0);
        mass(k) = (std::pow(rp, dn) - std::pow(rm, dn)) / dn;
        diag(k) = flux(i) + (i > 0 ? flux(i - 1) : 0.0);
        if (lambda > 0.0 && i > 0) diag(k) += lambda * mass(k) / (r * r);
        if (k + 1 < m) off(k) = -flux(i);
    }
    const RVector s = mass.cwiseSqrt().cwiseInverse();
    const RVector d = diag.cwiseProduct(s).cwiseProduct(s);
    RVector e(off.size());
    for (Index k = 0; k < off.size(); ++k) e(k) = off(k) * s(k) * s(k + 1);
    return lowest_tridiagonal_eigenvalue(d, e);
}

} // namespace

RadialResult radial_solver(Index n, Real lambda, Index grid, Real radius, Real rel_tol) {
    if (n < 1) throw std::invalid_argument("dimension must be positive");
    if (lambda < 0.0) throw std::invalid_argument("angular eigenvalue must be nonnegative");
    if (grid < 8) throw std::invalid_argument("radial grid too small");
    if (!(radius > 0.0)) throw std::invalid_argument("radius must be positive");
    RadialResult r;
    r.grid = grid;
    const Real scale = 1.0 / (radius * radius);
    r.energy = scale * radial_energy(n, lambda, grid);
    r.coarse_energy = scale * radial_energy(n, lambda, grid / 2);
    if (std::abs(r.energy - r.coarse_energy) > rel_tol * std::abs(r.energy))
        throw ConvergenceError("radial energy not converged between grid refinements", grid);
    return r;
}

ScalingRelation scaling_exponents(Real alpha, Real beta, Real a, Real b) {
    if (std::isinf(alpha) || std::isinf(beta))
        throw UnsupportedBranch("infinite exponents have no scaling constant; use the constrained solver");
    if (alpha < 1.0 || beta < 1.0) throw std::invalid_argument("exponents must be at least 1");
    if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("coefficients must be positive");
    const Real s = alpha + beta;
    return {std::pow(a, beta / s) * std::pow(b, alpha / s), s * std::pow(alpha, -alpha / s) * std::pow(beta, -beta / s)};
}

Real constant_from_energy(Real alpha, Real beta, Real energy) {
    const Real k = scaling_exponents(alpha, beta).constant;
    return std::pow(energy / k, (alpha + beta) / (alpha * beta));
}

std::pair<Real, Real> meanfield_curve(Real alpha, Real beta, Real t) {
    return {std::pow(0.5 * (1.0 + std::cos(t)), alpha), std::pow(0.5 * (1.0 + std::sin(t)), beta)};
}

namespace {

template <class F>
Real golden_minimum(F f, Real lo, Real hi, Real tol = 1e-13) {
    const Real g = 0.5 * (std::sqrt(5.0) - 1.0);
    Real a = lo, b = hi;
    Real c = b - g * (b - a), d = a + g * (b - a);
    Real fc = f(c), fd = f(d);
    while (b - a > tol * (1.0 + std::abs(a) + std::abs(b))) {
        if (fc < fd) {
            b = d; d = c; fd = fc;
            c = b - g * (b - a); fc = f(c);
        } else {
            a = c; c = d; fc = fd;
            d = a + g * (b - a); fd = f(d);
        }
    }
    return std::min(fc, fd);
}

template <class F>
Real grid_then_golden(F f, Real lo, Real hi, int samples) {
    Real best = kInfinity;
    int arg = 0;
    const Real h = (hi - lo) / samples;
    for (int i = 0; i <= samples; ++i) {
        const Real v = f(lo + i * h);
        if (v < best) { best = v; arg = i; }
    }
    const Real a = std::max(lo, lo + (arg - 1) * h), b = std::min(hi, lo + (arg + 1) * h);
    return std::min(best, golden_minimum(f, a, b));
}

} // namespace

Real meanfield_energy(Real alpha, Real beta, Real t) {
    auto f = [&](Real s) {
        const auto [x, y] = meanfield_curve(alpha, beta, s);
        return x + t * y;
    };
    return grid_then_golden(f, kPi, 1.5 * kPi, 2000);
}

StringComparison qubit_string_comparison(Index n, Real alpha, Real beta, const std::vector<Real>& t_grid) {
    if (n < 1 || n > 12) throw std::invalid_argument("qubit strings limited to 1 <= n <= 12");
    const Scenario s{make_bits(n), make_metric(MetricKind::Hamming, alpha), make_metric(MetricKind::Hamming, beta)};
    StringComparison c{n, sweep_tradeoff(s, t_grid), {}, 0.0};
    for (const auto& p : c.region.points) {
        if (!p.error.empty()) throw std::runtime_error("string sweep failed at t = " + std::to_string(p.t) + ": " + p.error);
        const Real e = meanfield_energy(beta, alpha, p.t);
        c.limit_energy.push_back(e);
        c.max_gap = std::max(c.max_gap, std::abs(p.energy - e));
    }
    return c;
}

Real meanfield_limit_constant(Real alpha, Real beta) {
    if (std::isinf(alpha) || std::isinf(beta)) throw UnsupportedBranch("mean-field limit needs finite exponents");
    const Real s = alpha + beta;
    return s * std::pow(2.0, -alpha * beta / s) * std::pow(alpha, -alpha / s) * std::pow(beta, -beta / s);
}

Real meanfield_limit_numeric(Real alpha, Real beta) {
    auto f = [&](Real lv) {
        const Real v = std::exp(lv);
        return std::pow(v, alpha / 2.0) + std::pow(4.0 * v, -beta / 2.0);
    };
    return grid_then_golden(f, -30.0, 30.0, 6000);
}

Real number_angle_residual(Real dq, Real dp) { return dq * dq + dp * dp * (4.0 - dp * dp) - 1.0; }

Real number_angle_family_residual(Real dq, Real dp) { return dp * dp * (4.0 - dp * dp) - 4.0 * (1.0 - dq) * (1.0 - dq); }

namespace {

Real line_ground_energy(Real alpha, Real beta, Index points, Real half_width) {
    const Scenario s{make_line(points, half_width), make_metric(MetricKind::Euclidean, alpha),
                     make_metric(MetricKind::Euclidean, beta)};
    return HamiltonianOperator(s).ground_state(1.0).value;
}

} // namespace

ConstantEntry uncertainty_constant(Real alpha, Real beta, Index n) {
    if (n < 1) throw std::invalid_argument("dimension must be positive");
    if (alpha < 1.0 || beta < 1.0) throw std::invalid_argument("exponents must be at least 1");
    ConstantEntry e{alpha, beta, n, 0.0, "closed-form", 0.0, ""};
    const bool ia = std::isinf(alpha), ib = std::isinf(beta);
    if (ia && ib) {
        e.value = kInfinity;
        e.note = "no state has bounded support in both position and momentum";
    } else if (ia || ib) {
        if ((ia ? beta : alpha) != 2.0) throw UnsupportedBranch("only (inf, 2) and (2, inf) are implemented for infinite exponents");
        e.value = c_inf2(n);
        e.error = 1e-10;
        e.note = "first zero of J_{n/2-1}";
    } else if (alpha == 2.0 && beta == 2.0) {
        e.value = 0.5 * static_cast<Real>(n);
        e.note = "separable quadratic Hamiltonian, E = n";
    } else if (n == 1) {
        const Real fine = constant_from_energy(alpha, beta, line_ground_energy(alpha, beta, 1024, 16.0));
        const Real coarse = constant_from_energy(alpha, beta, line_ground_energy(alpha, beta, 512, 12.0));
        e.value = fine;
        e.method = "numeric";
        e.error = std::abs(fine - coarse);
        e.note = "ground energy of |P|^beta + |Q|^alpha on a line grid";
    } else {
        throw UnsupportedBranch("no method for this (alpha, beta, n)");
    }
    return e;
}

void ConstantTable::add(const ConstantEntry& e) {
    for (auto& x : entries_)
        if (x.alpha == e.alpha && x.beta == e.beta && x.n == e.n) {
            x = e;
            return;
        }
    entries_.push_back(e);
}

const ConstantEntry* ConstantTable::find(Real alpha, Real beta, Index n) const {
    for (const auto& x : entries_)
        if (x.alpha == alpha && x.beta == beta && x.n == n) return &x;
    return nullptr;
}

namespace {

std::string number(Real v) {
    if (std::isinf(v)) return "inf";
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

} // namespace

std::string ConstantTable::to_csv() const {
    std::ostringstream os;
    os << "alpha,beta,n,value,method,error,note\n";
    for (const auto& e : entries_)
        os << number(e.alpha) << ',' << number(e.beta) << ',' << e.n << ',' << number(e.value) << ',' << e.method << ','
           << number(e.error) << ",\"" << e.note << "\"\n";
    return os.str();
}

} // namespace phasespace
