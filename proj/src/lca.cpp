#include "phasespace/lca.hpp"

#include <cmath>
#include <string>

namespace phasespace {

namespace {

Index checked(std::optional<Index> idx, const char* what) {
    if (!idx) throw RangeError(std::string(what) + " leaves the stored range of a truncated model");
    return *idx;
}

// Table of x -> x+q; throws if any shift leaves the stored range.
std::vector<Index> shift_table(const Space& s, Index q) {
    std::vector<Index> table(static_cast<std::size_t>(s.size()));
    for (Index x = 0; x < s.size(); ++x) table[static_cast<std::size_t>(x)] = checked(s.add(x, q), "Weyl shift");
    return table;
}

} // namespace

PhasePoint phase_origin(const GroupSpec& g) { return {g.position().zero(), g.momentum().zero()}; }

PhasePoint phase_add(const GroupSpec& g, PhasePoint a, PhasePoint b) {
    return {checked(g.position().add(a.q, b.q), "position sum"), checked(g.momentum().add(a.p, b.p), "momentum sum")};
}

PhasePoint phase_negate(const GroupSpec& g, PhasePoint a) {
    return {checked(g.position().negate(a.q), "position inverse"), checked(g.momentum().negate(a.p), "momentum inverse")};
}

CVector weyl(const GroupSpec& g, PhasePoint xi, const CVector& psi) {
    const Space& s = g.position();
    if (psi.size() != s.size()) throw std::invalid_argument("state does not match the group");
    const auto table = shift_table(s, xi.q);
    CVector out(s.size());
    for (Index x = 0; x < s.size(); ++x) out(x) = g.character(xi.p, x) * psi(table[static_cast<std::size_t>(x)]);
    return out;
}

CMatrix weyl_matrix(const GroupSpec& g, PhasePoint xi) {
    const Space& s = g.position();
    const auto table = shift_table(s, xi.q);
    CMatrix w = CMatrix::Zero(s.size(), s.size());
    for (Index x = 0; x < s.size(); ++x) w(x, table[static_cast<std::size_t>(x)]) = g.character(xi.p, x);
    return w;
}

CVector parity(const GroupSpec& g, const CVector& psi) {
    const Space& s = g.position();
    if (psi.size() != s.size()) throw std::invalid_argument("state does not match the group");
    CVector out(s.size());
    for (Index x = 0; x < s.size(); ++x) out(x) = psi(checked(s.negate(x), "parity"));
    return out;
}

CMatrix parity_matrix(const GroupSpec& g) {
    const Space& s = g.position();
    CMatrix pi = CMatrix::Zero(s.size(), s.size());
    for (Index x = 0; x < s.size(); ++x) pi(x, checked(s.negate(x), "parity")) = 1.0;
    return pi;
}

CMatrix translate_operator(const GroupSpec& g, PhasePoint xi, const CMatrix& a) {
    // (W* A W)_{xy} = conj(<p|x-q>) <p|y-q> A_{x-q, y-q}
    const Space& s = g.position();
    if (a.rows() != s.size() || a.cols() != s.size()) throw std::invalid_argument("operator does not match the group");
    std::vector<Index> back(static_cast<std::size_t>(s.size()));
    for (Index x = 0; x < s.size(); ++x) back[static_cast<std::size_t>(x)] = checked(s.subtract(x, xi.q), "Weyl shift");
    CVector chi(s.size());
    for (Index x = 0; x < s.size(); ++x) chi(x) = g.character(xi.p, back[static_cast<std::size_t>(x)]);
    CMatrix out(s.size(), s.size());
    for (Index y = 0; y < s.size(); ++y) {
        const Index yb = back[static_cast<std::size_t>(y)];
        for (Index x = 0; x < s.size(); ++x)
            out(x, y) = std::conj(chi(x)) * chi(y) * a(back[static_cast<std::size_t>(x)], yb);
    }
    return out;
}

CMatrix reflect_operator(const GroupSpec& g, const CMatrix& a) {
    const Space& s = g.position();
    std::vector<Index> neg(static_cast<std::size_t>(s.size()));
    for (Index x = 0; x < s.size(); ++x) neg[static_cast<std::size_t>(x)] = checked(s.negate(x), "parity");
    CMatrix out(s.size(), s.size());
    for (Index y = 0; y < s.size(); ++y)
        for (Index x = 0; x < s.size(); ++x) out(x, y) = a(neg[static_cast<std::size_t>(x)], neg[static_cast<std::size_t>(y)]);
    return out;
}

CVector position_eigenstate(const GroupSpec& g, Index x) {
    CVector e = CVector::Zero(g.position().size());
    e(x) = 1.0;
    return e;
}

CVector momentum_eigenstate(const GroupSpec& g, Index p) {
    CVector e = CVector::Zero(g.momentum().size());
    e(p) = 1.0;
    return g.fourier_adjoint(e);
}

CVector wavefunction_values(const GroupSpec& g, Side side, const CVector& coefficients) {
    return coefficients / std::sqrt(g.space(side).haar());
}

} // namespace phasespace
