#include "phasespace/metric.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "phasespace/transport.hpp"

namespace phasespace {

namespace {

// Distance contribution of one axis, accumulated according to the metric kind.
struct Accumulator {
    MetricKind kind;
    Real sum = 0.0;
    Real count = 0.0;
    Index axes = 0;

    void add(const Axis& ax, Real diff) {
        ++axes;
        switch (kind) {
        case MetricKind::Discrete:
            if (std::abs(diff) > 1e-9 * ax.spacing) sum = 1.0;
            break;
        case MetricKind::Hamming:
            if (std::abs(diff) > 1e-9 * ax.spacing) count += 1.0;
            break;
        case MetricKind::Absolute:
        case MetricKind::CyclicAbsolute:
        case MetricKind::Arc:
            sum += std::abs(diff);
            break;
        case MetricKind::Chordal: {
            const Real c = 2.0 * std::sin(0.5 * diff);
            sum += c * c;
            break;
        }
        case MetricKind::Euclidean:
            sum += diff * diff;
            break;
        }
    }

    Real value() const {
        switch (kind) {
        case MetricKind::Hamming:
            return axes ? count / static_cast<Real>(axes) : 0.0;
        case MetricKind::Chordal:
        case MetricKind::Euclidean:
            return std::sqrt(sum);
        default:
            return sum;
        }
    }
};

} // namespace

Real MetricSpec::distance(const Space& space, Index i, Index j) const {
    Accumulator acc{kind};
    for (Index a = 0; a < space.rank(); ++a) {
        const Axis& ax = space.axes()[static_cast<std::size_t>(a)];
        acc.add(ax, ax.difference(space.axis_index(i, a), space.axis_index(j, a)));
    }
    return acc.value();
}

Real MetricSpec::from_differences(const Space& space, const std::vector<Real>& diffs) const {
    if (static_cast<Index>(diffs.size()) != space.rank()) throw std::invalid_argument("difference vector has the wrong rank");
    Accumulator acc{kind};
    for (std::size_t a = 0; a < diffs.size(); ++a) acc.add(space.axes()[a], diffs[a]);
    return acc.value();
}

Real MetricSpec::power(Real d) const {
    if (infinite()) throw std::domain_error("d^alpha is undefined for alpha = inf");
    if (exponent == 1.0) return d;
    if (exponent == 2.0) return d * d;
    return std::pow(d, exponent);
}

void MetricSpec::validate(const Space& space) const {
    if (!(exponent >= 1.0)) throw std::invalid_argument("error exponent must be >= 1");
    for (const auto& ax : space.axes()) {
        switch (kind) {
        case MetricKind::CyclicAbsolute:
            if (!ax.periodic) throw std::invalid_argument("cyclic-abs needs periodic axes");
            break;
        case MetricKind::Arc:
        case MetricKind::Chordal:
            if (!ax.periodic || std::abs(ax.period() - 2.0 * kPi) > 1e-9)
                throw std::invalid_argument(metric_name(kind) + " metric needs circle axes of period 2 pi");
            break;
        default:
            break;
        }
    }
}

MetricSpec make_metric(MetricKind kind, Real exponent) {
    if (!(exponent >= 1.0)) throw std::invalid_argument("error exponent must be >= 1");
    return MetricSpec{kind, exponent};
}

MetricSpec parse_metric(std::string_view name, Real exponent) {
    static const std::pair<std::string_view, MetricKind> names[] = {
        {"discrete", MetricKind::Discrete}, {"abs", MetricKind::Absolute},
        {"cyclic-abs", MetricKind::CyclicAbsolute}, {"arc", MetricKind::Arc},
        {"chordal", MetricKind::Chordal}, {"hamming", MetricKind::Hamming},
        {"euclidean", MetricKind::Euclidean}};
    for (const auto& [n, k] : names)
        if (n == name) return make_metric(k, exponent);
    throw std::invalid_argument("unknown metric: " + std::string(name));
}

MetricSpec parse_metric(std::string_view name, std::string_view exponent) {
    if (exponent == "inf") return parse_metric(name, kInfinity);
    std::string token(exponent);
    std::size_t used = 0;
    Real v = 0.0;
    try {
        v = std::stod(token, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("bad exponent: " + token);
    }
    if (used != token.size()) throw std::invalid_argument("bad exponent: " + token);
    return parse_metric(name, v);
}

std::string metric_name(MetricKind kind) {
    switch (kind) {
    case MetricKind::Discrete: return "discrete";
    case MetricKind::Absolute: return "abs";
    case MetricKind::CyclicAbsolute: return "cyclic-abs";
    case MetricKind::Arc: return "arc";
    case MetricKind::Chordal: return "chordal";
    case MetricKind::Hamming: return "hamming";
    case MetricKind::Euclidean: return "euclidean";
    }
    return "unknown";
}

std::string format_exponent(Real exponent) {
    if (exponent == kInfinity) return "inf";
    std::ostringstream os;
    os << exponent;
    return os.str();
}

// ---------------------------------------------------------------------------

Distribution::Distribution(Group group, Side side, RVector masses)
    : group_(std::move(group)), side_(side), masses_(std::move(masses)) {
    if (!group_) throw std::invalid_argument("distribution needs a group");
    if (masses_.size() != space().size()) throw std::invalid_argument("distribution does not match the group size");
    if (!masses_.allFinite()) throw std::invalid_argument("distribution has non-finite masses");
    if (masses_.minCoeff() < -1e-10) throw std::invalid_argument("distribution has negative masses");
    const Real total = masses_.sum();
    if (std::abs(total - 1.0) > 1e-10) throw std::invalid_argument("distribution is not normalized");
    masses_ = masses_.cwiseMax(0.0);
    masses_ /= masses_.sum();
}

Distribution Distribution::point(Group group, Side side, Index x) {
    RVector m = RVector::Zero(group->space(side).size());
    m(x) = 1.0;
    return Distribution(std::move(group), side, std::move(m));
}

Distribution Distribution::uniform(Group group, Side side) {
    const Index n = group->space(side).size();
    return Distribution(std::move(group), side, RVector::Constant(n, 1.0 / static_cast<Real>(n)));
}

Real deviation(const Distribution& mu, Index x, const MetricSpec& m) {
    const Space& s = mu.space();
    Real acc = 0.0;
    if (m.infinite()) {
        for (Index y = 0; y < mu.size(); ++y)
            if (mu.mass(y) > kSupportCutoff) acc = std::max(acc, m.distance(s, x, y));
        return acc;
    }
    for (Index y = 0; y < mu.size(); ++y)
        if (mu.mass(y) > 0.0) acc += mu.mass(y) * m.power(m.distance(s, x, y));
    return m.exponent == 1.0 ? acc : std::pow(acc, 1.0 / m.exponent);
}

Real deviation_at(const Distribution& mu, const std::vector<Real>& center, const MetricSpec& m) {
    const Space& s = mu.space();
    if (static_cast<Index>(center.size()) != s.rank()) throw std::invalid_argument("center has the wrong rank");
    std::vector<Real> diffs(center.size());
    Real acc = 0.0;
    for (Index y = 0; y < mu.size(); ++y) {
        if (!(mu.mass(y) > (m.infinite() ? kSupportCutoff : 0.0))) continue;
        for (std::size_t a = 0; a < center.size(); ++a) {
            const Axis& ax = s.axes()[a];
            diffs[a] = ax.wrap_coordinate(ax.coordinate(s.axis_index(y, static_cast<Index>(a))) - center[a]);
        }
        const Real d = m.from_differences(s, diffs);
        if (m.infinite()) acc = std::max(acc, d);
        else acc += mu.mass(y) * m.power(d);
    }
    if (m.infinite() || m.exponent == 1.0) return acc;
    return std::pow(acc, 1.0 / m.exponent);
}

SpreadResult spread(const Distribution& mu, const MetricSpec& m, bool refine) {
    const Space& s = mu.space();
    SpreadResult r;
    r.grid_value = kInfinity;
    for (Index x = 0; x < mu.size(); ++x) {
        const Real v = deviation(mu, x, m);
        if (v < r.grid_value) {
            r.grid_value = v;
            r.center = x;
        }
    }
    r.value = r.grid_value;
    r.refined.resize(static_cast<std::size_t>(s.rank()));
    for (Index a = 0; a < s.rank(); ++a)
        r.refined[static_cast<std::size_t>(a)] = s.axes()[static_cast<std::size_t>(a)].coordinate(s.axis_index(r.center, a));

    if (!refine || s.rank() != 1 || !s.continuous() || m.kind == MetricKind::Discrete || m.kind == MetricKind::Hamming) return r;

    // Golden-section search on [c - h, c + h].
    const Real h = s.axes()[0].spacing;
    const Real c = r.refined[0];
    auto f = [&](Real x) { return deviation_at(mu, {x}, m); };
    const Real g = 0.5 * (std::sqrt(5.0) - 1.0);
    Real lo = c - h, hi = c + h;
    Real x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
    Real f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 80 && hi - lo > 1e-12 * h; ++it) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = f(x2);
        }
    }
    const Real xm = 0.5 * (lo + hi);
    const Real fm = f(xm);
    if (fm < r.value) {
        r.value = fm;
        r.refined[0] = xm;
    }
    return r;
}

Distribution shift_distribution(const Distribution& mu, Index a) {
    const Space& s = mu.space();
    RVector out = RVector::Zero(mu.size());
    for (Index x = 0; x < mu.size(); ++x) {
        if (mu.mass(x) == 0.0) continue;
        const auto y = s.add(x, a);
        if (!y) throw RangeError("shifted distribution leaves the stored range");
        out(*y) += mu.mass(x);
    }
    return Distribution(mu.group(), mu.side(), std::move(out));
}

Distribution convolve_distributions(const Distribution& mu, const Distribution& nu) {
    if (mu.group() != nu.group() || mu.side() != nu.side())
        throw std::invalid_argument("convolution needs distributions on the same group");
    const Space& s = mu.space();
    RVector out = RVector::Zero(mu.size());
    Real dropped = 0.0;
    for (Index x = 0; x < mu.size(); ++x) {
        if (mu.mass(x) == 0.0) continue;
        for (Index y = 0; y < nu.size(); ++y) {
            const Real w = mu.mass(x) * nu.mass(y);
            if (w == 0.0) continue;
            const auto z = s.add(x, y);
            if (z) out(*z) += w;
            else dropped += w;
        }
    }
    if (dropped > 1e-10) throw RangeError("convolution pushes mass out of the stored range");
    out /= out.sum();
    return Distribution(mu.group(), mu.side(), std::move(out));
}

Real transport_distance(const Distribution& nu, const Distribution& mu, const MetricSpec& m) {
    if (nu.group() != mu.group() || nu.side() != mu.side())
        throw std::invalid_argument("transport needs distributions on the same group");
    const Space& s = nu.space();
    const Real cutoff = m.infinite() ? kSupportCutoff : 0.0;
    std::vector<Index> rows, cols;
    for (Index i = 0; i < nu.size(); ++i)
        if (nu.mass(i) > cutoff) rows.push_back(i);
    for (Index j = 0; j < mu.size(); ++j)
        if (mu.mass(j) > cutoff) cols.push_back(j);

    const auto nr = static_cast<Index>(rows.size());
    const auto nc = static_cast<Index>(cols.size());
    RVector a(nr), b(nc);
    RMatrix dist(nr, nc);
    for (Index i = 0; i < nr; ++i) a(i) = nu.mass(rows[static_cast<std::size_t>(i)]);
    for (Index j = 0; j < nc; ++j) b(j) = mu.mass(cols[static_cast<std::size_t>(j)]);
    for (Index i = 0; i < nr; ++i)
        for (Index j = 0; j < nc; ++j)
            dist(i, j) = m.distance(s, rows[static_cast<std::size_t>(i)], cols[static_cast<std::size_t>(j)]);

    if (m.infinite()) return bottleneck_transport(a, b, dist);
    const RMatrix cost = dist.unaryExpr([&](Real d) { return m.power(d); });
    const Real c = std::max<Real>(0.0, solve_transport(a, b, cost).cost);
    return m.exponent == 1.0 ? c : std::pow(c, 1.0 / m.exponent);
}

} // namespace phasespace
