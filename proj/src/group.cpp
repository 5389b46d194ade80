#include "phasespace/group.hpp"

#include <cctype>
#include <cmath>
#include <numeric>
#include <sstream>

namespace phasespace {

namespace {

long positive_mod(long a, long k) {
    long r = a % k;
    return r < 0 ? r + k : r;
}

} // namespace

long Axis::wrap_label(long d) const {
    if (!periodic) return d;
    const long k = static_cast<long>(modulus);
    long r = positive_mod(d, k);
    if (2 * r > k) r -= k;
    return r;
}

Real Axis::difference(Index i, Index j) const {
    return static_cast<Real>(wrap_label(label(i) - label(j))) * spacing;
}

Real Axis::wrap_coordinate(Real d) const {
    if (!periodic) return d;
    const Real p = period();
    Real r = d - p * std::round(d / p);
    if (r <= -0.5 * p) r += p;
    if (r > 0.5 * p) r -= p;
    return r;
}

std::optional<Index> Axis::index_of_label(long l) const {
    if (periodic) {
        return static_cast<Index>(positive_mod(l - first_label, static_cast<long>(modulus)));
    }
    const long offset = l - first_label;
    if (offset < 0 || offset >= static_cast<long>(size)) return std::nullopt;
    return static_cast<Index>(offset);
}

bool Axis::continuous() const {
    switch (kind) {
    case AxisKind::Line:
    case AxisKind::LineDual:
    case AxisKind::Circle:
    case AxisKind::IntegersDual:
        return true;
    default:
        return false;
    }
}

Space::Space(std::vector<Axis> axes) : axes_(std::move(axes)) {
    if (axes_.empty()) throw std::invalid_argument("space needs at least one axis");
    strides_.assign(axes_.size(), 1);
    size_ = 1;
    for (std::size_t a = axes_.size(); a-- > 0;) {
        if (axes_[a].size < 1) throw std::invalid_argument("axis with no points");
        if (axes_[a].periodic && axes_[a].size != axes_[a].modulus)
            throw std::invalid_argument("periodic axis must store one full period");
        strides_[a] = size_;
        size_ *= axes_[a].size;
    }
    haar_ = 1.0;
    std::vector<long> zeros(axes_.size(), 0);
    for (const auto& ax : axes_) haar_ *= ax.haar;
    auto z = index_of(zeros);
    if (!z) throw std::invalid_argument("space does not contain the neutral element");
    zero_ = *z;
}

std::vector<long> Space::labels(Index i) const {
    std::vector<long> out(axes_.size());
    for (std::size_t a = 0; a < axes_.size(); ++a)
        out[a] = axes_[a].label(axis_index(i, static_cast<Index>(a)));
    return out;
}

std::optional<Index> Space::index_of(const std::vector<long>& labels) const {
    if (labels.size() != axes_.size()) return std::nullopt;
    Index idx = 0;
    for (std::size_t a = 0; a < axes_.size(); ++a) {
        auto ai = axes_[a].index_of_label(labels[a]);
        if (!ai) return std::nullopt;
        idx += *ai * strides_[a];
    }
    return idx;
}

std::optional<Index> Space::add(Index i, Index j) const {
    auto li = labels(i);
    const auto lj = labels(j);
    for (std::size_t a = 0; a < li.size(); ++a) li[a] += lj[a];
    return index_of(li);
}

std::optional<Index> Space::subtract(Index i, Index j) const {
    auto li = labels(i);
    const auto lj = labels(j);
    for (std::size_t a = 0; a < li.size(); ++a) li[a] -= lj[a];
    return index_of(li);
}

std::optional<Index> Space::negate(Index i) const {
    auto li = labels(i);
    for (auto& l : li) l = -l;
    return index_of(li);
}

void Space::differences(Index i, Index j, std::vector<Real>& out) const {
    out.resize(axes_.size());
    for (std::size_t a = 0; a < axes_.size(); ++a) {
        const auto ai = static_cast<Index>(a);
        out[a] = axes_[a].difference(axis_index(i, ai), axis_index(j, ai));
    }
}

bool Space::continuous() const {
    for (const auto& ax : axes_)
        if (ax.continuous()) return true;
    return false;
}

GroupSpec::GroupSpec(Space position, Space momentum, std::string description)
    : position_(std::move(position)), momentum_(std::move(momentum)), description_(std::move(description)) {
    if (position_.rank() != momentum_.rank())
        throw std::invalid_argument("position and momentum axes must pair up");
    twiddles_.reserve(static_cast<std::size_t>(position_.rank()));
    for (Index a = 0; a < position_.rank(); ++a) {
        const auto& px = position_.axes()[static_cast<std::size_t>(a)];
        const auto& pk = momentum_.axes()[static_cast<std::size_t>(a)];
        if (px.modulus != pk.modulus) throw std::invalid_argument("paired axes disagree on the character modulus");
        if (pk.size < px.size) throw std::invalid_argument("dual axis too small for a unitary transform");
        const Index k = pk.modulus;
        std::vector<Complex> tw(static_cast<std::size_t>(k));
        for (Index m = 0; m < k; ++m)
            tw[static_cast<std::size_t>(m)] = std::polar(1.0, -2.0 * kPi * static_cast<Real>(m) / static_cast<Real>(k));
        twiddles_.push_back(std::move(tw));
    }
}

Complex GroupSpec::character(Index p, Index x) const {
    Complex value{1.0, 0.0};
    for (Index a = 0; a < position_.rank(); ++a) {
        const auto& ax = position_.axes()[static_cast<std::size_t>(a)];
        const auto& ak = momentum_.axes()[static_cast<std::size_t>(a)];
        const long k = ak.label(momentum_.axis_index(p, a));
        const long x_label = ax.label(position_.axis_index(x, a));
        const long m = positive_mod(k * x_label, static_cast<long>(ak.modulus));
        value *= std::conj(twiddles_[static_cast<std::size_t>(a)][static_cast<std::size_t>(m)]);
    }
    return value;
}

CVector GroupSpec::transform(const CVector& in, bool adjoint) const {
    const Space& from = adjoint ? momentum_ : position_;
    const Space& to = adjoint ? position_ : momentum_;
    if (in.size() != from.size()) throw std::invalid_argument("vector does not match the group size");

    std::vector<Index> dims;
    for (const auto& ax : from.axes()) dims.push_back(ax.size);

    CVector current = in;
    for (Index a = 0; a < from.rank(); ++a) {
        const auto ua = static_cast<std::size_t>(a);
        const Axis& src = from.axes()[ua];
        const Axis& dst = to.axes()[ua];
        const auto k = static_cast<long>(src.modulus);
        const Real norm = 1.0 / std::sqrt(static_cast<Real>(k));
        const auto& tw = twiddles_[ua];

        Index outer = 1, inner = 1;
        for (std::size_t b = 0; b < ua; ++b) outer *= dims[b];
        for (std::size_t b = ua + 1; b < dims.size(); ++b) inner *= dims[b];

        CVector next = CVector::Zero(outer * dst.size * inner);
        for (Index o = 0; o < outer; ++o) {
            for (Index j = 0; j < dst.size; ++j) {
                const long lj = dst.label(j);
                Complex* out = next.data() + (o * dst.size + j) * inner;
                for (Index i = 0; i < src.size; ++i) {
                    const long m = positive_mod(lj * src.label(i), k);
                    Complex w = tw[static_cast<std::size_t>(m)] * norm;
                    if (adjoint) w = std::conj(w);
                    const Complex* col = current.data() + (o * src.size + i) * inner;
                    for (Index r = 0; r < inner; ++r) out[r] += w * col[r];
                }
            }
        }
        dims[ua] = dst.size;
        current = std::move(next);
    }
    return current;
}

CVector GroupSpec::fourier(const CVector& psi) const { return transform(psi, false); }

CVector GroupSpec::fourier_adjoint(const CVector& phi) const { return transform(phi, true); }

CMatrix GroupSpec::fourier_matrix() const {
    CMatrix f(momentum_.size(), position_.size());
    CVector e = CVector::Zero(position_.size());
    for (Index x = 0; x < position_.size(); ++x) {
        e.setZero();
        e(x) = 1.0;
        f.col(x) = fourier(e);
    }
    return f;
}

Group make_cyclic(Index d) {
    if (d < 1) throw std::invalid_argument("cyclic group needs d >= 1");
    Axis x{AxisKind::Cyclic, d, d, 0, 1.0, true, 1.0};
    Axis p{AxisKind::Cyclic, d, d, 0, 1.0, true, 1.0 / static_cast<Real>(d)};
    return std::make_shared<const GroupSpec>(Space({x}), Space({p}), "cyclic:" + std::to_string(d));
}

Group make_line(Index points, Real half_width) {
    if (points < 2 || points % 2 != 0) throw std::invalid_argument("line model needs an even number of points");
    if (!(half_width > 0.0)) throw std::invalid_argument("line model needs L > 0");
    const Real h = 2.0 * half_width / static_cast<Real>(points);
    const long first = -static_cast<long>(points / 2);
    Axis x{AxisKind::Line, points, points, first, h, true, h};
    Axis p{AxisKind::LineDual, points, points, first, kPi / half_width, true, 1.0 / (2.0 * half_width)};
    std::ostringstream name;
    name << "zline:{" << points << "," << half_width << "}";
    return std::make_shared<const GroupSpec>(Space({x}), Space({p}), name.str());
}

Group make_circle(Index points) {
    if (points < 2) throw std::invalid_argument("circle model needs M >= 2");
    const Real h = 2.0 * kPi / static_cast<Real>(points);
    Axis x{AxisKind::Circle, points, points, 0, h, true, h};
    Axis p{AxisKind::CircleDual, points, points, -static_cast<long>(points / 2), 1.0, true, 1.0 / (2.0 * kPi)};
    return std::make_shared<const GroupSpec>(Space({x}), Space({p}), "circle:{" + std::to_string(points) + "}");
}

Group make_integers(Index cutoff, Index dual_points) {
    if (cutoff < 0) throw std::invalid_argument("zint needs N >= 0");
    const Index n = 2 * cutoff + 1;
    const Index m = dual_points == 0 ? n : dual_points;
    if (m < n) throw std::invalid_argument("zint dual needs M >= 2N+1 samples");
    Axis x{AxisKind::Integers, n, m, -static_cast<long>(cutoff), 1.0, false, 1.0};
    Axis p{AxisKind::IntegersDual, m, m, 0, 2.0 * kPi / static_cast<Real>(m), true, 1.0 / static_cast<Real>(m)};
    std::string name = "zint:{" + std::to_string(cutoff);
    if (dual_points != 0) name += "," + std::to_string(dual_points);
    name += "}";
    return std::make_shared<const GroupSpec>(Space({x}), Space({p}), name);
}

Group make_bits(Index count) {
    if (count < 1) throw std::invalid_argument("bits needs n >= 1");
    std::vector<Group> factors(static_cast<std::size_t>(count), make_cyclic(2));
    auto g = make_product(factors);
    return std::make_shared<const GroupSpec>(g->position(), g->momentum(), "bits:{" + std::to_string(count) + "}");
}

Group make_product(const std::vector<Group>& factors) {
    if (factors.empty()) throw std::invalid_argument("empty product");
    std::vector<Axis> xs, ps;
    std::string name = "product:[";
    for (std::size_t i = 0; i < factors.size(); ++i) {
        for (const auto& ax : factors[i]->position().axes()) xs.push_back(ax);
        for (const auto& ax : factors[i]->momentum().axes()) ps.push_back(ax);
        if (i) name += ",";
        name += factors[i]->description();
    }
    name += "]";
    return std::make_shared<const GroupSpec>(Space(std::move(xs)), Space(std::move(ps)), name);
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

// Splits on commas that are not nested inside brackets or braces.
std::vector<std::string_view> split_top_level(std::string_view s) {
    std::vector<std::string_view> parts;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const char c = s[i];
        if (c == '[' || c == '{') ++depth;
        else if (c == ']' || c == '}') {
            if (--depth < 0) throw std::invalid_argument("unbalanced brackets in group string");
        } else if (c == ',' && depth == 0) {
            parts.push_back(trim(s.substr(start, i - start)));
            start = i + 1;
        }
    }
    if (depth != 0) throw std::invalid_argument("unbalanced brackets in group string");
    parts.push_back(trim(s.substr(start)));
    return parts;
}

std::vector<Real> parse_numbers(std::string_view args) {
    args = trim(args);
    if (!args.empty() && args.front() == '{') {
        if (args.back() != '}') throw std::invalid_argument("missing '}' in group arguments");
        args = args.substr(1, args.size() - 2);
    }
    std::vector<Real> out;
    for (auto part : split_top_level(args)) {
        if (part.empty()) throw std::invalid_argument("empty group argument");
        std::string token(part);
        std::size_t used = 0;
        Real v = 0.0;
        try {
            v = std::stod(token, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("not a number in group string: " + token);
        }
        if (used != token.size()) throw std::invalid_argument("not a number in group string: " + token);
        out.push_back(v);
    }
    return out;
}

Index as_count(Real v, const char* what) {
    if (v != std::floor(v) || v < 0 || v > 1e9) throw std::invalid_argument(std::string(what) + " must be a non-negative integer");
    return static_cast<Index>(v);
}

} // namespace

Group parse_group(std::string_view text) {
    text = trim(text);
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) throw std::invalid_argument("group string needs 'kind:args': " + std::string(text));
    const auto kind = trim(text.substr(0, colon));
    const auto args = trim(text.substr(colon + 1));

    if (kind == "product") {
        if (args.size() < 2 || args.front() != '[' || args.back() != ']')
            throw std::invalid_argument("product expects [g1,g2,...]");
        std::vector<Group> factors;
        for (auto part : split_top_level(args.substr(1, args.size() - 2))) {
            if (part.empty()) throw std::invalid_argument("empty factor in product");
            factors.push_back(parse_group(part));
        }
        return make_product(factors);
    }

    const auto nums = parse_numbers(args);
    auto expect = [&](std::size_t lo, std::size_t hi) {
        if (nums.size() < lo || nums.size() > hi)
            throw std::invalid_argument("wrong number of arguments for " + std::string(kind));
    };
    if (kind == "cyclic") {
        expect(1, 1);
        return make_cyclic(as_count(nums[0], "d"));
    }
    if (kind == "zline") {
        expect(2, 2);
        return make_line(as_count(nums[0], "N"), nums[1]);
    }
    if (kind == "circle") {
        expect(1, 1);
        return make_circle(as_count(nums[0], "M"));
    }
    if (kind == "zint") {
        expect(1, 2);
        return make_integers(as_count(nums[0], "N"), nums.size() == 2 ? as_count(nums[1], "M") : 0);
    }
    if (kind == "bits") {
        expect(1, 1);
        return make_bits(as_count(nums[0], "n"));
    }
    throw std::invalid_argument("unknown group kind: " + std::string(kind));
}

} // namespace phasespace
