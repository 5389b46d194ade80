#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "phasespace/group.hpp"

namespace phasespace {

enum class MetricKind { Discrete, Absolute, CyclicAbsolute, Arc, Chordal, Hamming, Euclidean };

/// Translation-invariant metric with an error exponent in [1, inf].
struct MetricSpec {
    MetricKind kind = MetricKind::Discrete;
    Real exponent = 1.0;

    bool infinite() const { return exponent == kInfinity; }

    /// Distance between the points i and j of `space`.
    Real distance(const Space& space, Index i, Index j) const;
    /// Distance to the origin from per-axis wrapped coordinate differences.
    Real from_differences(const Space& space, const std::vector<Real>& diffs) const;
    /// d^alpha for finite exponents.
    Real power(Real d) const;

    /// Throws std::invalid_argument when the metric does not fit the space.
    void validate(const Space& space) const;
};

MetricSpec make_metric(MetricKind kind, Real exponent = 1.0);
/// Names: discrete, abs, cyclic-abs, arc, chordal, hamming, euclidean.
MetricSpec parse_metric(std::string_view name, std::string_view exponent);
MetricSpec parse_metric(std::string_view name, Real exponent);
std::string metric_name(MetricKind kind);
std::string format_exponent(Real exponent);

/// Probability measure on one side of a group, stored as point masses.
class Distribution {
public:
    /// Validates nonnegativity and normalization (1e-10), clips rounding
    /// negatives and renormalizes.
    Distribution(Group group, Side side, RVector masses);

    static Distribution point(Group group, Side side, Index x);
    static Distribution uniform(Group group, Side side);

    const Group& group() const { return group_; }
    Side side() const { return side_; }
    const Space& space() const { return group_->space(side_); }
    const RVector& masses() const { return masses_; }
    Index size() const { return masses_.size(); }
    Real mass(Index i) const { return masses_(i); }
    /// Density w.r.t. the Haar measure of the side.
    Real density(Index i) const { return masses_(i) / space().haar(); }

private:
    Group group_;
    Side side_;
    RVector masses_;
};

/// Masses at or below this count as outside the support for alpha = inf.
inline constexpr Real kSupportCutoff = 1e-14;

/// (sum_y mu(y) d(x,y)^alpha)^(1/alpha); max over the support for alpha = inf.
Real deviation(const Distribution& mu, Index x, const MetricSpec& m);
/// Deviation from an off-grid center given by per-axis coordinates.
Real deviation_at(const Distribution& mu, const std::vector<Real>& center, const MetricSpec& m);

struct SpreadResult {
    Real value = 0.0;
    Index center = 0;                // best stored point
    std::vector<Real> refined;       // refined center coordinates (continuous models)
    Real grid_value = 0.0;           // deviation at `center`
};

/// min_x deviation(mu, x). Searches all stored points; on single-axis
/// continuous models (and refine = true) the minimum is refined between grid
/// points by golden-section search.
SpreadResult spread(const Distribution& mu, const MetricSpec& m, bool refine = true);

/// Moves all mass by +a. Throws RangeError if mass leaves a truncated range.
Distribution shift_distribution(const Distribution& mu, Index a);

/// Group convolution of point masses. Mass leaving a truncated range is
/// dropped; more than 1e-10 dropped throws RangeError.
Distribution convolve_distributions(const Distribution& mu, const Distribution& nu);

/// Transport (Wasserstein) distance, solved exactly as a transportation LP.
/// alpha = inf is solved as a bottleneck problem.
Real transport_distance(const Distribution& nu, const Distribution& mu, const MetricSpec& m);

} // namespace phasespace
