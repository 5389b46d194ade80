#pragma once

// Finite and discretized locally compact abelian groups, their duals, and the
// phase space built from the pair. Every model is a product of one-dimensional
// axes; each axis carries integer labels, a coordinate spacing, and a Haar
// weight. Position axis i pairs with momentum axis i through the character
// <k|x> = exp(2 pi i k x / K).

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "phasespace/core.hpp"

namespace phasespace {

enum class Side { Position, Momentum };

enum class AxisKind {
    Cyclic,       // Z_d
    Line,         // R sampled on a periodic grid
    LineDual,     // its momentum grid
    Circle,       // T sampled at M points
    CircleDual,   // Z truncated to M labels (periodic)
    Integers,     // Z truncated to -N..N, no wrap
    IntegersDual  // T sampled at M >= 2N+1 points
};

struct Axis {
    AxisKind kind = AxisKind::Cyclic;
    Index size = 1;
    Index modulus = 1;  // K in the character exp(2 pi i k x / K)
    long first_label = 0;
    Real spacing = 1.0;
    bool periodic = true;
    Real haar = 1.0;

    long label(Index i) const { return first_label + static_cast<long>(i); }
    Real coordinate(Index i) const { return static_cast<Real>(label(i)) * spacing; }
    Real period() const { return periodic ? static_cast<Real>(modulus) * spacing : 0.0; }

    /// Label difference reduced to (-K/2, K/2] on periodic axes.
    long wrap_label(long d) const;
    /// Coordinate difference x_i - x_j, wrapped on periodic axes.
    Real difference(Index i, Index j) const;
    /// Wraps a real coordinate difference into (-period/2, period/2].
    Real wrap_coordinate(Real d) const;

    std::optional<Index> index_of_label(long label) const;

    /// Axes sampling a continuum (spread minimization may refine between points).
    bool continuous() const;
};

/// One side (X or its dual) of the phase space: a product of axes, stored
/// row-major with the last axis varying fastest.
class Space {
public:
    Space() = default;
    explicit Space(std::vector<Axis> axes);

    const std::vector<Axis>& axes() const { return axes_; }
    Index size() const { return size_; }
    Index rank() const { return static_cast<Index>(axes_.size()); }
    Index stride(Index axis) const { return strides_[static_cast<std::size_t>(axis)]; }

    /// Per-axis index of point i.
    Index axis_index(Index i, Index axis) const { return (i / stride(axis)) % axes_[static_cast<std::size_t>(axis)].size; }

    Index zero() const { return zero_; }
    Real haar() const { return haar_; }

    std::optional<Index> add(Index i, Index j) const;
    std::optional<Index> subtract(Index i, Index j) const;
    std::optional<Index> negate(Index i) const;

    std::vector<long> labels(Index i) const;
    std::optional<Index> index_of(const std::vector<long>& labels) const;

    /// Wrapped per-axis coordinate differences x_i - x_j.
    void differences(Index i, Index j, std::vector<Real>& out) const;

    bool continuous() const;

private:
    std::vector<Axis> axes_;
    std::vector<Index> strides_;
    Index size_ = 0;
    Index zero_ = 0;
    Real haar_ = 1.0;
};

/// A group X together with its dual, the character pairing, and the Fourier
/// transform. Immutable after construction; share through `Group`.
class GroupSpec {
public:
    GroupSpec(Space position, Space momentum, std::string description);

    const Space& position() const { return position_; }
    const Space& momentum() const { return momentum_; }
    const Space& space(Side side) const { return side == Side::Position ? position_ : momentum_; }
    const std::string& description() const { return description_; }

    /// Phase-space cell weight dq*dp; equals 1/|X| on square models.
    Real phase_weight() const { return position_.haar() * momentum_.haar(); }
    bool is_square() const { return position_.size() == momentum_.size(); }

    /// <p|x> for dual point p and group point x.
    Complex character(Index p, Index x) const;

    /// Applies the Fourier transform (position -> momentum coefficients).
    CVector fourier(const CVector& psi) const;
    /// Applies the adjoint transform (momentum -> position coefficients).
    CVector fourier_adjoint(const CVector& phi) const;

    /// Dense Fourier matrix, |X^| x |X|. Intended for small models.
    CMatrix fourier_matrix() const;

private:
    CVector transform(const CVector& in, bool adjoint) const;

    Space position_;
    Space momentum_;
    std::string description_;
    // exp(-2 pi i m / K) per axis, m = 0..K-1
    std::vector<std::vector<Complex>> twiddles_;
};

using Group = std::shared_ptr<const GroupSpec>;

Group make_cyclic(Index d);
/// Discretized real line: N points, spacing 2L/N, periodic momentum grid.
Group make_line(Index points, Real half_width);
/// Discretized circle: M angles 2 pi j / M; dual is Z truncated to M labels.
Group make_circle(Index points);
/// Truncated integers -N..N with an M-point circle as dual (M = 0 means 2N+1).
Group make_integers(Index cutoff, Index dual_points = 0);
Group make_bits(Index count);
Group make_product(const std::vector<Group>& factors);

/// Parses `cyclic:d`, `product:[...]`, `zline:{N,L}`, `circle:{M}`,
/// `zint:{N}` / `zint:{N,M}` and `bits:{n}`. Throws std::invalid_argument.
Group parse_group(std::string_view text);

} // namespace phasespace
