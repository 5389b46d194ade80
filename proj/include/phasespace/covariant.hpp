#pragma once

// Covariant phase-space observables F({xi}) = dq dp alpha_xi(rho_F), their
// output marginals and worst-case measurement errors.

#include <vector>

#include "phasespace/groundstate.hpp"
#include "phasespace/operators.hpp"
#include "phasespace/random.hpp"

namespace phasespace {

class CovariantObservable {
public:
    /// Throws std::runtime_error if sum_xi F({xi}) deviates from 1 by more
    /// than 1e-10 (a Haar-convention bug).
    explicit CovariantObservable(DensityOperator generator);

    const Group& group() const { return generator_.group(); }
    const DensityOperator& generator() const { return generator_; }

    /// F({xi})
    CMatrix effect(PhasePoint xi) const;
    /// F[f] = sum_xi f(xi) F({xi}) = f * rho_F
    CMatrix operator()(const PhaseSpaceFunction& f) const;
    /// Effects of the position (momentum) margin, one per outcome. The
    /// momentum outcome of F({(q,p)}) is -p.
    const std::vector<CMatrix>& position_effects() const { return position_effects_; }
    const std::vector<CMatrix>& momentum_effects() const { return momentum_effects_; }

    /// Marginal of beta_-(rho_F) on the given side: the added noise.
    Distribution noise(Side side) const;

    Real normalization_error() const { return normalization_error_; }

private:
    DensityOperator generator_;
    std::vector<CMatrix> position_effects_;
    std::vector<CMatrix> momentum_effects_;
    Real normalization_error_ = 0.0;
};

CovariantObservable povm_from_generator(const DensityOperator& rho_f);

struct OutputMarginals {
    Distribution q;
    Distribution p;
};

/// Computed from the effects: mu(x) = tr(rho F^Q_x).
OutputMarginals output_marginals(const CovariantObservable& f, const DensityOperator& rho);
/// rho^Q * (beta rho_F)^Q and rho^P * (beta rho_F)^P.
OutputMarginals output_marginals_by_convolution(const CovariantObservable& f, const DensityOperator& rho);

struct UncertaintyDetail {
    Real sup_over_points = 0.0;  // max over point states of d(output, input)
    Real noise_spread = 0.0;     // spread of (beta rho_F) marginal
    Index worst_point = 0;
};

/// Worst-case error on one side, evaluated over position (momentum) point
/// states, next to the spread of the noise marginal.
UncertaintyDetail measurement_uncertainty_detail(const CovariantObservable& f, Side side, const MetricSpec& m);
/// As above for a centered observable; throws std::invalid_argument if the
/// two evaluations differ by more than 1e-9.
Real measurement_uncertainty(const CovariantObservable& f, Side side, const MetricSpec& m);

/// d(output marginal, input marginal) for one state.
Real marginal_error(const CovariantObservable& f, const DensityOperator& rho, Side side, const MetricSpec& m);

/// Shifts outcomes so the spread minimizers of both noise marginals are 0.
CovariantObservable center_observable(const CovariantObservable& f, const MetricSpec& m_q, const MetricSpec& m_p);

struct MurSample {
    Real mur_q = 0.0, mur_p = 0.0;  // measurement uncertainties
    Real pur_q = 0.0, pur_p = 0.0;  // spreads of the generator state beta rho_F
};

struct MurReport {
    Index samples = 0;
    Real max_abs_deviation = 0.0;
    bool pass = false;
    std::vector<MurSample> points;
    MurSample maximally_mixed;  // both sides Delta on finite groups
    MurSample point_generator;  // position point generator: (0, Delta)
};

/// Random generators (ranks cycling through 1..n); tolerance 1e-8.
MurReport mur_equals_pur_check(const Scenario& s, Index samples, std::uint64_t seed = 1);

} // namespace phasespace
