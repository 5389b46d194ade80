#pragma once

#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace phasespace {

using Real = double;
using Complex = std::complex<Real>;

using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;

using Index = Eigen::Index;

inline constexpr Real kPi = 3.14159265358979323846264338327950288;
inline constexpr Real kInfinity = std::numeric_limits<Real>::infinity();

/// Thrown when a group operation leaves the stored range of a truncated model.
class RangeError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// Thrown when an iterative solver fails to reach its tolerance.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, long iterations)
        : std::runtime_error(what + " (after " + std::to_string(iterations) + " iterations)"),
          iterations_(iterations) {}
    long iterations() const noexcept { return iterations_; }

private:
    long iterations_;
};

} // namespace phasespace
