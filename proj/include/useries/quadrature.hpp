#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "useries/interval.hpp"

namespace useries {
namespace quad {

struct Result {
  double value = 0.0;
  double error_estimate = 0.0;
  bool converged = true;
  long panels = 0;
};

using RealFn = std::function<double(double)>;

/// Adaptive Gauss-Legendre (order 16) over [a,b] with mandatory panel splits
/// at the given interior breakpoints.
Result integrate(const RealFn& fn, double a, double b,
                 std::vector<double> breakpoints, double tol,
                 int max_depth = 28);

/// Integrates |fn| over an interval set. Panels split at breakpoints and at
/// zero crossings of fn located by sign-change bisection.
Result l1_norm(const RealFn& fn, const std::vector<double>& breakpoints,
               const IntervalSet& set, double tol, int max_depth = 28);

/// Complex-valued variant of integrate (smooth integrands only).
std::complex<double> integrate_complex(
    const std::function<std::complex<double>(double)>& fn, double a, double b,
    std::vector<double> breakpoints, double tol);

}  // namespace quad
}  // namespace useries
