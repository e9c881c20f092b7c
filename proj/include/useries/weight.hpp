#pragma once

#include <functional>
#include <vector>

#include "useries/lemma.hpp"
#include "useries/series.hpp"

namespace useries {

/// Piecewise-constant weight 0 < mu <= 1 on [0,2pi): level 1 on
/// E union ([0,2pi) minus B), and the strictly decreasing ladder level mu_n
/// on the shell Omega_n minus Omega_{n-1} for n_0 < n <= S.
class Weight {
 public:
  struct Part {
    IntervalSet set;
    int n = 0;         // 0 marks the level-1 residue
    double level = 1.0;
  };

  Weight() = default;
  Weight(Rat eps, int n0, std::vector<Part> parts, IntervalSet E,
         IntervalSet B);

  static Weight one();  // mu == 1 everywhere

  const std::vector<Part>& parts() const { return parts_; }
  const IntervalSet& E() const { return E_; }
  const IntervalSet& B() const { return B_; }
  int n0() const { return n0_; }
  const Rat& eps() const { return eps_; }

  double eval(double x) const;
  double eval_pi(const Rat& x_pi) const;

  /// Exact measure of {mu != 1}, divided by pi.
  Rat measure_ne1_pi() const;

  /// All partition edges in radians (for quadrature splitting).
  std::vector<double> breakpoints() const;

 private:
  Rat eps_;
  int n0_ = 0;
  std::vector<Part> parts_;  // covers [0,2pi), pairwise disjoint
  IntervalSet E_, B_;
};

/// Omega_n = intersection of E_s over n <= s <= S (built depth).
IntervalSet build_omega(int n, const UniversalSeries& series);

/// h_s = ||f_s||_C + max over block partial sums of the sup norm + 1; the
/// partial-sum index p is subsampled to at most 256 values including both
/// block endpoints.
double compute_h(int s, const UniversalSeries& series);

/// Builds the weight at the given eps; requires the series built to depth
/// S >= n_0 + 1 with n_0 = floor(log_{1/2} eps) + 1.
Weight build_weight(const Rat& eps, const UniversalSeries& series);

/// Weighted L1 norm: sum over partition parts of level * l1_norm restricted
/// to the part, with the integrand's own breakpoints honored in each panel.
double weighted_l1(const std::function<double(double)>& fn,
                   const std::vector<double>& fn_breakpoints, const Weight& w,
                   double tol);

/// Tail-killing estimate on the built prefix: for each block s >= n_0 and a
/// subsample of p in [N_{s-1}, N_s), checks
///   int_{[0,2pi) \ Omega_s} |sum_{N_{s-1}<=|k|<=p} C_k e^{ikx}| mu dx
///     < 2^{-4s} + tol.
std::vector<CheckResult> weight_tail_report(const UniversalSeries& series,
                                            const Weight& w, double tol);

}  // namespace useries
