#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "useries/interval.hpp"

namespace useries {

using Complex = std::complex<double>;

/// Frequency block: N_{s-1} <= |k| < N_s.
struct BlockRange {
  int s = 0;
  std::int64_t lo = 0;
  std::int64_t hi = 0;

  bool operator==(const BlockRange&) const = default;
};

/// Piecewise-constant function given by disjoint segments (value 0 between
/// them); endpoints kept exact for quadrature splits, mirrored as doubles for
/// evaluation.
class PiecewiseConstant {
 public:
  struct Seg {
    Rat lo_pi, hi_pi;
    double value;
  };

  PiecewiseConstant() = default;
  explicit PiecewiseConstant(std::vector<Seg> segs);
  static PiecewiseConstant from_step(const StepFunction& f);

  const std::vector<Seg>& segs() const { return segs_; }
  double eval(double x) const;
  std::vector<double> breakpoints() const { return breaks_; }
  double integral_abs() const;

 private:
  std::vector<Seg> segs_;        // sorted, disjoint
  std::vector<double> breaks_;   // radians
  std::vector<double> lo_, hi_;  // radians, parallel to segs_
};

/// Real trigonometric polynomial sum_{|k|<=N} C_k e^{ikx} with conjugate
/// symmetry C_{-k} = conj(C_k) enforced by storing only k >= 0.
class TrigPolynomial {
 public:
  TrigPolynomial() = default;

  std::int64_t max_freq() const {
    return c_.empty() ? -1 : std::int64_t(c_.size()) - 1;
  }
  bool is_zero() const;

  /// Coefficient at signed frequency k (conjugated for k < 0).
  Complex coeff(std::int64_t k) const;
  void set_coeff(std::int64_t k, Complex value);  // k >= 0
  void add_coeff(std::int64_t k, Complex value);

  const std::vector<Complex>& table() const { return c_; }

  /// Full evaluation.
  double eval(double x) const { return eval_range(0, max_freq(), x); }

  /// Symmetric partial sum over lo <= |k| <= hi (k = 0 counted once).
  /// The imaginary part cancels exactly under conjugate symmetry; it is
  /// recomputed and checked against 1e-8 to catch table corruption.
  double eval_range(std::int64_t lo, std::int64_t hi, double x) const;

  /// Spec operation: sum over base_lo <= |k| <= m.
  double partial_sum_eval(std::int64_t m, double x, std::int64_t base_lo) const {
    return eval_range(base_lo, m, x);
  }

 private:
  std::vector<Complex> c_;  // c_[k], k >= 0
};

/// Closed-form Fourier coefficient (1/2pi) int h(t) e^{-ikt} dt of a
/// piecewise-constant function with exact endpoints.
Complex fourier_coeff_piecewise(const PiecewiseConstant& h, std::int64_t k);

/// Sup-norm estimate: dense sampling at 8N+8 points plus golden-section
/// refinement around the argmax (refined until improvement < 1e-6).
double sup_norm_trig(const TrigPolynomial& P);
double sup_norm_range(const TrigPolynomial& P, std::int64_t lo, std::int64_t hi);

/// Euclidean norm of the coefficients with lo <= |k| < hi.
double block_l2(const TrigPolynomial& P, const BlockRange& r);

/// sum over lo <= |k| < hi of |C_k|^p.
double coeff_power_sum(const TrigPolynomial& P, std::int64_t lo, std::int64_t hi,
                       double p);

namespace detail {
/// Values of the symmetric sum with one-sided coefficients c[0..K] at the
/// uniform grid x_j = 2pi j / M (M a power of two, M > 2K).
std::vector<double> eval_on_grid(const std::vector<Complex>& c, std::size_t M);
}  // namespace detail

/// int_set |S - h| where S is the symmetric partial sum of P over
/// lo <= |k| <= hi. Uses a dense sampled grid (>= 32 samples per shortest
/// wavelength) with exact splits at h's breakpoints and at the set's
/// endpoints, linear treatment of sign crossings, and doubling refinement
/// until successive estimates differ by < tol.
double sampled_l1_error(const TrigPolynomial& P, std::int64_t lo,
                        std::int64_t hi, const PiecewiseConstant& h,
                        const IntervalSet& set, double tol);

/// int_set |partial sum| (h = 0 case).
double sampled_partial_l1(const TrigPolynomial& P, std::int64_t lo,
                          std::int64_t hi, const IntervalSet& set, double tol);

}  // namespace useries
