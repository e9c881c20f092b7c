#pragma once

#include <cstdint>

#include "useries/interval.hpp"
#include "useries/trig.hpp"

namespace useries {

/// Two-valued mean-zero plateau function: 1 off [eps*pi/2, 3*eps*pi/2),
/// 1 - 2/eps on it, extended 2pi-periodically. eps is rational so the dip
/// endpoints are exact rational multiples of pi.
struct GapFunction {
  Rat eps;

  explicit GapFunction(Rat e);

  Rat dip_value() const { return 1 - Rat(2) / eps; }
  Rat dip_lo_pi() const { return eps / 2; }
  Rat dip_hi_pi() const { return 3 * eps / 2; }

  /// Exact evaluation; x_pi is reduced mod 2. Boundary points belong to the
  /// dip (half-open convention).
  Rat eval_pi(Rat x_pi) const;
  double eval(double x) const;
};

/// g_s(x) = gamma * g(nu * x) * chi_{Delta}(x), with nu a multiple of
/// 2^depth so Delta holds an integer number of periods. All interval data
/// is exact; Fourier coefficients come from closed forms (geometric sums
/// over the dip comb), O(1) per frequency.
class GapPiece {
 public:
  GapPiece() = default;
  GapPiece(Rat gamma, DyadicInterval cell, std::int64_t nu, Rat gap_eps);

  const Rat& gamma() const { return gamma_; }
  const DyadicInterval& cell() const { return cell_; }
  std::int64_t nu() const { return nu_; }
  const Rat& gap_eps() const { return gap_eps_; }
  std::int64_t periods() const { return periods_; }

  bool is_zero() const { return gamma_ == 0; }

  /// Union of the dip preimages inside the cell (empty for gamma == 0).
  IntervalSet dips() const;

  /// E_s = {x in Delta : g_s(x) = gamma}; the whole cell when gamma == 0.
  IntervalSet plateau_set() const;

  double eval(double x) const;

  /// Closed-form Fourier coefficient (1/2pi) int g_s(t) e^{-ikt} dt.
  Complex coeff(std::int64_t k) const;

  PiecewiseConstant to_piecewise() const;

  /// Exact integrals over [0,2pi), divided by pi.
  Rat integral_pi() const;  // 0 by mean-zero cancellation
  Rat l1_pi() const;
  Rat l2_sq_pi() const;

 private:
  Rat gamma_;
  DyadicInterval cell_;
  std::int64_t nu_ = 1;
  Rat gap_eps_;
  std::int64_t periods_ = 1;
};

}  // namespace useries
