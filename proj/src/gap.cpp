#include "useries/gap.hpp"

#include <cmath>
#include <numbers>

namespace useries {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

Rat mod2(Rat x) {
  // Reduce into [0,2) with floor division (cpp_int '/' truncates to zero).
  BigInt q = numerator(x) / denominator(x);
  if (numerator(x) < 0 && q * denominator(x) != numerator(x)) q -= 1;
  Rat frac = x - Rat(q);  // in [0,1)
  if (q % 2 != 0) frac += 1;
  return frac;
}

// e^{-i * 2pi * frac} with frac an exact rational reduced mod 1.
Complex unit_phase_neg(const Rat& frac) {
  Rat r = frac - Rat(numerator(frac) / denominator(frac));
  if (r < 0) r += 1;
  return std::polar(1.0, -kTwoPi * to_double(r));
}

}  // namespace

GapFunction::GapFunction(Rat e) : eps(std::move(e)) {
  if (eps <= 0 || eps >= 1)
    throw ValidationError("gap parameter must lie in (0, 1)");
}

Rat GapFunction::eval_pi(Rat x_pi) const {
  Rat r = mod2(std::move(x_pi));
  if (r >= dip_lo_pi() && r < dip_hi_pi()) return dip_value();
  return Rat(1);
}

double GapFunction::eval(double x) const {
  double r = std::fmod(x, kTwoPi);
  if (r < 0) r += kTwoPi;
  double lo = pi_units_to_radians(dip_lo_pi());
  double hi = pi_units_to_radians(dip_hi_pi());
  if (r >= lo && r < hi) return to_double(dip_value());
  return 1.0;
}

GapPiece::GapPiece(Rat gamma, DyadicInterval cell, std::int64_t nu, Rat gap_eps)
    : gamma_(std::move(gamma)),
      cell_(cell),
      nu_(nu),
      gap_eps_(std::move(gap_eps)) {
  if (nu_ < 1) throw ValidationError("nu must be positive");
  std::int64_t scale = std::int64_t(1) << cell_.depth;
  if (nu_ % scale != 0)
    throw ValidationError("nu must be a multiple of 2^depth (integer periods)");
  periods_ = nu_ / scale;
  if (gap_eps_ <= 0 || gap_eps_ >= 1)
    throw ValidationError("gap parameter must lie in (0, 1)");
}

IntervalSet GapPiece::dips() const {
  if (is_zero()) return IntervalSet::empty_set();
  if (periods_ > (std::int64_t(1) << 21))
    throw BudgetError("dip count too large to materialize");
  std::vector<IntervalSet::Piece> pieces;
  pieces.reserve(std::size_t(periods_));
  const Rat A = cell_.lo_pi();
  const Rat period(BigInt(2), BigInt(nu_));
  const Rat off = gap_eps_ / (2 * nu_);
  const Rat len = gap_eps_ / nu_;
  for (std::int64_t j = 0; j < periods_; ++j) {
    Rat lo = A + period * j + off;
    pieces.emplace_back(lo, lo + len);
  }
  return IntervalSet::from_pieces(std::move(pieces));
}

IntervalSet GapPiece::plateau_set() const {
  IntervalSet cell = IntervalSet::of(cell_);
  if (is_zero()) return cell;
  return cell.difference(dips());
}

double GapPiece::eval(double x) const {
  if (is_zero()) return 0.0;
  double lo = pi_units_to_radians(cell_.lo_pi());
  double hi = pi_units_to_radians(cell_.hi_pi());
  if (x < lo || x >= hi) return 0.0;
  GapFunction g(gap_eps_);
  return to_double(gamma_) * g.eval(double(nu_) * x);
}

Complex GapPiece::coeff(std::int64_t k) const {
  if (is_zero()) return {};
  const double gamma = to_double(gamma_);
  if (k == 0) return {};  // integer periods of a mean-zero function
  bool neg = k < 0;
  if (neg) k = -k;
  // Phases are reduced exactly before conversion to double.
  const std::int64_t cells = std::int64_t(1) << cell_.depth;
  // e^{-ikA}, A = (i-1) * 2pi / 2^m.
  Complex ea = unit_phase_neg(Rat(BigInt(k) * (cell_.index - 1), cells));
  Complex eb = unit_phase_neg(Rat(BigInt(k) * cell_.index, cells));
  const Complex i2pik = Complex(0.0, 1.0) * (kTwoPi * double(k));
  // Window part: (1/2pi) int_Delta e^{-ikt} dt.
  Complex window = (ea - eb) / i2pik;
  // Dip comb: dips at u_j = A + jT + off, length L, T = 2pi/nu.
  const Rat off = gap_eps_ / (2 * nu_);  // in pi units
  const Rat len = gap_eps_ / nu_;
  Complex e_off = unit_phase_neg(Rat(BigInt(k) * numerator(off),
                                     2 * denominator(off)));
  Complex e_len = unit_phase_neg(Rat(BigInt(k) * numerator(len),
                                     2 * denominator(len)));
  Complex eu = ea * e_off;
  Complex single = (eu - eu * e_len) / i2pik;
  Complex geo;
  if (k % nu_ == 0) {
    geo = Complex(double(periods_), 0.0);
  } else {
    // sum_j e^{-ikTj} = (1 - e^{-ikTP}) / (1 - e^{-ikT});
    // kTP = 2pi k / 2^m, kT = 2pi k / nu, both reduced exactly.
    Complex num = 1.0 - unit_phase_neg(Rat(BigInt(k), cells));
    Complex den = 1.0 - unit_phase_neg(Rat(BigInt(k), BigInt(nu_)));
    geo = num / den;
  }
  Complex dip_hat = single * geo;
  Complex c = gamma * (window - to_double(Rat(2) / gap_eps_) * dip_hat);
  return neg ? std::conj(c) : c;
}

PiecewiseConstant GapPiece::to_piecewise() const {
  if (is_zero()) return {};
  if (periods_ > (std::int64_t(1) << 21))
    throw BudgetError("dip count too large to materialize");
  const double plateau = to_double(gamma_);
  const double dip = to_double(gamma_ * (1 - Rat(2) / gap_eps_));
  std::vector<PiecewiseConstant::Seg> segs;
  segs.reserve(std::size_t(2 * periods_ + 1));
  const Rat period(BigInt(2), BigInt(nu_));
  const Rat off = gap_eps_ / (2 * nu_);
  const Rat len = gap_eps_ / nu_;
  Rat cursor = cell_.lo_pi();
  for (std::int64_t j = 0; j < periods_; ++j) {
    Rat dip_lo = cell_.lo_pi() + period * j + off;
    Rat dip_hi = dip_lo + len;
    if (cursor < dip_lo) segs.push_back({cursor, dip_lo, plateau});
    segs.push_back({dip_lo, dip_hi, dip});
    cursor = dip_hi;
  }
  if (cursor < cell_.hi_pi()) segs.push_back({cursor, cell_.hi_pi(), plateau});
  return PiecewiseConstant(std::move(segs));
}

Rat GapPiece::integral_pi() const {
  if (is_zero()) return Rat(0);
  const Rat L = cell_.length_pi();
  const Rat d = gap_eps_ / 2;  // dip fraction of each period
  return gamma_ * L * ((1 - d) + d * (1 - Rat(2) / gap_eps_));
}

Rat GapPiece::l1_pi() const {
  if (is_zero()) return Rat(0);
  const Rat L = cell_.length_pi();
  const Rat d = gap_eps_ / 2;
  return abs(gamma_) * L * ((1 - d) + d * abs(1 - Rat(2) / gap_eps_));
}

Rat GapPiece::l2_sq_pi() const {
  if (is_zero()) return Rat(0);
  const Rat L = cell_.length_pi();
  const Rat d = gap_eps_ / 2;
  const Rat dv = 1 - Rat(2) / gap_eps_;
  return gamma_ * gamma_ * L * ((1 - d) + d * dv * dv);
}

}  // namespace useries
