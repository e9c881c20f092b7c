#include "useries/trig.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace useries {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

PiecewiseConstant::PiecewiseConstant(std::vector<Seg> segs) : segs_(std::move(segs)) {
  std::sort(segs_.begin(), segs_.end(),
            [](const Seg& a, const Seg& b) { return a.lo_pi < b.lo_pi; });
  for (std::size_t i = 0; i + 1 < segs_.size(); ++i)
    if (segs_[i].hi_pi > segs_[i + 1].lo_pi)
      throw ValidationError("piecewise-constant segments overlap");
  for (const Seg& s : segs_) {
    lo_.push_back(pi_units_to_radians(s.lo_pi));
    hi_.push_back(pi_units_to_radians(s.hi_pi));
    breaks_.push_back(lo_.back());
    breaks_.push_back(hi_.back());
  }
}

PiecewiseConstant PiecewiseConstant::from_step(const StepFunction& f) {
  std::vector<Seg> segs;
  for (const auto& p : f.pieces())
    segs.push_back({p.cell.lo_pi(), p.cell.hi_pi(), to_double(p.value)});
  return PiecewiseConstant(std::move(segs));
}

double PiecewiseConstant::eval(double x) const {
  auto it = std::upper_bound(lo_.begin(), lo_.end(), x);
  if (it == lo_.begin()) return 0.0;
  std::size_t i = std::size_t(it - lo_.begin()) - 1;
  return x < hi_[i] ? segs_[i].value : 0.0;
}

double PiecewiseConstant::integral_abs() const {
  double total = 0.0;
  for (std::size_t i = 0; i < segs_.size(); ++i)
    total += std::abs(segs_[i].value) * (hi_[i] - lo_[i]);
  return total;
}

bool TrigPolynomial::is_zero() const {
  for (const Complex& v : c_)
    if (v != Complex{}) return false;
  return true;
}

Complex TrigPolynomial::coeff(std::int64_t k) const {
  std::int64_t a = k < 0 ? -k : k;
  if (a >= std::int64_t(c_.size())) return {};
  return k < 0 ? std::conj(c_[std::size_t(a)]) : c_[std::size_t(a)];
}

void TrigPolynomial::set_coeff(std::int64_t k, Complex value) {
  if (k < 0) throw ValidationError("coefficients stored for k >= 0 only");
  if (std::size_t(k) >= c_.size()) c_.resize(std::size_t(k) + 1, Complex{});
  c_[std::size_t(k)] = value;
}

void TrigPolynomial::add_coeff(std::int64_t k, Complex value) {
  if (k < 0) throw ValidationError("coefficients stored for k >= 0 only");
  if (std::size_t(k) >= c_.size()) c_.resize(std::size_t(k) + 1, Complex{});
  c_[std::size_t(k)] += value;
}

double TrigPolynomial::eval_range(std::int64_t lo, std::int64_t hi,
                                  double x) const {
  if (lo < 0) lo = 0;
  if (hi > max_freq()) hi = max_freq();
  double out = 0.0;
  if (lo == 0) {
    if (hi < 0) return 0.0;
    const Complex& c0 = c_[0];
    if (std::abs(c0.imag()) > 1e-8)
      throw std::runtime_error("conjugate symmetry violated at k = 0");
    out += c0.real();
    lo = 1;
  }
  if (lo > hi) return out;
  const Complex rot = std::polar(1.0, x);
  Complex phase = std::polar(1.0, double(lo) * x);
  Complex acc{};
  for (std::int64_t k = lo; k <= hi; ++k) {
    acc += c_[std::size_t(k)] * phase;
    phase *= rot;
  }
  // C_{-k} e^{-ikx} = conj(C_k e^{ikx}): the two-sided sum is 2 Re(acc).
  return out + 2.0 * acc.real();
}

Complex fourier_coeff_piecewise(const PiecewiseConstant& h, std::int64_t k) {
  Complex sum{};
  if (k == 0) {
    for (const auto& seg : h.segs())
      sum += seg.value * to_double(seg.hi_pi - seg.lo_pi) / 2.0;
    return sum;
  }
  for (const auto& seg : h.segs()) {
    double a = pi_units_to_radians(seg.lo_pi);
    double b = pi_units_to_radians(seg.hi_pi);
    Complex ea = std::polar(1.0, -double(k) * a);
    Complex eb = std::polar(1.0, -double(k) * b);
    sum += seg.value * (ea - eb);
  }
  return sum / (Complex(0.0, 1.0) * double(k) * kTwoPi);
}

namespace {

double golden_refine(const std::function<double(double)>& f, double a,
                     double b) {
  constexpr double kInvPhi = 0.6180339887498948482;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  double best = std::max(f1, f2);
  while (b - a > 1e-12) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
    }
    double cur = std::max(f1, f2);
    if (cur - best < 1e-6 && b - a < 1e-3) break;
    best = std::max(best, cur);
  }
  return best;
}

}  // namespace

double sup_norm_range(const TrigPolynomial& P, std::int64_t lo,
                      std::int64_t hi) {
  if (P.max_freq() < 0) return 0.0;
  hi = std::min(hi, P.max_freq());
  if (hi < lo) return 0.0;
  std::int64_t n = 8 * std::max<std::int64_t>(hi, 1) + 8;
  auto f = [&](double x) { return std::abs(P.eval_range(lo, hi, x)); };
  double best = 0.0;
  std::int64_t arg = 0;
  for (std::int64_t j = 0; j < n; ++j) {
    double v = f(kTwoPi * double(j) / double(n));
    if (v > best) {
      best = v;
      arg = j;
    }
  }
  double h = kTwoPi / double(n);
  double refined = golden_refine(f, kTwoPi * double(arg) / double(n) - h,
                                 kTwoPi * double(arg) / double(n) + h);
  return std::max(best, refined);
}

double sup_norm_trig(const TrigPolynomial& P) {
  return sup_norm_range(P, 0, std::max<std::int64_t>(P.max_freq(), 0));
}

double block_l2(const TrigPolynomial& P, const BlockRange& r) {
  double s = 0.0;
  for (std::int64_t k = r.lo; k < r.hi; ++k) {
    double mag = std::norm(P.coeff(k));
    s += (k == 0) ? mag : 2.0 * mag;  // |k| and -|k|
  }
  return std::sqrt(s);
}

double coeff_power_sum(const TrigPolynomial& P, std::int64_t lo,
                       std::int64_t hi, double p) {
  double s = 0.0;
  for (std::int64_t k = lo; k < hi; ++k) {
    double mag = std::abs(P.coeff(k));
    if (mag == 0.0) continue;
    double term = std::pow(mag, p);
    s += (k == 0) ? term : 2.0 * term;
  }
  return s;
}

namespace detail {

namespace {

void fft_inplace(std::vector<Complex>& a, bool inverse) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    double ang = (inverse ? 1.0 : -1.0) * kTwoPi / double(len);
    Complex wl = std::polar(1.0, ang);
    for (std::size_t i = 0; i < n; i += len) {
      Complex w{1.0, 0.0};
      for (std::size_t j = 0; j < len / 2; ++j) {
        Complex u = a[i + j];
        Complex v = a[i + j + len / 2] * w;
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
        w *= wl;
      }
    }
  }
}

}  // namespace

std::vector<double> eval_on_grid(const std::vector<Complex>& c, std::size_t M) {
  if (M < 2 * c.size()) throw ValidationError("grid too small for bandwidth");
  std::vector<Complex> spec(M, Complex{});
  if (!c.empty()) spec[0] = c[0];
  for (std::size_t k = 1; k < c.size(); ++k) {
    spec[k] = c[k];
    spec[M - k] = std::conj(c[k]);
  }
  fft_inplace(spec, /*inverse=*/true);
  std::vector<double> vals(M);
  for (std::size_t j = 0; j < M; ++j) vals[j] = spec[j].real();
  return vals;
}

}  // namespace detail

namespace {

double cell_abs_trapezoid(double u0, double u1, double len) {
  if ((u0 < 0) != (u1 < 0) && u0 != u1) {
    double t = u0 / (u0 - u1);  // crossing position in [0,1]
    return 0.5 * len * (std::abs(u0) * t + std::abs(u1) * (1.0 - t));
  }
  return 0.5 * len * (std::abs(u0) + std::abs(u1));
}

double assemble_l1(const TrigPolynomial& P, std::int64_t lo, std::int64_t hi,
                   const PiecewiseConstant& h, const IntervalSet& set,
                   const std::vector<double>& grid) {
  const std::size_t M = grid.size();
  const double step = kTwoPi / double(M);
  const auto& hbreaks = h.breakpoints();
  double total = 0.0;
  for (const auto& piece : set.pieces()) {
    double a = pi_units_to_radians(piece.first);
    double b = pi_units_to_radians(piece.second);
    if (b <= a) continue;
    // Node list: grid points in [a,b] plus a, b, plus h's breakpoints.
    std::vector<std::pair<double, double>> nodes;  // (x, S(x))
    nodes.emplace_back(a, P.eval_range(lo, hi, a));
    std::size_t j0 = std::size_t(std::ceil(a / step));
    std::size_t j1 = M == 0 ? 0 : std::size_t(std::floor(b / step));
    for (std::size_t j = j0; j <= j1 && j < M; ++j) {
      double x = double(j) * step;
      if (x > a && x < b) nodes.emplace_back(x, grid[j]);
    }
    for (double x : hbreaks)
      if (x > a && x < b) nodes.emplace_back(x, P.eval_range(lo, hi, x));
    nodes.emplace_back(b, P.eval_range(lo, hi, b));
    std::sort(nodes.begin(), nodes.end());
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
      double x0 = nodes[i].first, x1 = nodes[i + 1].first;
      if (x1 - x0 < 1e-15) continue;
      double hv = h.eval(0.5 * (x0 + x1));
      total += cell_abs_trapezoid(nodes[i].second - hv, nodes[i + 1].second - hv,
                                  x1 - x0);
    }
  }
  return total;
}

}  // namespace

double sampled_l1_error(const TrigPolynomial& P, std::int64_t lo,
                        std::int64_t hi, const PiecewiseConstant& h,
                        const IntervalSet& set, double tol) {
  hi = std::min(hi, P.max_freq());
  std::vector<Complex> c(std::size_t(std::max<std::int64_t>(hi, 0)) + 1,
                         Complex{});
  for (std::int64_t k = std::max<std::int64_t>(lo, 0); k <= hi; ++k)
    c[std::size_t(k)] = P.coeff(k);
  double prev = -1.0;
  std::size_t M = 256;
  while (M < 32 * c.size()) M <<= 1;
  for (int round = 0; round < 6; ++round, M <<= 1) {
    if (M > (std::size_t(1) << 23)) break;
    auto grid = detail::eval_on_grid(c, M);
    double est = assemble_l1(P, lo, hi, h, set, grid);
    if (prev >= 0.0 && std::abs(est - prev) < tol * 0.5) return est;
    prev = est;
  }
  return prev;
}

double sampled_partial_l1(const TrigPolynomial& P, std::int64_t lo,
                          std::int64_t hi, const IntervalSet& set, double tol) {
  static const PiecewiseConstant kZero{};
  return sampled_l1_error(P, lo, hi, kZero, set, tol);
}

}  // namespace useries
