#include "useries/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace useries {
namespace quad {

namespace {

// Gauss-Legendre nodes/weights of order 16 on [-1,1] (positive half; the
// rule is symmetric).
constexpr int kHalf = 8;
constexpr double kNodes[kHalf] = {
    0.0950125098376374401853193, 0.2816035507792589132304605,
    0.4580167776572273863424194, 0.6178762444026437484466718,
    0.7554044083550030338951012, 0.8656312023878317438804679,
    0.9445750230732325760779884, 0.9894009349916499325961542};
constexpr double kWeights[kHalf] = {
    0.1894506104550684962853967, 0.1826034150449235888667637,
    0.1691565193950025381893121, 0.1495959888165767320815017,
    0.1246289712555338720524763, 0.0951585116824927848099251,
    0.0622535239386478928628438, 0.0271524594117540948517806};

double gl16(const RealFn& fn, double a, double b) {
  double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double sum = 0.0;
  for (int i = 0; i < kHalf; ++i)
    sum += kWeights[i] * (fn(c - h * kNodes[i]) + fn(c + h * kNodes[i]));
  return sum * h;
}

struct Accum {
  double value = 0.0;
  double err = 0.0;
  long panels = 0;
  bool converged = true;
};

void adapt(const RealFn& fn, double a, double b, double tol_density, int depth,
           int max_depth, Accum& acc) {
  double whole = gl16(fn, a, b);
  double mid = 0.5 * (a + b);
  double split = gl16(fn, a, mid) + gl16(fn, mid, b);
  double diff = std::abs(whole - split);
  if (diff <= tol_density * (b - a) || depth >= max_depth) {
    acc.value += split;
    acc.err += diff;
    acc.panels += 2;
    if (depth >= max_depth && diff > tol_density * (b - a))
      acc.converged = false;
    return;
  }
  adapt(fn, a, mid, tol_density, depth + 1, max_depth, acc);
  adapt(fn, mid, b, tol_density, depth + 1, max_depth, acc);
}

std::vector<double> panel_edges(double a, double b,
                                std::vector<double> breakpoints) {
  std::vector<double> edges;
  edges.push_back(a);
  std::sort(breakpoints.begin(), breakpoints.end());
  for (double x : breakpoints)
    if (x > a + 1e-15 && x < b - 1e-15 &&
        (edges.empty() || x > edges.back() + 1e-15))
      edges.push_back(x);
  edges.push_back(b);
  return edges;
}

// Locates a zero crossing of fn in [lo,hi] by bisection; lo/hi must bracket.
double bisect_crossing(const RealFn& fn, double lo, double hi) {
  double flo = fn(lo);
  for (int it = 0; it < 60 && hi - lo > 1e-14; ++it) {
    double mid = 0.5 * (lo + hi);
    double fm = fn(mid);
    if ((flo <= 0) == (fm <= 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Adaptive integration of |fn| over one panel: split at detected sign
// changes, then adapt as usual.
void adapt_abs(const RealFn& fn, double a, double b, double tol_density,
               int depth, int max_depth, Accum& acc) {
  if (b - a < 1e-14) return;
  if (depth < max_depth) {
    // Probe a few points for a sign change; split the panel there.
    constexpr int kProbe = 9;
    double prev_x = a, prev_v = fn(a);
    for (int i = 1; i <= kProbe; ++i) {
      double x = a + (b - a) * i / kProbe;
      double v = fn(x);
      if ((prev_v < 0) != (v < 0) && prev_v != 0 && v != 0) {
        double cross = bisect_crossing(fn, prev_x, x);
        if (cross > a + 1e-14 && cross < b - 1e-14) {
          adapt_abs(fn, a, cross, tol_density, depth + 1, max_depth, acc);
          adapt_abs(fn, cross, b, tol_density, depth + 1, max_depth, acc);
          return;
        }
      }
      prev_x = x;
      prev_v = v;
    }
  }
  auto absfn = [&fn](double x) { return std::abs(fn(x)); };
  adapt(absfn, a, b, tol_density, depth, max_depth, acc);
}

}  // namespace

Result integrate(const RealFn& fn, double a, double b,
                 std::vector<double> breakpoints, double tol, int max_depth) {
  Accum acc;
  if (b <= a) return {};
  double tol_density = tol / (b - a);
  auto edges = panel_edges(a, b, std::move(breakpoints));
  for (std::size_t j = 0; j + 1 < edges.size(); ++j)
    adapt(fn, edges[j], edges[j + 1], tol_density, 0, max_depth, acc);
  return {acc.value, acc.err, acc.converged, acc.panels};
}

Result l1_norm(const RealFn& fn, const std::vector<double>& breakpoints,
               const IntervalSet& set, double tol, int max_depth) {
  Accum acc;
  double total = set.measure();
  if (total <= 0) return {};
  double tol_density = tol / total;
  for (const auto& piece : set.pieces()) {
    double a = pi_units_to_radians(piece.first);
    double b = pi_units_to_radians(piece.second);
    auto edges = panel_edges(a, b, breakpoints);
    for (std::size_t j = 0; j + 1 < edges.size(); ++j)
      adapt_abs(fn, edges[j], edges[j + 1], tol_density, 0, max_depth, acc);
  }
  return {acc.value, acc.err, acc.converged, acc.panels};
}

std::complex<double> integrate_complex(
    const std::function<std::complex<double>(double)>& fn, double a, double b,
    std::vector<double> breakpoints, double tol) {
  Result re = integrate([&fn](double x) { return fn(x).real(); }, a, b,
                        breakpoints, tol);
  Result im = integrate([&fn](double x) { return fn(x).imag(); }, a, b,
                        breakpoints, tol);
  return {re.value, im.value};
}

}  // namespace quad
}  // namespace useries
