#include "useries/weight.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "useries/quadrature.hpp"

namespace useries {

Weight::Weight(Rat eps, int n0, std::vector<Part> parts, IntervalSet E,
               IntervalSet B)
    : eps_(std::move(eps)),
      n0_(n0),
      parts_(std::move(parts)),
      E_(std::move(E)),
      B_(std::move(B)) {
  Rat total = 0;
  for (const Part& p : parts_) {
    if (!(p.level > 0.0 && p.level <= 1.0))
      throw ValidationError("weight level outside (0,1]");
    total += p.set.measure_pi();
  }
  if (total != Rat(2))
    throw ValidationError("weight partition does not cover the circle");
}

Weight Weight::one() {
  std::vector<Part> parts{{IntervalSet::full(), 0, 1.0}};
  return Weight(Rat(1), 0, std::move(parts), IntervalSet::full(),
                IntervalSet::full());
}

double Weight::eval(double x) const {
  const double pi = std::acos(-1.0);
  double y = std::fmod(x / pi, 2.0);
  if (y < 0) y += 2.0;
  return eval_pi(round_dyadic(y, 40));
}

double Weight::eval_pi(const Rat& x_pi) const {
  for (const Part& p : parts_)
    if (p.set.contains(x_pi)) return p.level;
  return 1.0;  // measure-zero seams between half-open pieces
}

Rat Weight::measure_ne1_pi() const {
  Rat m = 0;
  for (const Part& p : parts_)
    if (p.level != 1.0) m += p.set.measure_pi();
  return m;
}

std::vector<double> Weight::breakpoints() const {
  std::vector<double> out;
  for (const Part& p : parts_) {
    std::vector<double> b = p.set.breakpoints();
    out.insert(out.end(), b.begin(), b.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

IntervalSet build_omega(int n, const UniversalSeries& series) {
  if (n < 1 || n > series.S)
    throw ValidationError("omega index outside built depth");
  IntervalSet omega = IntervalSet::full();
  for (const BlockRecord& b : series.blocks)
    if (b.s >= n) omega = omega.intersect(b.out.E);
  return omega;
}

double compute_h(int s, const UniversalSeries& series) {
  if (s < 1 || s > int(series.blocks.size()))
    throw ValidationError("block index outside built depth");
  const BlockRecord& b = series.blocks[std::size_t(s - 1)];
  double f_sup = to_double(b.f.max_abs_value());
  double p_sup = 0.0;
  const std::int64_t lo = b.range.lo, hi = b.range.hi;  // p in [lo, hi)
  const std::int64_t count = hi - lo;
  const std::int64_t samples = std::min<std::int64_t>(count, 256);
  for (std::int64_t j = 0; j < samples; ++j) {
    std::int64_t p = (samples == 1)
                         ? hi - 1
                         : lo + (count - 1) * j / (samples - 1);
    p_sup = std::max(p_sup, sup_norm_range(series.C, lo, p));
  }
  return f_sup + p_sup + 1.0;
}

Weight build_weight(const Rat& eps, const UniversalSeries& series) {
  if (!(eps > 0 && eps < 1)) throw ValidationError("eps must lie in (0,1)");
  if (!series.complete) throw ValidationError("series is incomplete");
  const int n0 = floor_log2_inverse(eps) + 1;
  if (series.S < n0 + 1)
    throw ValidationError("series depth " + std::to_string(series.S) +
                          " too shallow for eps (need S >= " +
                          std::to_string(n0 + 1) + ")");

  IntervalSet E = build_omega(n0, series);
  IntervalSet B = build_omega(series.S, series);  // = Omega_S, the largest

  std::vector<Weight::Part> parts;
  parts.push_back({E.unite(B.complement()), 0, 1.0});

  double log_prod_h = 0.0;
  for (int s = 1; s <= n0; ++s) log_prod_h += std::log(compute_h(s, series));
  IntervalSet prev = E;
  for (int n = n0 + 1; n <= series.S; ++n) {
    log_prod_h += std::log(compute_h(n, series));
    IntervalSet omega = build_omega(n, series);
    IntervalSet shell = omega.difference(prev);
    const double level =
        std::exp(-(4.0 * n * std::log(2.0) + log_prod_h));
    if (!shell.empty()) parts.push_back({shell, n, level});
    prev = omega;
  }
  return Weight(eps, n0, std::move(parts), std::move(E), std::move(B));
}

double weighted_l1(const std::function<double(double)>& fn,
                   const std::vector<double>& fn_breakpoints, const Weight& w,
                   double tol) {
  double total = 0.0;
  const double part_tol = tol / double(std::max<std::size_t>(
                                    w.parts().size(), 1));
  for (const Weight::Part& p : w.parts()) {
    quad::Result r = quad::l1_norm(fn, fn_breakpoints, p.set,
                                   part_tol / std::max(p.level, 1e-300));
    total += p.level * r.value;
  }
  return total;
}

std::vector<CheckResult> weight_tail_report(const UniversalSeries& series,
                                            const Weight& w, double tol) {
  std::vector<CheckResult> out;
  for (const BlockRecord& b : series.blocks) {
    if (b.s < w.n0()) continue;
    IntervalSet omega_s = build_omega(b.s, series);
    IntervalSet outside = omega_s.complement();
    const std::int64_t lo = b.range.lo, hi = b.range.hi;
    const std::int64_t count = hi - lo;
    const std::int64_t samples = std::min<std::int64_t>(count, 8);
    const double bound = std::ldexp(1.0, -4 * b.s) + tol;
    for (std::int64_t j = 0; j < samples; ++j) {
      std::int64_t p = (samples == 1)
                           ? hi - 1
                           : lo + (count - 1) * j / (samples - 1);
      auto fn = [&](double x) { return series.C.eval_range(lo, p, x); };
      double val = 0.0;
      for (const Weight::Part& part : w.parts()) {
        IntervalSet region = part.set.intersect(outside);
        if (region.empty()) continue;
        quad::Result r = quad::l1_norm(fn, {}, region, tol / 10.0);
        val += part.level * r.value;
      }
      CheckResult c;
      c.name = "tail[s=" + std::to_string(b.s) + ",p=" + std::to_string(p) +
               "]";
      c.value = val;
      c.bound = bound;
      c.margin = bound - val;
      c.pass = val < bound;
      out.push_back(std::move(c));
    }
  }
  return out;
}

}  // namespace useries
