#include "useries/series.hpp"

#include <cmath>

namespace useries {

namespace {

StepFunction refine_until_admissible(const StepFunction& f, const Rat& eps,
                                     std::string* why) {
  StepFunction g = f;
  int depth = f.max_depth();
  while (!step_lemma_precondition(g, eps)) {
    ++depth;
    if (depth > 30) {
      *why = "no admissible refinement within depth 30";
      return g;
    }
    g = f.refined_to(depth);
  }
  why->clear();
  return g;
}

}  // namespace

UniversalSeries build_universal_series(int S, const LemmaConfig& cfg) {
  if (S < 1) throw ValidationError("block count must be at least 1");
  UniversalSeries series;
  series.S = S;
  std::int64_t N_prev = 1;
  for (int s = 1; s <= S; ++s) {
    BlockRecord b;
    b.s = s;
    b.enum_index = std::uint64_t(s);
    b.eps_s = pow2_inv(2 * (s + 1));
    StepFunction f_s = enumerate_step_function(b.enum_index);
    std::string why;
    b.f = refine_until_admissible(f_s, b.eps_s, &why);
    if (!why.empty()) {
      series.complete = false;
      series.diagnostics.push_back("block " + std::to_string(s) + ": " + why);
      break;
    }
    b.out = lemma_construct(b.f, b.eps_s, std::max<std::int64_t>(3, N_prev + 1),
                            cfg);
    if (!b.out.budget_ok) {
      series.complete = false;
      for (const auto& d : b.out.diagnostics)
        series.diagnostics.push_back("block " + std::to_string(s) + ": " + d);
      break;
    }
    b.range = BlockRange{s, N_prev, b.out.N};
    for (std::int64_t k = b.out.N0; k < b.out.N; ++k)
      series.C.set_coeff(k, b.out.P.coeff(k));
    if (series.C.max_freq() < b.out.N - 1) series.C.set_coeff(b.out.N - 1, {});

    const double eps_d = to_double(b.eps_s);
    b.measure_ok = (Rat(2) - b.out.E.measure_pi()) * pi_upper() < b.eps_s;
    b.l1_error =
        sampled_l1_error(b.out.P, b.out.N0, b.out.N - 1,
                         PiecewiseConstant::from_step(b.f), b.out.E,
                         eps_d / 1000.0);
    b.l1_ok = b.l1_error < eps_d * 1.01;
    const double bound_s = std::ldexp(1.0, -2 * s);
    b.power_sum = coeff_power_sum(b.out.P, b.range.lo, b.range.hi,
                                  2.0 + bound_s);
    b.power_ok = b.power_sum < bound_s;
    LemmaReport rep =
        verify_lemma(b.out, b.f, b.eps_s, 5, cfg, std::uint64_t(s));
    b.partial_ok = true;
    for (const auto& c : rep.checks)
      if (c.name.rfind("partial_sum", 0) == 0) b.partial_ok &= c.pass;
    b.budget_ok = b.out.budget_ok;

    N_prev = b.out.N;
    series.blocks.push_back(std::move(b));
  }
  return series;
}

double coefficient_decay_report(const UniversalSeries& series, double q) {
  if (q <= 2.0) throw ValidationError("decay report requires q > 2");
  return coeff_power_sum(series.C, 1, series.N_end(), q);
}

}  // namespace useries
