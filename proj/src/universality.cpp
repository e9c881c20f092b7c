#include "useries/universality.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <set>
#include <sstream>

#include "useries/quadrature.hpp"

namespace useries {

namespace {

const double kPi = std::acos(-1.0);

std::vector<double> merge_breaks(std::vector<double> a,
                                 const std::vector<double>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

/// Weighted L1 distance between the target and an arbitrary evaluator.
double wdist(const Integrand& t, const std::function<double(double)>& approx,
             const std::vector<double>& approx_breaks, const Weight& w,
             double tol) {
  auto diff = [&](double x) { return t.fn(x) - approx(x); };
  return weighted_l1(diff, merge_breaks(t.breakpoints, approx_breaks), w, tol);
}

double eval_poly(const TrigPolynomial& P, double x) {
  return P.max_freq() < 0 ? 0.0 : P.eval_range(0, P.max_freq(), x);
}

/// Exact integral of the polynomial over [a,b] (radians).
double poly_integral(const TrigPolynomial& P, double a, double b) {
  if (P.max_freq() < 0) return 0.0;
  double v = P.coeff(0).real() * (b - a);
  for (std::int64_t k = 1; k <= P.max_freq(); ++k) {
    Complex c = P.coeff(k);
    if (c == Complex{}) continue;
    Complex ik(0.0, double(k));
    Complex win = (std::exp(ik * b) - std::exp(ik * a)) / ik;
    v += 2.0 * (c * win).real();
  }
  return v;
}

/// Average of (target - emitted) over a dyadic cell.
double residual_cell_average(const Integrand& t, const TrigPolynomial& em,
                             const DyadicInterval& cell, double tol) {
  const double a = to_double(cell.lo_pi()) * kPi;
  const double b = to_double(cell.hi_pi()) * kPi;
  quad::Result r = quad::integrate(t.fn, a, b, t.breakpoints, tol);
  return (r.value - poly_integral(em, a, b)) / (b - a);
}

/// Fast path of the block search: the residual's dyadic projection is
/// compared cell-by-cell against each candidate's enumerated step function.
int lookup_block(const Integrand& t, const TrigPolynomial& em,
                 const UniversalSeries& series, const std::set<int>& used,
                 int lo_nu) {
  const double scale = to_double(enumeration_scale());
  for (int s = lo_nu; s <= int(series.blocks.size()); ++s) {
    if (used.count(s)) continue;
    StepFunction fs = enumerate_step_function(std::uint64_t(s));
    const int d = std::max(fs.max_depth(), 1);
    const std::int64_t cells = std::int64_t(1) << d;
    bool match = true;
    for (std::int64_t i = 1; i <= cells && match; ++i) {
      DyadicInterval cell(d, i);
      double avg = residual_cell_average(t, em, cell, scale * 1e-6);
      double want = to_double(fs.eval_pi((cell.lo_pi() + cell.hi_pi()) / 2));
      if (std::abs(avg - want) > scale * 1e-2 + 1e-18) match = false;
    }
    if (match) return s;
  }
  return 0;
}

}  // namespace

Integrand integrand_zero() {
  return {[](double) { return 0.0; }, {}, "zero"};
}

Integrand integrand_from_step(const StepFunction& f, std::string name) {
  return {[f](double x) { return f.eval(x); }, f.breakpoints(),
          std::move(name)};
}

Integrand integrand_signum() {
  return {[](double x) {
            double y = std::fmod(x, 2.0 * kPi);
            if (y < 0) y += 2.0 * kPi;
            return y < kPi ? -1.0 : 1.0;
          },
          {kPi},
          "signum"};
}

Integrand integrand_sawtooth() {
  return {[](double x) {
            double y = std::fmod(x, 2.0 * kPi);
            if (y < 0) y += 2.0 * kPi;
            return y - kPi;
          },
          {},
          "sawtooth"};
}

RearrangementPlan rearrange_to_target(const Integrand& target,
                                      const UniversalSeries& series,
                                      const Weight& w, int Q) {
  if (Q < 1) throw ValidationError("stage count must be at least 1");
  if (!series.complete) throw ValidationError("series is incomplete");
  RearrangementPlan plan;
  plan.Q = Q;
  plan.tol = std::ldexp(1.0, -2 * Q) / 100.0;
  const double tol = plan.tol;

  TrigPolynomial em;  // emitted prefix of the series
  std::set<int> used_blocks;
  std::set<std::int64_t> emitted;
  int prev_nu = 0;
  double prev_error = 0.0;
  for (int q = 1; q <= Q; ++q) {
    const int lo_nu = std::max(prev_nu + 1, w.n0() + 2);
    const double budget = std::ldexp(1.0, -2 * q);

    // Post-stage state for a hypothetical candidate: the emitted prefix plus
    // the candidate block plus the filler the emission would force.
    auto with_candidate = [&](int s) {
      TrigPolynomial trial = em;
      const BlockRange& r = series.blocks[std::size_t(s - 1)].range;
      std::int64_t m = 1;
      for (std::int64_t k = r.lo; k < r.hi; ++k)
        if (!emitted.count(k)) trial.set_coeff(k, series.C.coeff(k));
      while (emitted.count(m) || (m >= r.lo && m < r.hi)) ++m;
      trial.set_coeff(m, series.C.coeff(m));
      return std::pair<TrigPolynomial, std::int64_t>(std::move(trial), m);
    };

    // Admissible candidates: unused, beyond the ladder start, matching the
    // current residual within the stage budget.
    int nu = 0;
    double match = 0.0, post = 0.0;
    int fast = lookup_block(target, em, series, used_blocks, lo_nu);
    std::vector<int> candidates;
    if (fast > 0) candidates.push_back(fast);
    for (int s = lo_nu; s <= int(series.blocks.size()); ++s)
      if (s != fast && !used_blocks.count(s)) candidates.push_back(s);
    for (int s : candidates) {
      StepFunction fs = enumerate_step_function(std::uint64_t(s));
      double d = wdist(
          target,
          [&](double x) { return eval_poly(em, x) + fs.eval(x); },
          fs.breakpoints(), w, tol);
      if (d >= budget) continue;
      auto [trial, m] = with_candidate(s);
      double e = wdist(target,
                       [&](double x) { return eval_poly(trial, x); }, {}, w,
                       tol);
      if (nu == 0 || e < post) {
        nu = s;
        match = d;
        post = e;
      }
      if (s == fast && (q == 1 || e < prev_error)) break;  // lookup hit wins
    }
    if (nu == 0) {
      plan.complete = false;
      plan.diagnostics.push_back(
          "stage " + std::to_string(q) +
          ": no admissible block within the built depth (floor report)");
      break;
    }
    if (q > 1 && post >= prev_error) {
      plan.complete = false;
      plan.diagnostics.push_back(
          "stage " + std::to_string(q) +
          ": no strictly decreasing continuation; achieved floor " +
          std::to_string(prev_error));
      break;
    }

    used_blocks.insert(nu);
    const BlockRange& r = series.blocks[std::size_t(nu - 1)].range;
    for (std::int64_t k = r.lo; k < r.hi; ++k) {
      if (emitted.count(k)) continue;  // already emitted as a filler
      emitted.insert(k);
      plan.atoms.push_back(k);
      em.set_coeff(k, series.C.coeff(k));
    }
    std::int64_t m = 1;
    while (emitted.count(m)) ++m;
    emitted.insert(m);
    plan.atoms.push_back(m);
    em.set_coeff(m, series.C.coeff(m));

    RearrangeStage st;
    st.q = q;
    st.nu = nu;
    st.m = m;
    st.match_error = match;
    st.error = post;
    prev_error = post;
    const double cm = std::abs(
        m <= series.C.max_freq() ? series.C.coeff(m) : Complex{});
    st.bound = 2.0 * budget + 2.0 * kPi * cm;
    st.bound_paired = 2.0 * budget + 4.0 * kPi * cm;
    st.ok_strict = st.error <= st.bound + 10.0 * tol;
    st.ok = st.error <= st.bound_paired + 10.0 * tol;
    plan.stages.push_back(std::move(st));
    prev_nu = nu;
  }
  return plan;
}

UniversalSeries build_usual_series(int S, const LemmaConfig& cfg) {
  if (S < 1) throw ValidationError("block count must be at least 1");
  UniversalSeries series;
  series.S = S;
  series.cumulative = true;
  std::int64_t N_prev = 1;
  for (int n = 1; n <= S; ++n) {
    BlockRecord b;
    b.s = n;
    b.enum_index = std::uint64_t(n);
    b.eps_s = pow2_inv(2 * (n + 1));
    StepFunction f_n = enumerate_step_function(b.enum_index);
    Integrand tgt = integrand_from_step(f_n);

    // Project f_n minus the running sum onto a dyadic grid, deepening until
    // the result is admissible.
    int depth = std::max(f_n.max_depth(), 1);
    const int depth_cap = f_n.max_depth() + 3;
    StepFunction proj;
    bool admissible = false;
    for (; depth <= depth_cap; ++depth) {
      const std::int64_t cells = std::int64_t(1) << depth;
      std::vector<Rat> values;
      values.reserve(std::size_t(cells));
      for (std::int64_t i = 1; i <= cells; ++i) {
        DyadicInterval cell(depth, i);
        // The cell is below f_n's grid, so the midpoint value is the exact
        // cell average of f_n; the running sum contributes its closed-form
        // cell average.
        const double a = to_double(cell.lo_pi()) * kPi;
        const double bb = to_double(cell.hi_pi()) * kPi;
        double avg = to_double(f_n.eval_pi((cell.lo_pi() + cell.hi_pi()) / 2));
        avg -= poly_integral(series.C, a, bb) / (bb - a);
        values.push_back(round_dyadic(avg, 48));
      }
      proj = StepFunction::from_grid(depth, values);
      if (step_lemma_precondition(proj, b.eps_s)) {
        admissible = true;
        break;
      }
    }
    if (!admissible) {
      series.complete = false;
      series.diagnostics.push_back("block " + std::to_string(n) +
                                   ": no admissible projection");
      break;
    }
    b.f = proj;
    b.out = lemma_construct(b.f, b.eps_s, std::max<std::int64_t>(3, N_prev + 1),
                            cfg);
    if (!b.out.budget_ok) {
      series.complete = false;
      for (const auto& d : b.out.diagnostics)
        series.diagnostics.push_back("block " + std::to_string(n) + ": " + d);
      break;
    }
    b.range = BlockRange{n, N_prev, b.out.N};
    for (std::int64_t k = b.out.N0; k < b.out.N; ++k)
      series.C.set_coeff(k, b.out.P.coeff(k));
    if (series.C.max_freq() < b.out.N - 1) series.C.set_coeff(b.out.N - 1, {});

    b.measure_ok = (Rat(2) - b.out.E.measure_pi()) * pi_upper() < b.eps_s;
    // Cumulative check: the running sum tracks f_n itself on E_n.
    const double cum_bound = std::ldexp(1.0, -n);
    auto cum = [&](double x) {
      return f_n.eval(x) - series.C.eval_range(0, series.C.max_freq(), x);
    };
    b.l1_error =
        quad::l1_norm(cum, f_n.breakpoints(), b.out.E, cum_bound / 1000.0)
            .value;
    b.l1_ok = b.l1_error < cum_bound * 1.01;
    const double bound_s = std::ldexp(1.0, -2 * n);
    b.power_sum = coeff_power_sum(b.out.P, b.range.lo, b.range.hi,
                                  2.0 + bound_s);
    b.power_ok = b.power_sum < bound_s;
    LemmaReport rep =
        verify_lemma(b.out, b.f, b.eps_s, 3, cfg, std::uint64_t(n));
    b.partial_ok = true;
    for (const auto& c : rep.checks)
      if (c.name.rfind("partial_sum", 0) == 0) b.partial_ok &= c.pass;
    b.budget_ok = b.out.budget_ok;

    N_prev = b.out.N;
    series.blocks.push_back(std::move(b));
  }
  return series;
}

UsualSenseSelection usual_sense_select(const Integrand& target,
                                       const UniversalSeries& series,
                                       const Weight& w, int K) {
  if (K < 1) throw ValidationError("stage count must be at least 1");
  if (!series.cumulative)
    throw ValidationError("selection requires a cumulative-mode series");
  UsualSenseSelection sel;
  sel.K = K;
  sel.tol = std::ldexp(1.0, -2 * K) / 100.0;
  int prev_n = 0;
  for (int k = 1; k <= K; ++k) {
    const double budget = std::ldexp(1.0, -2 * k);
    int n = 0;
    double match = 0.0;
    for (int cand = prev_n + 1; cand <= int(series.blocks.size()); ++cand) {
      StepFunction fc = enumerate_step_function(std::uint64_t(cand));
      double d = wdist(target, [&](double x) { return fc.eval(x); },
                       fc.breakpoints(), w, sel.tol);
      if (d < budget) {
        n = cand;
        match = d;
        break;
      }
    }
    if (n == 0) {
      sel.complete = false;
      sel.diagnostics.push_back("stage " + std::to_string(k) +
                                ": envelope unreachable within built depth");
      break;
    }
    UsualStage st;
    st.k = k;
    st.n = n;
    st.M = series.blocks[std::size_t(n - 1)].range.hi - 1;
    st.match_error = match;
    st.error = wdist(
        target,
        [&](double x) { return series.C.eval_range(0, st.M, x); }, {}, w,
        sel.tol);
    st.envelope = budget + std::ldexp(1.0, -2 * n);
    st.ok = st.error < st.envelope + 10.0 * sel.tol;
    sel.stages.push_back(st);
    prev_n = n;
  }
  return sel;
}

std::string convergence_report(const RearrangementPlan& plan) {
  std::ostringstream os;
  os << "stage,terms_emitted,error,bound,margin\n";
  // Each stage ends with its filler atom, so the cumulative term count is
  // the position just past that filler in the emitted order.
  std::size_t pos = 0;
  for (const RearrangeStage& st : plan.stages) {
    while (pos < plan.atoms.size() && plan.atoms[pos] != st.m) ++pos;
    if (pos < plan.atoms.size()) ++pos;
    os << st.q << ',' << pos << ',' << st.error << ',' << st.bound_paired
       << ',' << (st.bound_paired - st.error) << '\n';
  }
  return os.str();
}

std::string convergence_report(const UsualSenseSelection& sel) {
  std::ostringstream os;
  os << "stage,terms_emitted,error,bound,margin\n";
  for (const UsualStage& st : sel.stages)
    os << st.k << ',' << (2 * st.M + 1) << ',' << st.error << ','
       << st.envelope << ',' << (st.envelope - st.error) << '\n';
  return os.str();
}

}  // namespace useries
