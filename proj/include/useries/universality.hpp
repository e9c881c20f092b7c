#pragma once

#include <functional>
#include <string>
#include <vector>

#include "useries/series.hpp"
#include "useries/weight.hpp"

namespace useries {

/// A target function for the universality procedures: an evaluator plus the
/// breakpoints the quadrature must split at.
struct Integrand {
  std::function<double(double)> fn;
  std::vector<double> breakpoints;
  std::string name = "target";
};

Integrand integrand_zero();
Integrand integrand_from_step(const StepFunction& f, std::string name = "step");
Integrand integrand_signum();    // -1 on [0,pi), +1 on [pi,2pi)
Integrand integrand_sawtooth();  // x - pi

/// One greedy stage: block nu emitted in full, then the filler frequency m.
struct RearrangeStage {
  int q = 0;
  int nu = 0;           // block index nu_q
  std::int64_t m = 0;   // filler frequency m_q
  double match_error = 0.0;  // ||residual - f_nu|| in the weighted metric
  double error = 0.0;        // ||target - emitted prefix|| after the stage
  double bound = 0.0;        // 2*2^{-2q} + 2pi|C_m|
  double bound_paired = 0.0; // 2*2^{-2q} + 4pi|C_m| (conjugate-pair reading)
  bool ok = false;           // error <= bound_paired + 10*tol
  bool ok_strict = false;    // error <= bound + 10*tol
};

struct RearrangementPlan {
  int Q = 0;
  double tol = 0.0;
  std::vector<RearrangeStage> stages;
  std::vector<std::int64_t> atoms;  // emitted frequency-pair atoms, in order
  bool complete = true;  // every requested stage found an admissible block
  std::vector<std::string> diagnostics;
};

/// Greedy rearrangement of the series toward the target in the weighted
/// metric: per stage, a fresh block whose step function matches the current
/// residual within 2^{-2q}, then the smallest unused filler frequency.
/// Runs with quadrature tolerance 2^{-2Q}/100. Stops early with a floor
/// report when no admissible block remains.
RearrangementPlan rearrange_to_target(const Integrand& target,
                                      const UniversalSeries& series,
                                      const Weight& w, int Q);

/// Builds the cumulative-mode series: block n approximates the dyadic
/// projection of f_n minus the sum of all earlier blocks, so the running
/// partial sums themselves track the enumeration.
UniversalSeries build_usual_series(int S, const LemmaConfig& cfg = {});

struct UsualStage {
  int k = 0;
  int n = 0;                 // selected enumeration/block index n_k
  std::int64_t M = 0;        // M_k = N_{n_k} - 1
  double match_error = 0.0;  // ||target - f_{n_k}|| in the weighted metric
  double error = 0.0;        // ||target - S_{M_k}|| in the weighted metric
  double envelope = 0.0;     // 2^{-2k} + 2^{-2n_k}
  bool ok = false;
};

struct UsualSenseSelection {
  int K = 0;
  double tol = 0.0;
  std::vector<UsualStage> stages;
  bool complete = true;
  std::vector<std::string> diagnostics;
};

/// Picks strictly increasing indices n_k with the target within 2^{-2k} of
/// f_{n_k} in the weighted metric, and reports the partial-sum errors at
/// M_k = N_{n_k} - 1 against the 2^{-2k} + 2^{-2n_k} envelope. Requires a
/// cumulative-mode series.
UsualSenseSelection usual_sense_select(const Integrand& target,
                                       const UniversalSeries& series,
                                       const Weight& w, int K);

/// CSV traces: stage, terms_emitted, error, bound, margin.
std::string convergence_report(const RearrangementPlan& plan);
std::string convergence_report(const UsualSenseSelection& sel);

}  // namespace useries
