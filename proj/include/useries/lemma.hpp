#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "useries/gap.hpp"
#include "useries/interval.hpp"
#include "useries/trig.hpp"

namespace useries {

struct LemmaConfig {
  std::int64_t N_cap = std::int64_t(1) << 16;
  int nu_cap_log2 = 60;
  int m_subsample = 128;   // partial-sum indices checked per verification
  double grid_factor = 8;  // grid density relative to the top frequency
};

/// One approximation piece: the oscillating function g_s, its plateau set
/// E_s, and the frequency block [block_lo, block_hi) it occupies in P.
struct LemmaPiece {
  GapPiece gs;
  std::int64_t block_lo = 0;
  std::int64_t block_hi = 0;
  IntervalSet Es;
  double l1_error = 0.0;        // achieved full-partial-sum L1 error
  double block_l1_error = 0.0;  // achieved truncated-block L1 error
  bool budget_ok = true;
};

struct LemmaOutput {
  Rat eps;
  std::int64_t N0 = 3;
  std::int64_t N = 3;  // coefficients live at N0 <= |k| < N
  TrigPolynomial P;
  IntervalSet E;
  std::vector<LemmaPiece> pieces;
  bool budget_ok = true;
  std::vector<std::string> diagnostics;
};

struct CheckResult {
  std::string name;
  bool pass = false;
  double value = 0.0;
  double bound = 0.0;
  double margin = 0.0;  // bound - value (positive is good)
};

struct LemmaReport {
  std::vector<CheckResult> checks;
  bool pass = true;
  double worst_margin = 0.0;
  std::string worst_check;
};

/// The scaled plateau function g(x) from the construction; branch value 1 or
/// 1 - 2/eps with the dip half-open.
double gap_eval(const Rat& eps, double x);

/// g_s = gamma * g(nu x) * chi_delta as an exact piecewise-constant function.
PiecewiseConstant build_gs(const Rat& gamma, const DyadicInterval& delta,
                           std::int64_t nu, const Rat& eps);

/// E_s = {x in delta : g_s(x) = gamma}; delta itself when gamma == 0.
IntervalSet exact_Es(const DyadicInterval& delta, std::int64_t nu,
                     const Rat& eps, const Rat& gamma);

/// Smallest nu in the doubling sequence {2^m_delta * 2^t}, nu > nu_prev, whose
/// scaled plateau piece has all low-frequency coefficients |k| < N_prev below
/// min(eps/(16 sqrt(N_prev)), eps/(2^{s+2} * 2pi * sqrt(2 N_prev))).
/// The second term strengthens the classical bound so the truncated block
/// retains its L1 budget at every stage. gap_eps is the dip parameter used
/// for the piece (the construction passes eps/8).
std::int64_t select_nu(const Rat& gap_eps, const Rat& eps, int s,
                       std::int64_t N_prev, const Rat& gamma,
                       const DyadicInterval& delta, std::int64_t nu_prev,
                       const LemmaConfig& cfg);

struct SelectNResult {
  std::int64_t N = 0;
  std::vector<Complex> coeffs;  // C_k for 0 <= k < N
  double l1_error = 0.0;        // int |S_N - g_s|
  double block_l1_error = 0.0;  // int |sum over N_prev <= |k| < N - g_s|
  bool ok = true;
  std::string message;
};

/// Doubling search for the smallest N > N_prev with full-partial-sum L1
/// error <= eps/4^{s+1}; also records the truncated-block error, which must
/// come in under eps/2^{s+1}. On budget exhaustion returns the best achieved
/// state with ok = false.
SelectNResult select_N(const GapPiece& gs, int s, const Rat& eps,
                       std::int64_t N_prev, const LemmaConfig& cfg);

LemmaOutput lemma_construct(const StepFunction& f, const Rat& eps,
                            std::int64_t N0, const LemmaConfig& cfg = {});

/// Re-checks the four conclusions independently: exact measure of E, L1
/// distance of P to f over E, the coefficient power sum, and the running
/// partial-sum bound over a test family (E, each E_s, `trials` random dyadic
/// sub-unions of E) at <= cfg.m_subsample partial-sum indices including all
/// block boundaries.
LemmaReport verify_lemma(const LemmaOutput& out, const StepFunction& f,
                         const Rat& eps, int trials,
                         const LemmaConfig& cfg = {},
                         std::uint64_t seed = 0);

}  // namespace useries
