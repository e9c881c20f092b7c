#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "useries/enumeration.hpp"
#include "useries/lemma.hpp"

namespace useries {

/// One block of the universal series: the enumerated step function f_s, the
/// lemma output over the frequency block [N_{s-1}, N_s), and the recorded
/// per-block bounds.
struct BlockRecord {
  int s = 0;
  BlockRange range;  // [N_{s-1}, N_s)
  Rat eps_s;         // 2^{-2(s+1)}
  std::uint64_t enum_index = 0;
  StepFunction f;    // admissible refinement fed to the construction
  LemmaOutput out;   // E_s = out.E, P_s = out.P

  bool measure_ok = false;   // |E_s| > 2pi - eps_s, exact
  double l1_error = 0.0;     // int_{E_s} |P_s - f_s|
  bool l1_ok = false;
  double power_sum = 0.0;    // sum |C_k|^{2 + 2^{-2s}} over the block
  bool power_ok = false;
  bool partial_ok = false;   // running partial-sum bound on the test family
  bool budget_ok = true;
};

struct UniversalSeries {
  int S = 0;  // requested depth
  std::vector<BlockRecord> blocks;
  TrigPolynomial C;  // global coefficient table (zero below k = 1)
  bool complete = true;
  bool cumulative = false;  // built by build_usual_series
  std::vector<std::string> diagnostics;

  std::int64_t N_end() const {
    return blocks.empty() ? 1 : blocks.back().range.hi;
  }
};

/// Assembles S blocks with the schedule eps_s = 2^{-2(s+1)}, refining each
/// enumerated function until it is admissible.
UniversalSeries build_universal_series(int S, const LemmaConfig& cfg = {});

/// sum |C_k|^q over every built coefficient (both signs), q > 2.
double coefficient_decay_report(const UniversalSeries& series, double q);

}  // namespace useries
