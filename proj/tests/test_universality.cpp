#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "useries/universality.hpp"

#include <set>

using namespace useries;

namespace {
const UniversalSeries& series8() {
  static UniversalSeries u = build_universal_series(8);
  return u;
}
const Weight& weight8() {
  static Weight w = build_weight(parse_rational("1/4"), series8());
  return w;
}
}  // namespace

TEST_CASE("rearrangement toward the zero target") {
  RearrangementPlan plan =
      rearrange_to_target(integrand_zero(), series8(), weight8(), 3);
  REQUIRE(!plan.stages.empty());
  std::set<std::int64_t> seen;
  for (std::int64_t a : plan.atoms) {
    CHECK(a >= 1);
    CHECK(seen.insert(a).second);  // injective emission
  }
  int prev_nu = 0;
  for (const RearrangeStage& st : plan.stages) {
    CAPTURE(st.q);
    CHECK(st.nu > prev_nu);
    prev_nu = st.nu;
    CHECK(st.match_error < std::ldexp(1.0, -2 * st.q));
    CHECK(st.ok);
    CHECK(st.bound_paired >= st.bound);
  }
  CHECK(plan.stages.front().m == 1);  // smallest frequency is free first
}

TEST_CASE("rearrangement toward an enumerated target replays the block") {
  Integrand tgt = integrand_from_step(enumerate_step_function(5), "f5");
  RearrangementPlan plan = rearrange_to_target(tgt, series8(), weight8(), 2);
  REQUIRE(plan.stages.size() >= 1);
  CHECK(plan.stages[0].match_error < 0.25);
  CHECK(plan.stages[0].ok);
}

TEST_CASE("floor report instead of a crash when the horizon is exhausted") {
  UniversalSeries u = build_universal_series(4);
  Weight w = build_weight(parse_rational("1/4"), u);
  // Many stages over a 4-block series must exhaust admissible blocks.
  RearrangementPlan plan = rearrange_to_target(integrand_zero(), u, w, 6);
  CHECK(!plan.complete);
  CHECK(!plan.diagnostics.empty());
  // Whatever stages completed are still valid.
  for (const RearrangeStage& st : plan.stages) CHECK(st.ok);
}

TEST_CASE("cumulative-mode series passes the running-sum check") {
  UniversalSeries u = build_usual_series(4);
  REQUIRE(u.complete);
  CHECK(u.cumulative);
  REQUIRE(u.blocks.size() == 4);
  std::int64_t prev_hi = 1;
  for (const BlockRecord& b : u.blocks) {
    CAPTURE(b.s);
    CHECK(b.range.lo == prev_hi);
    prev_hi = b.range.hi;
    CHECK(b.measure_ok);
    CHECK(b.l1_ok);  // int_{E_n} |f_n - running sum| < 2^{-n}
    CHECK(b.power_ok);
    CHECK(b.partial_ok);
  }
}

TEST_CASE("usual-sense selection meets the envelope on a built target") {
  UniversalSeries u = build_usual_series(5);
  REQUIRE(u.complete);
  Weight w = build_weight(parse_rational("1/4"), u);
  Integrand tgt = integrand_from_step(enumerate_step_function(1), "f1");
  UsualSenseSelection sel = usual_sense_select(tgt, u, w, 2);
  REQUIRE(!sel.stages.empty());
  std::int64_t prev_M = 0;
  int prev_n = 0;
  for (const UsualStage& st : sel.stages) {
    CAPTURE(st.k);
    CHECK(st.n > prev_n);
    CHECK(st.M > prev_M);
    prev_n = st.n;
    prev_M = st.M;
    CHECK(st.ok);
  }
  CHECK(sel.stages[0].error < 0.25 + 10.0 * sel.tol);
}

TEST_CASE("selection rejects a non-cumulative series") {
  UniversalSeries u = build_universal_series(3);
  Weight w = build_weight(parse_rational("1/2"), u);
  CHECK_THROWS_AS(usual_sense_select(integrand_zero(), u, w, 1),
                  ValidationError);
}

TEST_CASE("convergence traces have one row per stage") {
  RearrangementPlan plan =
      rearrange_to_target(integrand_zero(), series8(), weight8(), 2);
  std::string csv = convergence_report(plan);
  std::size_t rows = std::count(csv.begin(), csv.end(), '\n');
  CHECK(rows == plan.stages.size() + 1);
  CHECK(csv.rfind("stage,terms_emitted,error,bound,margin", 0) == 0);
}
