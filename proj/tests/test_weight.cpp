#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "useries/weight.hpp"

#include <cmath>

#include "useries/quadrature.hpp"

using namespace useries;

namespace {
const UniversalSeries& series5() {
  static UniversalSeries u = build_universal_series(5);
  return u;
}
}  // namespace

TEST_CASE("omega chain is nested with the union-bound measure") {
  const UniversalSeries& u = series5();
  REQUIRE(u.complete);
  CHECK(build_omega(u.S, u) == u.blocks.back().out.E);
  IntervalSet prev = build_omega(1, u);
  for (int n = 2; n <= u.S; ++n) {
    IntervalSet cur = build_omega(n, u);
    CHECK(cur.intersect(prev) == prev);  // prev subset of cur
    prev = cur;
  }
  for (int n = 1; n <= u.S; ++n) {
    Rat slack = 0;
    for (int s = n; s <= u.S; ++s) slack += pow2_inv(2 * (s + 1));
    // 2pi - measure <= sum over complements, each below eps_s (absolute).
    Rat deficit = Rat(2) - build_omega(n, u).measure_pi();
    CHECK(deficit * pi_upper() < slack);
  }
}

TEST_CASE("h ladder: lower bound and agreement with direct sup norms") {
  const UniversalSeries& u = series5();
  for (int s = 1; s <= u.S; ++s) {
    const BlockRecord& b = u.blocks[std::size_t(s - 1)];
    double h = compute_h(s, u);
    CHECK(h >= to_double(b.f.max_abs_value()) + 1.0);
    CHECK(h >= 1.0);
    // Small blocks are not subsampled, so the max is over every p.
    if (b.range.hi - b.range.lo <= 256) {
      double p_sup = 0.0;
      for (std::int64_t p = b.range.lo; p < b.range.hi; ++p)
        p_sup = std::max(p_sup, sup_norm_range(u.C, b.range.lo, p));
      CHECK(h == doctest::Approx(to_double(b.f.max_abs_value()) + p_sup + 1.0)
                     .epsilon(1e-12));
    }
  }
}

TEST_CASE("weight at eps = 1/4: invariants, measure, and levels") {
  const UniversalSeries& u = series5();
  const Rat eps = parse_rational("1/4");
  Weight w = build_weight(eps, u);
  CHECK(w.n0() == floor_log2_inverse(eps) + 1);
  // Partition covers the circle exactly.
  Rat total = 0;
  for (const auto& p : w.parts()) total += p.set.measure_pi();
  CHECK(total == Rat(2));
  // Exact measure of the non-unit region is below eps.
  CHECK(w.measure_ne1_pi() * pi_upper() < eps);
  // Levels in (0,1], strictly decreasing along the ladder.
  double prev_level = 1.0;
  for (const auto& p : w.parts()) {
    CHECK(p.level > 0.0);
    CHECK(p.level <= 1.0);
    if (p.n > 0) {
      CHECK(p.level < prev_level);
      prev_level = p.level;
    }
  }
  // mu = 1 on sampled points of E.
  for (const auto& piece : w.E().pieces()) {
    Rat mid = (piece.first + piece.second) / 2;
    CHECK(w.eval_pi(mid) == 1.0);
  }
}

TEST_CASE("too-shallow series is rejected") {
  UniversalSeries u = build_universal_series(2);
  CHECK_THROWS_AS(build_weight(parse_rational("1/10"), u), ValidationError);
}

TEST_CASE("weighted L1 against the unit weight and a constant") {
  Weight one = Weight::one();
  auto abssin = [](double x) { return std::sin(x); };
  double got = weighted_l1(abssin, {}, one, 1e-10);
  CHECK(std::abs(got - 4.0) < 1e-8);

  const UniversalSeries& u = series5();
  Weight w = build_weight(parse_rational("1/4"), u);
  auto unit = [](double) { return 1.0; };
  double wl = weighted_l1(unit, {}, w, 1e-10);
  double l = quad::l1_norm(unit, {}, IntervalSet::full(), 1e-10).value;
  CHECK(wl <= l + 1e-8);  // mu <= 1 shrinks every integral
  CHECK(wl > 0.0);
}

TEST_CASE("tail-killing estimate holds on every built block") {
  const UniversalSeries& u = series5();
  Weight w = build_weight(parse_rational("1/4"), u);
  auto checks = weight_tail_report(u, w, 1e-9);
  CHECK(!checks.empty());
  for (const auto& c : checks) {
    CAPTURE(c.name);
    CHECK(c.pass);
  }
}
