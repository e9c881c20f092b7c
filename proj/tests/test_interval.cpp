#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "useries/interval.hpp"

using namespace useries;

TEST_CASE("rational parsing and formatting") {
  CHECK(parse_rational("3/4") == Rat(3, 4));
  CHECK(parse_rational("-2") == Rat(-2));
  CHECK(parse_rational("0.25") == Rat(1, 4));
  CHECK(rational_to_string(Rat(-7, 3)) == "-7/3");
  CHECK(rational_to_string(Rat(5)) == "5");
  CHECK_THROWS_AS(parse_rational("1/0"), ValidationError);
}

TEST_CASE("pi bounds bracket pi") {
  // 20-digit truncation/round-up of pi as exact rationals
  CHECK(pi_lower() > parse_rational("314159265358979323846/100000000000000000000"));
  CHECK(pi_upper() < parse_rational("314159265358979323847/100000000000000000000"));
  CHECK(pi_lower() < pi_upper());
  CHECK(pi_upper() - pi_lower() < Rat(1, BigInt("1000000000000000000000000000000")));
}

TEST_CASE("dyadic interval endpoints") {
  DyadicInterval d(2, 3);  // [pi, 3pi/2)
  CHECK(d.lo_pi() == Rat(1));
  CHECK(d.hi_pi() == Rat(3, 2));
  CHECK(d.length_pi() == Rat(1, 2));
  CHECK_THROWS_AS(DyadicInterval(2, 5), ValidationError);
  CHECK_THROWS_AS(DyadicInterval(2, 0), ValidationError);
}

TEST_CASE("measure examples") {
  CHECK(IntervalSet::full().measure_pi() == Rat(2));
  CHECK(IntervalSet::empty_set().measure_pi() == Rat(0));
  IntervalSet two = IntervalSet::from_pieces({{Rat(0), Rat(1, 2)}, {Rat(1), Rat(3, 2)}});
  CHECK(two.measure_pi() == Rat(1));
}

TEST_CASE("set operations") {
  IntervalSet a = IntervalSet::interval(Rat(0), Rat(1));
  IntervalSet b = IntervalSet::interval(Rat(1, 2), Rat(2));
  CHECK(a.intersect(a) == a);
  CHECK(a.unite(IntervalSet::empty_set()) == a);
  CHECK(a.intersect(b) == IntervalSet::interval(Rat(1, 2), Rat(1)));
  CHECK(a.unite(b) == IntervalSet::full());
  CHECK(a.difference(b) == IntervalSet::interval(Rat(0), Rat(1, 2)));
  CHECK(a.complement() == IntervalSet::interval(Rat(1), Rat(2)));
}

TEST_CASE("inclusion-exclusion of measures is exact") {
  IntervalSet a = IntervalSet::from_pieces({{Rat(0), Rat(2, 3)}, {Rat(1), Rat(7, 5)}});
  IntervalSet b = IntervalSet::from_pieces({{Rat(1, 3), Rat(6, 5)}, {Rat(3, 2), Rat(2)}});
  CHECK(a.unite(b).measure_pi() + a.intersect(b).measure_pi() ==
        a.measure_pi() + b.measure_pi());
}

TEST_CASE("step function canonical form merges siblings") {
  // Two depth-2 siblings with equal value collapse to the depth-1 parent.
  StepFunction f = StepFunction::from_pieces(
      {{DyadicInterval(2, 1), Rat(3)}, {DyadicInterval(2, 2), Rat(3)}});
  REQUIRE(f.piece_count() == 1);
  CHECK(f.pieces()[0].cell == DyadicInterval(1, 1));
  CHECK(f.pieces()[0].value == Rat(3));

  StepFunction g = StepFunction::from_pieces(
      {{DyadicInterval(1, 1), Rat(0)}, {DyadicInterval(1, 2), Rat(2)}});
  CHECK(g.piece_count() == 1);
}

TEST_CASE("step function exact integrals") {
  StepFunction f = StepFunction::from_pieces(
      {{DyadicInterval(1, 1), Rat(-2)}, {DyadicInterval(2, 3), Rat(1, 2)}});
  CHECK(f.integral_pi() == Rat(-2) * 1 + Rat(1, 2) * Rat(1, 2));
  CHECK(f.integral_abs_pi() == Rat(2) + Rat(1, 4));
  CHECK(f.l2_sq_pi() == Rat(4) + Rat(1, 8));
  CHECK(f.max_abs_value() == Rat(2));
  CHECK(f.max_depth() == 2);
  IntervalSet e = IntervalSet::interval(Rat(1, 2), Rat(5, 4));
  CHECK(f.integral_abs_over_pi(e) == Rat(2) * Rat(1, 2) + Rat(1, 2) * Rat(1, 4));
}

TEST_CASE("refinement preserves values off endpoints") {
  StepFunction f = StepFunction::from_pieces({{DyadicInterval(1, 2), Rat(7, 3)}});
  StepFunction g = f.refined_to(4);
  for (int j = 0; j < 64; ++j) {
    Rat x(2 * j + 1, 64);  // avoids all dyadic endpoints at depth <= 5
    CHECK(f.eval_pi(x) == g.eval_pi(x));
  }
  CHECK(g.grid_values(4).size() == 16);
}

TEST_CASE("lemma precondition examples") {
  CHECK(step_lemma_precondition(StepFunction::zero(), Rat(2, 5)));
  StepFunction big = StepFunction::from_pieces({{DyadicInterval(0, 1), Rat(1)}});
  CHECK_FALSE(step_lemma_precondition(big, Rat(2, 5)));
  // gamma = 2^-20 at depth 20: |gamma| sqrt|Delta| = 2^-20 sqrt(2pi/2^20),
  // int f^2 = 2^-40 * 2pi/2^20; bound = eps^3/(8 int f^2) is astronomically
  // larger, so the test passes.
  StepFunction tiny =
      StepFunction::from_pieces({{DyadicInterval(20, 1), Rat(1, 1 << 20)}});
  CHECK(step_lemma_precondition(tiny, Rat(2, 5)));
  CHECK_THROWS_AS(step_lemma_precondition(tiny, Rat(1, 2)), ValidationError);
}

TEST_CASE("grid round trip") {
  std::vector<Rat> vals{Rat(1), Rat(1), Rat(0), Rat(-5, 2)};
  StepFunction f = StepFunction::from_grid(2, vals);
  auto back = f.grid_values(2);
  REQUIRE(back.size() == 4);
  for (int i = 0; i < 4; ++i) CHECK(back[size_t(i)] == vals[size_t(i)]);
}
