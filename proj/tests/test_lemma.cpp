#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "useries/lemma.hpp"
#include "useries/quadrature.hpp"

using namespace useries;
constexpr double kPi = std::numbers::pi;

TEST_CASE("gap_eval branches") {
  CHECK(gap_eval(Rat(1, 2), kPi) == doctest::Approx(1.0));
  CHECK(gap_eval(Rat(1, 2), kPi / 2.0) == doctest::Approx(-3.0));
  CHECK(gap_eval(Rat(1, 4), 0.0) == doctest::Approx(1.0));
  GapFunction g(Rat(1, 2));
  CHECK(g.eval_pi(Rat(1)) == Rat(1));
  CHECK(g.eval_pi(Rat(1, 2)) == Rat(-3));       // dip includes its left edge
  CHECK(g.eval_pi(Rat(3, 2)) == Rat(1));        // half-open on the right
  CHECK(g.eval_pi(Rat(5, 2)) == Rat(-3));       // periodic reduction
  CHECK(g.eval_pi(Rat(-3, 2)) == Rat(-3));      // negative arguments
}

TEST_CASE("gap function has exact mean zero") {
  for (Rat eps : {Rat(1, 2), Rat(1, 4), Rat(2, 5)}) {
    GapPiece gp(Rat(1), DyadicInterval(0, 1), 1, eps);
    CHECK(gp.integral_pi() == Rat(0));
    CHECK(std::abs(gp.coeff(0)) < 1e-10);
    auto q = quad::l1_norm([&](double x) { return gp.eval(x); },
                           gp.to_piecewise().breakpoints(),
                           IntervalSet::full(), 1e-11);
    // integral of |g| is positive even though the mean vanishes
    CHECK(q.value == doctest::Approx(to_double(gp.l1_pi()) * kPi).epsilon(1e-9));
  }
}

TEST_CASE("build_gs composes the scaled gap with the cell") {
  PiecewiseConstant zero = build_gs(Rat(0), DyadicInterval(1, 1), 4, Rat(1, 4));
  CHECK(zero.segs().empty());

  PiecewiseConstant g = build_gs(Rat(1), DyadicInterval(0, 1), 1, Rat(1, 2));
  CHECK(g.eval(0.1) == doctest::Approx(1.0));
  CHECK(g.eval(kPi / 2.0) == doctest::Approx(-3.0));  // dip on [pi/4, 3pi/4)
  CHECK(g.eval(kPi) == doctest::Approx(1.0));

  // Support stays inside the cell for scaled cases.
  PiecewiseConstant h = build_gs(Rat(-2), DyadicInterval(2, 3), 8, Rat(1, 3));
  for (double x : {0.5, 3.0, 5.5})
    CHECK(h.eval(x) == 0.0);
}

TEST_CASE("exact_Es measure") {
  IntervalSet es = exact_Es(DyadicInterval(0, 1), 1, Rat(1, 2), Rat(1));
  CHECK(es.measure_pi() == Rat(2) - Rat(1, 2));
  CHECK(es == IntervalSet::from_pieces({{Rat(0), Rat(1, 4)}, {Rat(3, 4), Rat(2)}}));
  CHECK(exact_Es(DyadicInterval(1, 2), 4, Rat(1, 4), Rat(0)) ==
        IntervalSet::of(DyadicInterval(1, 2)));
  // Integer periods: plateau keeps exactly (1 - eps/2) of the cell.
  for (std::int64_t nu : {2, 4, 16}) {
    DyadicInterval cell(1, 2);
    IntervalSet s = exact_Es(cell, nu, Rat(1, 3), Rat(5));
    CHECK(s.measure_pi() == (1 - Rat(1, 6)) * cell.length_pi());
  }
}

TEST_CASE("select_nu returns first candidate for zero gamma") {
  LemmaConfig cfg;
  std::int64_t nu = select_nu(Rat(1, 20), Rat(2, 5), 1, 3, Rat(0),
                              DyadicInterval(3, 5), 0, cfg);
  CHECK(nu == 8);
  // and respects the strict ordering constraint
  nu = select_nu(Rat(1, 20), Rat(2, 5), 1, 3, Rat(0), DyadicInterval(3, 5), 8,
                 cfg);
  CHECK(nu == 16);
}

TEST_CASE("selected nu satisfies the stated coefficient bound") {
  LemmaConfig cfg;
  Rat eps(2, 5), gamma(1, 1000);
  DyadicInterval cell(1, 2);
  std::int64_t N_prev = 16;
  std::int64_t nu = select_nu(eps / 8, eps, 1, N_prev, gamma, cell, 0, cfg);
  GapPiece gp(gamma, cell, nu, eps / 8);
  double bound = std::min(
      to_double(eps) / (16.0 * std::sqrt(double(N_prev))),
      to_double(eps) / (8.0 * 2.0 * kPi * std::sqrt(2.0 * double(N_prev))));
  for (std::int64_t k = 1; k < N_prev; ++k)
    CHECK(std::abs(gp.coeff(k)) < bound);
}

TEST_CASE("select_N doubling search") {
  LemmaConfig cfg;
  Rat eps(2, 5);
  GapPiece zero(Rat(0), DyadicInterval(1, 1), 2, eps / 8);
  auto r0 = select_N(zero, 1, eps, 5, cfg);
  CHECK(r0.N == 6);
  CHECK(r0.ok);
  CHECK(r0.l1_error == 0.0);

  GapPiece gp(Rat(1, 200), DyadicInterval(1, 2), 4, eps / 8);
  auto r = select_N(gp, 1, eps, 3, cfg);
  CHECK(r.ok);
  CHECK(r.N > 3);
  CHECK(r.l1_error <= to_double(eps) / 16.0);
  CHECK(r.block_l1_error < to_double(eps) / 4.0);
  // error is non-increasing along a doubling refinement (within tolerance)
  TrigPolynomial q;
  for (std::int64_t k = 0; k < 4 * r.N; ++k) q.set_coeff(k, gp.coeff(k));
  PiecewiseConstant h = gp.to_piecewise();
  double e1 = sampled_l1_error(q, 0, r.N - 1, h, IntervalSet::full(), 1e-8);
  double e2 = sampled_l1_error(q, 0, 2 * r.N - 1, h, IntervalSet::full(), 1e-8);
  double e4 = sampled_l1_error(q, 0, 4 * r.N - 1, h, IntervalSet::full(), 1e-8);
  CHECK(e2 <= e1 + 1e-6);
  CHECK(e4 <= e2 + 1e-6);
}

TEST_CASE("lemma on the zero function is trivial") {
  LemmaOutput out = lemma_construct(StepFunction::zero(), Rat(2, 5), 3);
  CHECK(out.E == IntervalSet::full());
  CHECK(out.P.is_zero());
  CHECK(out.N == out.N0);
  LemmaReport rep = verify_lemma(out, StepFunction::zero(), Rat(2, 5), 3);
  CHECK(rep.pass);
}

TEST_CASE("lemma preconditions are enforced") {
  CHECK_THROWS_AS(lemma_construct(StepFunction::zero(), Rat(1, 2), 3),
                  ValidationError);
  CHECK_THROWS_AS(lemma_construct(StepFunction::zero(), Rat(2, 5), 2),
                  ValidationError);
  StepFunction big = StepFunction::from_pieces({{DyadicInterval(0, 1), Rat(1)}});
  CHECK_THROWS_AS(lemma_construct(big, Rat(2, 5), 3), ValidationError);
}

TEST_CASE("constructed lemma output passes independent verification") {
  StepFunction f = StepFunction::from_pieces(
      {{DyadicInterval(1, 1), Rat(1, 500)}, {DyadicInterval(2, 4), Rat(-3, 1000)}});
  Rat eps(2, 5);
  REQUIRE(step_lemma_precondition(f, eps));
  LemmaOutput out = lemma_construct(f, eps, 3);
  CHECK(out.budget_ok);
  CHECK(out.N > out.N0);
  LemmaReport rep = verify_lemma(out, f, eps, 5);
  for (const auto& c : rep.checks)
    INFO(c.name, " value=", c.value, " bound=", c.bound);
  CHECK(rep.pass);

  // Tampering with the coefficients breaks conclusion (2).
  LemmaOutput bad = out;
  TrigPolynomial scaled;
  for (std::int64_t k = 0; k <= bad.P.max_freq(); ++k)
    scaled.set_coeff(k, bad.P.coeff(k) * 1000.0);
  bad.P = scaled;
  LemmaReport rep2 = verify_lemma(bad, f, eps, 3);
  CHECK_FALSE(rep2.pass);
}
