#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "useries/quadrature.hpp"

using namespace useries;
constexpr double kPi = std::numbers::pi;

TEST_CASE("polynomial integrated exactly") {
  auto r = quad::integrate([](double x) { return x * x * x - 2.0 * x; }, 0.0,
                           2.0, {}, 1e-12);
  CHECK(r.converged);
  CHECK(std::abs(r.value) < 1e-12);
}

TEST_CASE("l1 norm of zero and constants") {
  IntervalSet full = IntervalSet::full();
  auto zero = quad::l1_norm([](double) { return 0.0; }, {}, full, 1e-10);
  CHECK(zero.value == doctest::Approx(0.0));
  IntervalSet half = IntervalSet::interval(Rat(0), Rat(1));
  auto one = quad::l1_norm([](double) { return 1.0; }, {}, half, 1e-10);
  CHECK(one.value == doctest::Approx(kPi).epsilon(1e-12));
}

TEST_CASE("l1 norm of sin over the period is 4") {
  auto r = quad::l1_norm([](double x) { return std::sin(x); }, {},
                         IntervalSet::full(), 1e-10);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(4.0).epsilon(1e-10));
}

TEST_CASE("breakpoints restore accuracy across a jump") {
  auto step = [](double x) { return x < 1.0 ? -3.0 : 2.0; };
  auto r = quad::integrate(step, 0.0, 2.0, {1.0}, 1e-12);
  CHECK(r.value == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("complex integrand") {
  auto c = quad::integrate_complex(
      [](double x) {
        return std::complex<double>(std::cos(x), std::sin(2.0 * x));
      },
      0.0, 2.0 * kPi, {}, 1e-11);
  CHECK(std::abs(c) < 1e-9);
}
