#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace useries {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/// Thrown when an input fails a precondition (CLI exit code 2).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when a search budget (nu, N, refinement depth) is exhausted
/// (CLI exit code 1).
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double to_double(const Rat& r);

/// Converts a coordinate stored in units of pi to radians.
double pi_units_to_radians(const Rat& r);

/// Rational bounds pi_lower < pi < pi_upper, tight to ~40 decimal digits.
/// Used for exact-side comparisons that involve powers of pi.
const Rat& pi_lower();
const Rat& pi_upper();

/// Parses "3/4", "-2", "0.25" (finite decimal) into an exact rational.
Rat parse_rational(const std::string& text);

std::string rational_to_string(const Rat& r);

/// Nearest rational with denominator 2^bits.
Rat round_dyadic(double x, int bits);

/// floor(log2(1/eps)) for eps in (0,1), computed exactly.
int floor_log2_inverse(const Rat& eps);

/// 2^-e as a rational, e >= 0.
Rat pow2_inv(int e);

BigInt pow2(int e);

}  // namespace useries
