#include "useries/rat.hpp"

#include <cmath>

namespace useries {

double to_double(const Rat& r) { return r.convert_to<double>(); }

double pi_units_to_radians(const Rat& r) {
  return to_double(r) * 3.14159265358979323846264338327950288419716939937510582097494;
}

namespace {
// 3.141592653589793238462643383279502884197169399375 truncated/rounded at
// 48 fractional digits; lower and upper differ in the last digit.
const char* kPiLo =
    "3141592653589793238462643383279502884197169399375/"
    "1000000000000000000000000000000000000000000000000";
const char* kPiHi =
    "3141592653589793238462643383279502884197169399376/"
    "1000000000000000000000000000000000000000000000000";
}  // namespace

const Rat& pi_lower() {
  static const Rat v{kPiLo};
  return v;
}

const Rat& pi_upper() {
  static const Rat v{kPiHi};
  return v;
}

namespace {

// Base-10 integer parse; avoids cpp_int's octal reading of leading zeros.
BigInt big_from_decimal(const std::string& text) {
  if (text.empty()) throw ValidationError("empty integer literal");
  std::size_t i = 0;
  bool neg = false;
  if (text[0] == '+' || text[0] == '-') {
    neg = text[0] == '-';
    i = 1;
  }
  if (i == text.size()) throw ValidationError("bad integer literal: " + text);
  BigInt v = 0;
  for (; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9')
      throw ValidationError("bad integer literal: " + text);
    v = v * 10 + (text[i] - '0');
  }
  return neg ? -v : v;
}

}  // namespace

Rat parse_rational(const std::string& text) {
  if (text.empty()) throw ValidationError("empty rational literal");
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    BigInt num = big_from_decimal(text.substr(0, slash));
    BigInt den = big_from_decimal(text.substr(slash + 1));
    if (den == 0) throw ValidationError("zero denominator: " + text);
    return Rat(num, den);
  }
  auto dot = text.find('.');
  if (dot == std::string::npos) return Rat(big_from_decimal(text));
  std::string digits = text.substr(0, dot) + text.substr(dot + 1);
  size_t frac_len = text.size() - dot - 1;
  BigInt num = big_from_decimal(digits);
  BigInt den = 1;
  for (size_t i = 0; i < frac_len; ++i) den *= 10;
  return Rat(num, den);
}

std::string rational_to_string(const Rat& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

Rat round_dyadic(double x, int bits) {
  double scaled = std::ldexp(x, bits);
  double rounded = std::nearbyint(scaled);
  // cpp_int from double is exact for integral doubles.
  BigInt num(rounded);
  return Rat(num, pow2(bits));
}

int floor_log2_inverse(const Rat& eps) {
  if (eps <= 0 || eps >= 1) throw ValidationError("eps must lie in (0,1)");
  // Smallest e with 2^-e <= eps gives floor(log2(1/eps)) = e when equal,
  // else e-1... walk directly: find e with 2^-(e+1) < eps <= ... simpler:
  int e = 0;
  Rat p = 1;
  while (p > eps) {
    p /= 2;
    ++e;
  }
  // Now 2^-e <= eps < 2^-(e-1); log2(1/eps) in (e-1, e].
  if (p == eps) return e;
  return e - 1;
}

Rat pow2_inv(int e) { return Rat(BigInt(1), pow2(e)); }

BigInt pow2(int e) {
  BigInt b = 1;
  return b << e;
}

}  // namespace useries
