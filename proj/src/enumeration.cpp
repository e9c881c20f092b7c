#include "useries/enumeration.hpp"

#include <boost/multiprecision/integer.hpp>

#include <vector>

namespace useries {

namespace {

// Szudzik pairing: a bijection N x N -> N with sqrt-based inverse.
BigInt pair2(const BigInt& a, const BigInt& b) {
  return a < b ? BigInt(b * b + a) : BigInt(a * a + a + b);
}

std::pair<BigInt, BigInt> unpair2(const BigInt& z) {
  BigInt s = sqrt(z);
  BigInt rem = z - s * s;
  if (rem < s) return {rem, s};
  return {s, rem - s};
}

// r <-> tuple of `len` indices (len a power of two), splitting in halves.
std::vector<BigInt> untuple(const BigInt& r, std::size_t len) {
  if (len == 1) return {r};
  auto [a, b] = unpair2(r);
  std::vector<BigInt> left = untuple(a, len / 2);
  std::vector<BigInt> right = untuple(b, len / 2);
  left.insert(left.end(), right.begin(), right.end());
  return left;
}

BigInt tuple_index(const std::vector<BigInt>& t, std::size_t lo,
                   std::size_t len) {
  if (len == 1) return t[lo];
  return pair2(tuple_index(t, lo, len / 2),
               tuple_index(t, lo + len / 2, len / 2));
}

struct Candidate {
  int depth;
  std::vector<BigInt> tuple;
};

Candidate decode_candidate(std::uint64_t n) {
  int m = 0;
  while ((n & 1) == 0) {
    n >>= 1;
    ++m;
  }
  if (m > 30) throw BudgetError("candidate grid depth too large");
  BigInt r = BigInt(n - 1) / 2;
  return {m, untuple(r, std::size_t(1) << m)};
}

// A candidate names a function in lowest terms iff its grid cannot be
// expressed one level coarser.
bool canonical_candidate(const Candidate& c) {
  if (c.depth == 0) return true;
  for (std::size_t k = 0; k < c.tuple.size(); k += 2)
    if (c.tuple[k] != c.tuple[k + 1]) return true;
  return false;
}

bool is_zero_candidate(const Candidate& c) {
  return c.depth == 0 && c.tuple[0] == 0;
}

StepFunction candidate_function(const Candidate& c) {
  std::vector<Rat> values;
  values.reserve(c.tuple.size());
  for (const BigInt& idx : c.tuple) values.push_back(enum_value(idx));
  return StepFunction::from_grid(c.depth, values);
}

}  // namespace

const Rat& enumeration_scale() {
  static const Rat s(BigInt(1), BigInt(1) << 44);
  return s;
}

Rat calkin_wilf(const BigInt& i) {
  if (i < 1) throw ValidationError("Calkin-Wilf index must be positive");
  BigInt a = 1, b = 1;
  for (int bit = int(msb(i)) - 1; bit >= 0; --bit) {
    if (bit_test(i, unsigned(bit)))
      a += b;
    else
      b += a;
  }
  return Rat(a, b);
}

BigInt calkin_wilf_index(const Rat& q) {
  if (q <= 0) throw ValidationError("Calkin-Wilf enumerates positive rationals");
  BigInt a = numerator(q), b = denominator(q);
  std::vector<bool> bits;
  while (!(a == 1 && b == 1)) {
    if (a > b) {
      bits.push_back(true);
      a -= b;
    } else {
      bits.push_back(false);
      b -= a;
    }
  }
  BigInt i = 1;
  for (auto it = bits.rbegin(); it != bits.rend(); ++it)
    i = 2 * i + (*it ? 1 : 0);
  return i;
}

Rat enum_value(const BigInt& idx) {
  if (idx < 0) throw ValidationError("value index must be nonnegative");
  if (idx == 0) return Rat(0);
  if (idx % 2 == 1) return enumeration_scale() * calkin_wilf((idx + 1) / 2);
  return -enumeration_scale() * calkin_wilf(idx / 2);
}

BigInt enum_value_index(const Rat& v) {
  if (v == 0) return BigInt(0);
  BigInt i = calkin_wilf_index(abs(v) / enumeration_scale());
  return v > 0 ? BigInt(2 * i - 1) : BigInt(2 * i);
}

StepFunction enumerate_step_function(std::uint64_t j) {
  if (j == 0) return StepFunction::zero();
  static std::vector<StepFunction> cache;  // cache[j-1]
  static std::uint64_t next_n = 1;
  while (cache.size() < j) {
    Candidate c = decode_candidate(next_n++);
    if (canonical_candidate(c) && !is_zero_candidate(c))
      cache.push_back(candidate_function(c));
  }
  return cache[j - 1];
}

std::uint64_t encode_step_function(const StepFunction& f) {
  StepFunction g = StepFunction::from_pieces(f.pieces());
  if (g.is_zero()) return 0;
  const int m = g.max_depth();
  std::vector<Rat> values = g.grid_values(m);
  std::vector<BigInt> tuple;
  tuple.reserve(values.size());
  for (const Rat& v : values) tuple.push_back(enum_value_index(v));
  BigInt r = tuple_index(tuple, 0, tuple.size());
  BigInt n_big = (2 * r + 1) * (BigInt(1) << m);
  if (n_big > BigInt(std::uint64_t(1) << 62))
    throw BudgetError("enumeration index out of tractable range");
  std::uint64_t n = n_big.convert_to<std::uint64_t>();
  std::uint64_t j = 0;
  for (std::uint64_t k = 1; k <= n; ++k) {
    Candidate c = decode_candidate(k);
    if (canonical_candidate(c) && !is_zero_candidate(c)) ++j;
  }
  return j;
}

}  // namespace useries
