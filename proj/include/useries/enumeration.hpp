#pragma once

#include <cstdint>

#include "useries/interval.hpp"

namespace useries {

/// Global amplitude scale of the enumeration (a fixed power of two, so
/// scaling is a bijection of the rationals). Keeping early amplitudes tiny
/// keeps the per-block approximation budgets of the series trivially
/// reachable at desk scale.
const Rat& enumeration_scale();

/// i-th positive rational in Calkin-Wilf (breadth-first) order, i >= 1:
/// 1, 1/2, 2, 1/3, 3/2, 2/3, 3, ...
Rat calkin_wilf(const BigInt& i);
BigInt calkin_wilf_index(const Rat& q);  // inverse

/// Value map: 0 -> 0, 2i-1 -> +scale*cw(i), 2i -> -scale*cw(i).
/// A bijection from the naturals onto all rationals.
Rat enum_value(const BigInt& idx);
BigInt enum_value_index(const Rat& v);

/// Deterministic bijection j -> canonical dyadic step function; j = 0 is the
/// zero function, j >= 1 walks the canonical nonzero candidates of the
/// stream n = (2r+1)*2^m, where m is the grid depth and r unpacks into the
/// 2^m cell values via a balanced pairing tree.
StepFunction enumerate_step_function(std::uint64_t j);

/// Inverse of enumerate_step_function on canonical inputs.
std::uint64_t encode_step_function(const StepFunction& f);

}  // namespace useries
