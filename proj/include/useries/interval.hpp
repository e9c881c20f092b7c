#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "useries/rat.hpp"

namespace useries {

/// Dyadic cell [(i-1)*2pi/2^m, i*2pi/2^m), 1 <= i <= 2^m.
/// Endpoints are kept in units of pi, so the cell is [(i-1)*2/2^m, i*2/2^m).
struct DyadicInterval {
  int depth = 0;        // m
  std::int64_t index = 1;  // i, 1-based

  DyadicInterval() = default;
  DyadicInterval(int m, std::int64_t i);

  Rat lo_pi() const;
  Rat hi_pi() const;
  Rat length_pi() const;  // 2/2^m

  bool operator==(const DyadicInterval&) const = default;
};

/// Finite disjoint union of half-open subintervals of [0,2pi); endpoints are
/// exact rationals in units of pi, so measures are exact.
class IntervalSet {
 public:
  using Piece = std::pair<Rat, Rat>;  // [lo, hi) in pi units

  IntervalSet() = default;

  static IntervalSet empty_set() { return {}; }
  static IntervalSet full();                        // [0, 2pi)
  static IntervalSet interval(Rat lo_pi, Rat hi_pi);
  static IntervalSet of(const DyadicInterval& d);
  static IntervalSet from_pieces(std::vector<Piece> pieces);  // normalizes

  const std::vector<Piece>& pieces() const { return pieces_; }
  bool empty() const { return pieces_.empty(); }
  std::size_t piece_count() const { return pieces_.size(); }

  /// Exact measure divided by pi.
  Rat measure_pi() const;
  double measure() const;

  bool contains(const Rat& x_pi) const;

  IntervalSet unite(const IntervalSet& other) const;
  IntervalSet intersect(const IntervalSet& other) const;
  IntervalSet difference(const IntervalSet& other) const;
  IntervalSet complement() const;  // within [0,2pi)

  std::vector<double> breakpoints() const;  // radians

  bool operator==(const IntervalSet&) const = default;

 private:
  std::vector<Piece> pieces_;  // sorted, disjoint, non-empty, within [0,2]

  void normalize();
};

/// Step function sum_s gamma_s * chi_{Delta_s} with dyadic cells and rational
/// values; zero off the listed cells. Canonical form: cells pairwise disjoint,
/// sorted, values nonzero, and no two sibling cells share a value (they merge
/// into the parent cell).
class StepFunction {
 public:
  struct Piece {
    DyadicInterval cell;
    Rat value;

    bool operator==(const Piece&) const = default;
  };

  StepFunction() = default;

  /// Builds from raw pieces; merges siblings and drops zeros.
  static StepFunction from_pieces(std::vector<Piece> pieces);

  /// Builds from the full grid at depth m (values.size() == 2^m).
  static StepFunction from_grid(int depth, const std::vector<Rat>& values);

  static StepFunction zero() { return {}; }

  const std::vector<Piece>& pieces() const { return pieces_; }
  bool is_zero() const { return pieces_.empty(); }
  std::size_t piece_count() const { return pieces_.size(); }

  Rat eval_pi(const Rat& x_pi) const;
  double eval(double x) const;

  /// Exact integrals over [0,2pi), all divided by pi.
  Rat integral_pi() const;       // int f
  Rat integral_abs_pi() const;   // int |f|
  Rat l2_sq_pi() const;          // int f^2

  /// Exact int_e |f| / pi over an interval set.
  Rat integral_abs_over_pi(const IntervalSet& e) const;

  Rat max_abs_value() const;
  int max_depth() const;

  IntervalSet support() const;
  std::vector<double> breakpoints() const;  // radians

  /// Same function with every piece split to cells at depth `depth`
  /// (depth >= max_depth()). Not canonical on purpose; used by the lemma
  /// admissibility refinement.
  std::vector<Piece> refined_pieces(int depth) const;

  /// Splits every piece in half until the given predicate-free dyadic depth.
  StepFunction refined_to(int depth) const;

  /// Values on the full grid at depth m >= max_depth().
  std::vector<Rat> grid_values(int depth) const;

  bool operator==(const StepFunction&) const = default;

 private:
  std::vector<Piece> pieces_;
};

/// Exact test of the lemma admissibility bound
///   |gamma_s| * sqrt(|Delta_s|) < eps^3 / (8 * int f^2)   for every piece,
/// compared after squaring with conservative rational bounds on pi.
/// f == 0 passes by convention.
bool step_lemma_precondition(const StepFunction& f, const Rat& eps);

}  // namespace useries
