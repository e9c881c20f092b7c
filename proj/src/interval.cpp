#include "useries/interval.hpp"

#include <algorithm>

namespace useries {

DyadicInterval::DyadicInterval(int m, std::int64_t i) : depth(m), index(i) {
  if (m < 0 || m > 62) throw ValidationError("dyadic depth out of range");
  if (i < 1 || (m < 62 && i > (std::int64_t(1) << m)))
    throw ValidationError("dyadic index out of range");
}

Rat DyadicInterval::lo_pi() const {
  return Rat(BigInt(2) * (index - 1), pow2(depth));
}

Rat DyadicInterval::hi_pi() const { return Rat(BigInt(2) * index, pow2(depth)); }

Rat DyadicInterval::length_pi() const { return Rat(BigInt(2), pow2(depth)); }

IntervalSet IntervalSet::full() { return interval(Rat(0), Rat(2)); }

IntervalSet IntervalSet::interval(Rat lo_pi, Rat hi_pi) {
  IntervalSet s;
  if (lo_pi < 0 || hi_pi > 2 || lo_pi > hi_pi)
    throw ValidationError("interval endpoints outside [0,2pi)");
  if (lo_pi < hi_pi) s.pieces_.emplace_back(std::move(lo_pi), std::move(hi_pi));
  return s;
}

IntervalSet IntervalSet::of(const DyadicInterval& d) {
  return interval(d.lo_pi(), d.hi_pi());
}

IntervalSet IntervalSet::from_pieces(std::vector<Piece> pieces) {
  IntervalSet s;
  s.pieces_ = std::move(pieces);
  s.normalize();
  return s;
}

void IntervalSet::normalize() {
  std::erase_if(pieces_, [](const Piece& p) { return p.first >= p.second; });
  for (const Piece& p : pieces_)
    if (p.first < 0 || p.second > 2)
      throw ValidationError("interval piece outside [0,2pi)");
  std::sort(pieces_.begin(), pieces_.end(),
            [](const Piece& a, const Piece& b) { return a.first < b.first; });
  std::vector<Piece> merged;
  for (Piece& p : pieces_) {
    if (!merged.empty() && p.first <= merged.back().second) {
      if (p.second > merged.back().second) merged.back().second = p.second;
    } else {
      merged.push_back(std::move(p));
    }
  }
  pieces_ = std::move(merged);
}

Rat IntervalSet::measure_pi() const {
  Rat m = 0;
  for (const Piece& p : pieces_) m += p.second - p.first;
  return m;
}

double IntervalSet::measure() const {
  return pi_units_to_radians(measure_pi());
}

bool IntervalSet::contains(const Rat& x_pi) const {
  for (const Piece& p : pieces_) {
    if (x_pi < p.first) return false;
    if (x_pi < p.second) return true;
  }
  return false;
}

IntervalSet IntervalSet::unite(const IntervalSet& other) const {
  std::vector<Piece> all = pieces_;
  all.insert(all.end(), other.pieces_.begin(), other.pieces_.end());
  return from_pieces(std::move(all));
}

IntervalSet IntervalSet::intersect(const IntervalSet& other) const {
  std::vector<Piece> out;
  std::size_t i = 0, j = 0;
  while (i < pieces_.size() && j < other.pieces_.size()) {
    const Piece& a = pieces_[i];
    const Piece& b = other.pieces_[j];
    Rat lo = std::max(a.first, b.first);
    Rat hi = std::min(a.second, b.second);
    if (lo < hi) out.emplace_back(lo, hi);
    if (a.second < b.second)
      ++i;
    else
      ++j;
  }
  return from_pieces(std::move(out));
}

IntervalSet IntervalSet::difference(const IntervalSet& other) const {
  return intersect(other.complement());
}

IntervalSet IntervalSet::complement() const {
  std::vector<Piece> out;
  Rat cursor = 0;
  for (const Piece& p : pieces_) {
    if (cursor < p.first) out.emplace_back(cursor, p.first);
    cursor = p.second;
  }
  if (cursor < 2) out.emplace_back(cursor, Rat(2));
  return from_pieces(std::move(out));
}

std::vector<double> IntervalSet::breakpoints() const {
  std::vector<double> b;
  b.reserve(2 * pieces_.size());
  for (const Piece& p : pieces_) {
    b.push_back(pi_units_to_radians(p.first));
    b.push_back(pi_units_to_radians(p.second));
  }
  return b;
}

namespace {

bool cells_overlap(const DyadicInterval& a, const DyadicInterval& b) {
  return a.lo_pi() < b.hi_pi() && b.lo_pi() < a.hi_pi();
}

}  // namespace

StepFunction StepFunction::from_pieces(std::vector<Piece> pieces) {
  std::erase_if(pieces, [](const Piece& p) { return p.value == 0; });
  std::sort(pieces.begin(), pieces.end(), [](const Piece& a, const Piece& b) {
    return a.cell.lo_pi() < b.cell.lo_pi();
  });
  for (std::size_t i = 0; i + 1 < pieces.size(); ++i)
    if (cells_overlap(pieces[i].cell, pieces[i + 1].cell))
      throw ValidationError("step function pieces overlap");
  // Merge sibling cells with equal values until stable.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < pieces.size(); ++i) {
      const DyadicInterval& a = pieces[i].cell;
      const DyadicInterval& b = pieces[i + 1].cell;
      if (a.depth == b.depth && a.depth > 0 && a.index % 2 == 1 &&
          b.index == a.index + 1 && pieces[i].value == pieces[i + 1].value) {
        pieces[i].cell = DyadicInterval(a.depth - 1, (a.index + 1) / 2);
        pieces.erase(pieces.begin() + static_cast<std::ptrdiff_t>(i) + 1);
        changed = true;
        break;
      }
    }
  }
  StepFunction f;
  f.pieces_ = std::move(pieces);
  return f;
}

StepFunction StepFunction::from_grid(int depth, const std::vector<Rat>& values) {
  if (depth < 0 || depth > 30 ||
      values.size() != (std::size_t(1) << depth))
    throw ValidationError("grid size does not match depth");
  std::vector<Piece> pieces;
  for (std::size_t i = 0; i < values.size(); ++i)
    if (values[i] != 0)
      pieces.push_back({DyadicInterval(depth, std::int64_t(i) + 1), values[i]});
  return from_pieces(std::move(pieces));
}

Rat StepFunction::eval_pi(const Rat& x_pi) const {
  for (const Piece& p : pieces_) {
    if (x_pi < p.cell.lo_pi()) return Rat(0);
    if (x_pi < p.cell.hi_pi()) return p.value;
  }
  return Rat(0);
}

double StepFunction::eval(double x) const {
  constexpr double kPi = 3.141592653589793238462643383279502884;
  for (const Piece& p : pieces_) {
    double lo = to_double(p.cell.lo_pi()) * kPi;
    double hi = to_double(p.cell.hi_pi()) * kPi;
    if (x < lo) return 0.0;
    if (x < hi) return to_double(p.value);
  }
  return 0.0;
}

Rat StepFunction::integral_pi() const {
  Rat s = 0;
  for (const Piece& p : pieces_) s += p.value * p.cell.length_pi();
  return s;
}

Rat StepFunction::integral_abs_pi() const {
  Rat s = 0;
  for (const Piece& p : pieces_) s += abs(p.value) * p.cell.length_pi();
  return s;
}

Rat StepFunction::l2_sq_pi() const {
  Rat s = 0;
  for (const Piece& p : pieces_) s += p.value * p.value * p.cell.length_pi();
  return s;
}

Rat StepFunction::integral_abs_over_pi(const IntervalSet& e) const {
  Rat s = 0;
  for (const Piece& p : pieces_) {
    IntervalSet overlap = e.intersect(IntervalSet::of(p.cell));
    s += abs(p.value) * overlap.measure_pi();
  }
  return s;
}

Rat StepFunction::max_abs_value() const {
  Rat m = 0;
  for (const Piece& p : pieces_) m = std::max(m, Rat(abs(p.value)));
  return m;
}

int StepFunction::max_depth() const {
  int d = 0;
  for (const Piece& p : pieces_) d = std::max(d, p.cell.depth);
  return d;
}

IntervalSet StepFunction::support() const {
  std::vector<IntervalSet::Piece> out;
  for (const Piece& p : pieces_) out.emplace_back(p.cell.lo_pi(), p.cell.hi_pi());
  return IntervalSet::from_pieces(std::move(out));
}

std::vector<double> StepFunction::breakpoints() const {
  return support().breakpoints();
}

std::vector<StepFunction::Piece> StepFunction::refined_pieces(int depth) const {
  std::vector<Piece> out;
  for (const Piece& p : pieces_) {
    if (p.cell.depth > depth)
      throw ValidationError("refinement depth below existing piece depth");
    int extra = depth - p.cell.depth;
    std::int64_t first = (p.cell.index - 1) * (std::int64_t(1) << extra) + 1;
    for (std::int64_t j = 0; j < (std::int64_t(1) << extra); ++j)
      out.push_back({DyadicInterval(depth, first + j), p.value});
  }
  return out;
}

StepFunction StepFunction::refined_to(int depth) const {
  StepFunction f;
  f.pieces_ = refined_pieces(depth);
  return f;
}

std::vector<Rat> StepFunction::grid_values(int depth) const {
  if (depth < 0 || depth > 30) throw ValidationError("grid depth out of range");
  std::vector<Rat> vals(std::size_t(1) << depth, Rat(0));
  for (const Piece& p : pieces_) {
    int extra = depth - p.cell.depth;
    if (extra < 0) throw ValidationError("grid depth below piece depth");
    std::size_t first = std::size_t(p.cell.index - 1) << extra;
    for (std::size_t j = 0; j < (std::size_t(1) << extra); ++j)
      vals[first + j] = p.value;
  }
  return vals;
}

bool step_lemma_precondition(const StepFunction& f, const Rat& eps) {
  if (eps <= 0 || 2 * eps >= 1)
    throw ValidationError("eps must lie in (0, 1/2)");
  if (f.is_zero()) return true;  // bound divides by int f^2 = 0
  const Rat f2 = f.l2_sq_pi();  // int f^2 = f2 * pi
  const Rat eps6 = eps * eps * eps * eps * eps * eps;
  const Rat pi3 = pi_upper() * pi_upper() * pi_upper();
  for (const auto& p : f.pieces()) {
    // |gamma| sqrt(|Delta|) < eps^3/(8 int f^2), squared and cleared of pi:
    // 64 * gamma^2 * L * F^2 * pi^3 < eps^6, with |Delta| = L pi, int f^2 = F pi.
    Rat lhs = 64 * p.value * p.value * p.cell.length_pi() * f2 * f2 * pi3;
    if (lhs >= eps6) return false;
  }
  return true;
}

}  // namespace useries
