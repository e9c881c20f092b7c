#include "useries/lemma.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <set>

namespace useries {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::size_t next_pow2(double x) {
  std::size_t m = 1;
  while (double(m) < x) m <<= 1;
  return m;
}

/// Preimage of the dip [eps/2, 3eps/2) (pi units) under x -> nu*x mod 2pi.
IntervalSet dip_preimages(std::int64_t nu, const Rat& eps) {
  if (nu > (std::int64_t(1) << 21))
    throw BudgetError("dip count too large to materialize");
  std::vector<IntervalSet::Piece> pieces;
  pieces.reserve(std::size_t(nu));
  for (std::int64_t j = 0; j < nu; ++j) {
    Rat lo = (eps / 2 + 2 * Rat(j)) / nu;
    Rat hi = (3 * eps / 2 + 2 * Rat(j)) / nu;
    pieces.emplace_back(std::move(lo), std::move(hi));
  }
  return IntervalSet::from_pieces(std::move(pieces));
}

}  // namespace

double gap_eval(const Rat& eps, double x) { return GapFunction(eps).eval(x); }

PiecewiseConstant build_gs(const Rat& gamma, const DyadicInterval& delta,
                           std::int64_t nu, const Rat& eps) {
  if (nu < 1) throw ValidationError("nu must be positive");
  if (gamma == 0) return {};
  IntervalSet cell = IntervalSet::of(delta);
  IntervalSet dip = cell.intersect(dip_preimages(nu, eps));
  IntervalSet plateau = cell.difference(dip);
  const double hi_v = to_double(gamma);
  const double lo_v = to_double(gamma * (1 - Rat(2) / eps));
  std::vector<PiecewiseConstant::Seg> segs;
  for (const auto& p : plateau.pieces()) segs.push_back({p.first, p.second, hi_v});
  for (const auto& p : dip.pieces()) segs.push_back({p.first, p.second, lo_v});
  return PiecewiseConstant(std::move(segs));
}

IntervalSet exact_Es(const DyadicInterval& delta, std::int64_t nu,
                     const Rat& eps, const Rat& gamma) {
  IntervalSet cell = IntervalSet::of(delta);
  if (gamma == 0) return cell;
  return cell.difference(dip_preimages(nu, eps));
}

std::int64_t select_nu(const Rat& gap_eps, const Rat& eps, int s,
                       std::int64_t N_prev, const Rat& gamma,
                       const DyadicInterval& delta, std::int64_t nu_prev,
                       const LemmaConfig& cfg) {
  if (N_prev < 2) throw ValidationError("N_prev must be at least 2");
  const std::int64_t base = std::int64_t(1) << delta.depth;
  const std::int64_t cap = std::int64_t(1) << cfg.nu_cap_log2;
  std::int64_t nu = base;
  while (nu <= nu_prev && nu <= cap / 2) nu *= 2;
  if (nu <= nu_prev) throw BudgetError("nu search budget exceeded");
  if (gamma == 0) return nu;
  const double e = to_double(eps);
  const double bound =
      std::min(e / (16.0 * std::sqrt(double(N_prev))),
               e / (std::ldexp(1.0, s + 2) * kTwoPi *
                    std::sqrt(2.0 * double(N_prev))));
  for (;; nu *= 2) {
    GapPiece gp(gamma, delta, nu, gap_eps);
    bool ok = true;
    for (std::int64_t k = 1; k < N_prev && ok; ++k)
      if (std::abs(gp.coeff(k)) >= bound) ok = false;
    if (ok) return nu;
    if (nu > cap / 2) throw BudgetError("nu search budget exceeded");
  }
}

SelectNResult select_N(const GapPiece& gs, int s, const Rat& eps,
                       std::int64_t N_prev, const LemmaConfig& cfg) {
  if (N_prev < 2) throw ValidationError("N_prev must be at least 2");
  SelectNResult res;
  if (gs.is_zero()) {
    res.N = N_prev + 1;
    return res;
  }
  const double target = to_double(eps) / std::pow(4.0, s + 1);
  const double block_target = to_double(eps) / std::ldexp(1.0, s + 1);
  const double tol = std::max(target / 20.0, 1e-16);
  const PiecewiseConstant h = gs.to_piecewise();
  const IntervalSet full = IntervalSet::full();
  TrigPolynomial Q;
  std::int64_t built = 0;
  for (std::int64_t N = N_prev + 1;;) {
    for (; built < N; ++built) Q.set_coeff(built, gs.coeff(built));
    double err = sampled_l1_error(Q, 0, N - 1, h, full, tol);
    res.N = N;
    res.l1_error = err;
    if (err <= target) break;
    if (N >= cfg.N_cap) {
      res.ok = false;
      res.message = "N budget exhausted at " + std::to_string(N) +
                    "; achieved L1 error " + std::to_string(err) +
                    " vs target " + std::to_string(target);
      break;
    }
    N = std::min(N * 2, cfg.N_cap);
  }
  res.block_l1_error = sampled_l1_error(Q, N_prev, res.N - 1, h, full, tol);
  if (res.ok && res.block_l1_error > block_target) {
    res.ok = false;
    res.message = "block L1 error " + std::to_string(res.block_l1_error) +
                  " misses bound " + std::to_string(block_target);
  }
  res.coeffs = Q.table();
  return res;
}

LemmaOutput lemma_construct(const StepFunction& f, const Rat& eps,
                            std::int64_t N0, const LemmaConfig& cfg) {
  if (eps <= 0 || 2 * eps >= 1)
    throw ValidationError("eps must lie in (0, 1/2)");
  if (N0 <= 2) throw ValidationError("N0 must exceed 2");
  if (!step_lemma_precondition(f, eps))
    throw ValidationError("admissibility bound |gamma| sqrt|Delta| violated");
  LemmaOutput out;
  out.eps = eps;
  out.N0 = N0;
  out.N = N0;
  out.E = IntervalSet::full();
  if (f.is_zero()) return out;
  const Rat gap_eps = eps / 8;
  std::int64_t N_prev = N0;
  std::int64_t nu_prev = 0;
  IntervalSet dips_all;
  int s = 1;
  for (const auto& piece : f.pieces()) {
    try {
      std::int64_t nu = select_nu(gap_eps, eps, s, N_prev, piece.value,
                                  piece.cell, nu_prev, cfg);
      GapPiece gp(piece.value, piece.cell, nu, gap_eps);
      SelectNResult sel = select_N(gp, s, eps, N_prev, cfg);
      LemmaPiece rec;
      rec.gs = gp;
      rec.block_lo = N_prev;
      rec.block_hi = sel.N;
      rec.Es = gp.plateau_set();
      rec.l1_error = sel.l1_error;
      rec.block_l1_error = sel.block_l1_error;
      rec.budget_ok = sel.ok;
      if (!sel.ok) {
        out.budget_ok = false;
        out.diagnostics.push_back("piece " + std::to_string(s) + ": " +
                                  sel.message);
      }
      for (std::int64_t k = N_prev; k < sel.N; ++k)
        out.P.set_coeff(k, k < std::int64_t(sel.coeffs.size())
                               ? sel.coeffs[std::size_t(k)]
                               : Complex{});
      dips_all = dips_all.unite(gp.dips());
      nu_prev = nu;
      N_prev = sel.N;
      out.pieces.push_back(std::move(rec));
    } catch (const BudgetError& ex) {
      out.budget_ok = false;
      out.diagnostics.push_back("piece " + std::to_string(s) + ": " +
                                ex.what());
    }
    ++s;
  }
  out.N = N_prev;
  // Removing every dip (rather than uniting the plateau sets) keeps E's
  // measure above 2pi - eps even when f's support misses part of [0,2pi).
  out.E = IntervalSet::full().difference(dips_all);
  return out;
}

namespace {

/// Riemann sum of |values| over a set, grid cells centered on x_j = j*h with
/// fractional weights at set boundaries.
double grid_integral_abs(const std::vector<double>& values,
                         const std::vector<std::pair<double, double>>& pieces) {
  const std::size_t M = values.size();
  const double step = kTwoPi / double(M);
  double total = 0.0;
  for (const auto& [a, b] : pieces) {
    if (b <= a) continue;
    auto jlo = std::int64_t(std::floor(a / step));
    auto jhi = std::int64_t(std::ceil(b / step));
    for (std::int64_t j = jlo; j <= jhi; ++j) {
      double x = double(j) * step;
      double w = std::min(b, x + 0.5 * step) - std::max(a, x - 0.5 * step);
      if (w <= 0.0) continue;
      total += w * std::abs(values[std::size_t((j % std::int64_t(M) +
                                                std::int64_t(M)) %
                                               std::int64_t(M))]);
    }
  }
  return total;
}

std::vector<std::pair<double, double>> pieces_radians(const IntervalSet& e) {
  std::vector<std::pair<double, double>> out;
  out.reserve(e.piece_count());
  for (const auto& p : e.pieces())
    out.emplace_back(pi_units_to_radians(p.first),
                     pi_units_to_radians(p.second));
  return out;
}

}  // namespace

LemmaReport verify_lemma(const LemmaOutput& out, const StepFunction& f,
                         const Rat& eps, int trials, const LemmaConfig& cfg,
                         std::uint64_t seed) {
  LemmaReport rep;
  rep.worst_margin = std::numeric_limits<double>::infinity();
  const double e = to_double(eps);
  const double tol = e / 100.0;
  auto add = [&rep](std::string name, double value, double bound, bool pass) {
    CheckResult c{std::move(name), pass, value, bound, bound - value};
    if (c.margin < rep.worst_margin) {
      rep.worst_margin = c.margin;
      rep.worst_check = c.name;
    }
    rep.pass = rep.pass && pass;
    rep.checks.push_back(std::move(c));
  };

  // (1) |E| > 2pi - eps, certified with exact rational arithmetic.
  bool meas_ok = (Rat(2) - out.E.measure_pi()) * pi_upper() < eps;
  add("measure_E", out.E.measure(), kTwoPi - e, meas_ok);

  // (2) int_E |P - f| < eps.
  double l1;
  if (out.N <= out.N0) {
    l1 = to_double(f.integral_abs_over_pi(out.E)) * kPi;
  } else {
    l1 = sampled_l1_error(out.P, out.N0, out.N - 1,
                          PiecewiseConstant::from_step(f), out.E, tol / 10.0);
  }
  add("l1_P_minus_f", l1, e + tol, l1 < e + tol);

  // (3) sum |C_k|^{2+eps} < eps.
  double ps = coeff_power_sum(out.P, out.N0, out.N, 2.0 + e);
  add("coeff_power_sum", ps, e, ps < e);

  // Per-piece structure: exact plateau measure and the Bessel block bound.
  int idx = 1;
  for (const auto& pc : out.pieces) {
    bool es_ok =
        pc.Es.measure_pi() >= (1 - eps) * pc.gs.cell().length_pi();  // exact
    add("Es_measure[" + std::to_string(idx) + "]", pc.Es.measure(),
        to_double((1 - eps) * pc.gs.cell().length_pi()) * kPi, es_ok);
    double bl2 = block_l2(out.P, BlockRange{idx, pc.block_lo, pc.block_hi});
    double bb = 2.0 / std::sqrt(e) * std::abs(to_double(pc.gs.gamma())) *
                std::sqrt(to_double(pc.gs.cell().length_pi()) * kPi);
    add("block_l2[" + std::to_string(idx) + "]", bl2, bb + 1e-8,
        bl2 <= bb + 1e-8);
    ++idx;
  }

  // (4) running partial sums over the test family.
  if (out.N > out.N0) {
    std::set<std::int64_t> mset;
    mset.insert(out.N0);
    mset.insert(out.N - 1);
    for (const auto& pc : out.pieces) {
      mset.insert(pc.block_lo);
      mset.insert(pc.block_hi - 1);
    }
    std::int64_t span = out.N - out.N0;
    std::int64_t stride =
        std::max<std::int64_t>(1, span / std::max(cfg.m_subsample, 1));
    for (std::int64_t m = out.N0; m < out.N; m += stride) mset.insert(m);

    struct TestSet {
      std::string name;
      std::vector<std::pair<double, double>> pieces;
      double int_abs_f;
      double worst = -std::numeric_limits<double>::infinity();
    };
    std::vector<TestSet> sets;
    auto push_set = [&](std::string name, const IntervalSet& s) {
      sets.push_back({std::move(name), pieces_radians(s),
                      to_double(f.integral_abs_over_pi(s)) * kPi});
    };
    push_set("E", out.E);
    idx = 1;
    for (const auto& pc : out.pieces)
      push_set("Es[" + std::to_string(idx++) + "]", pc.Es);
    std::mt19937_64 rng(seed ^ 0x5bd1e995995ULL);
    for (int t = 0; t < trials; ++t) {
      const int depth = 6;
      std::vector<IntervalSet::Piece> cells;
      for (std::int64_t i = 1; i <= (std::int64_t(1) << depth); ++i)
        if (rng() & 1) {
          DyadicInterval d(depth, i);
          cells.emplace_back(d.lo_pi(), d.hi_pi());
        }
      push_set("rand[" + std::to_string(t) + "]",
               IntervalSet::from_pieces(std::move(cells)).intersect(out.E));
    }

    const std::size_t M = next_pow2(
        std::max(4096.0, cfg.grid_factor * double(out.N)));
    const auto& table = out.P.table();
    for (std::int64_t m : mset) {
      std::vector<Complex> c(table.begin(),
                             table.begin() + std::min<std::size_t>(
                                                 table.size(), std::size_t(m) + 1));
      auto grid = detail::eval_on_grid(c, M);
      for (auto& ts : sets) {
        double v = grid_integral_abs(grid, ts.pieces) - ts.int_abs_f;
        ts.worst = std::max(ts.worst, v);
      }
    }
    for (const auto& ts : sets)
      add("partial_sum[" + ts.name + "]", ts.worst, e + 2.0 * tol,
          ts.worst < e + 2.0 * tol);
  }
  return rep;
}

}  // namespace useries
