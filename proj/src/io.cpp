#include "useries/io.hpp"

#include <fstream>

namespace useries {

namespace {

Json rat_json(const Rat& r) { return rational_to_string(r); }
Rat rat_from(const Json& j) { return parse_rational(j.get<std::string>()); }

Json check_to_json(const CheckResult& c) {
  return Json{{"name", c.name},
              {"pass", c.pass},
              {"value", c.value},
              {"bound", c.bound},
              {"margin", c.margin}};
}

}  // namespace

Json step_to_json(const StepFunction& f) {
  Json pieces = Json::array();
  for (const auto& p : f.pieces())
    pieces.push_back(Json{{"m", p.cell.depth},
                          {"i", p.cell.index},
                          {"num", numerator(p.value).str()},
                          {"den", denominator(p.value).str()}});
  return Json{{"pieces", pieces}};
}

StepFunction step_from_json(const Json& j) {
  std::vector<StepFunction::Piece> pieces;
  for (const auto& p : j.at("pieces")) {
    Rat v = parse_rational(p.at("num").get<std::string>() + "/" +
                           p.at("den").get<std::string>());
    pieces.push_back({DyadicInterval(p.at("m").get<int>(),
                                     p.at("i").get<std::int64_t>()),
                      v});
  }
  return StepFunction::from_pieces(std::move(pieces));
}

Json set_to_json(const IntervalSet& s) {
  Json out = Json::array();
  for (const auto& p : s.pieces())
    out.push_back(Json{{"lo_pi", rat_json(p.first)},
                       {"hi_pi", rat_json(p.second)}});
  return out;
}

IntervalSet set_from_json(const Json& j) {
  std::vector<IntervalSet::Piece> pieces;
  for (const auto& p : j)
    pieces.emplace_back(rat_from(p.at("lo_pi")), rat_from(p.at("hi_pi")));
  return IntervalSet::from_pieces(std::move(pieces));
}

Json coeffs_to_json(const TrigPolynomial& P) {
  Json out = Json::array();
  for (std::int64_t k = 0; k <= P.max_freq(); ++k) {
    Complex c = P.coeff(k);
    out.push_back(Json{{"k", k}, {"re", c.real()}, {"im", c.imag()}});
  }
  return out;
}

TrigPolynomial coeffs_from_json(const Json& j) {
  TrigPolynomial P;
  for (const auto& e : j)
    P.set_coeff(e.at("k").get<std::int64_t>(),
                Complex(e.at("re").get<double>(), e.at("im").get<double>()));
  return P;
}

Json lemma_to_json(const LemmaOutput& out) {
  Json pieces = Json::array();
  for (const auto& p : out.pieces)
    pieces.push_back(Json{{"nu", p.gs.nu()},
                          {"gamma", rat_json(p.gs.gamma())},
                          {"block_lo", p.block_lo},
                          {"block_hi", p.block_hi},
                          {"Es", set_to_json(p.Es)},
                          {"l1_error", p.l1_error},
                          {"block_l1_error", p.block_l1_error},
                          {"budget_ok", p.budget_ok}});
  return Json{{"eps", rat_json(out.eps)},
              {"N0", out.N0},
              {"N", out.N},
              {"coefficients", coeffs_to_json(out.P)},
              {"E", set_to_json(out.E)},
              {"pieces", pieces},
              {"budget_ok", out.budget_ok},
              {"diagnostics", out.diagnostics}};
}

Json report_to_json(const LemmaReport& rep) {
  Json checks = Json::array();
  for (const auto& c : rep.checks) checks.push_back(check_to_json(c));
  return Json{{"pass", rep.pass},
              {"worst_margin", rep.worst_margin},
              {"worst_check", rep.worst_check},
              {"checks", checks}};
}

Json series_to_json(const UniversalSeries& u) {
  Json blocks = Json::array();
  for (const auto& b : u.blocks)
    blocks.push_back(Json{{"s", b.s},
                          {"enum_index", b.enum_index},
                          {"eps", rat_json(b.eps_s)},
                          {"range_lo", b.range.lo},
                          {"range_hi", b.range.hi},
                          {"N0", b.out.N0},
                          {"f", step_to_json(b.f)},
                          {"E", set_to_json(b.out.E)},
                          {"measure_ok", b.measure_ok},
                          {"l1_error", b.l1_error},
                          {"l1_ok", b.l1_ok},
                          {"power_sum", b.power_sum},
                          {"power_ok", b.power_ok},
                          {"partial_ok", b.partial_ok},
                          {"budget_ok", b.budget_ok}});
  return Json{{"S", u.S},
              {"cumulative", u.cumulative},
              {"complete", u.complete},
              {"blocks", blocks},
              {"coefficients", coeffs_to_json(u.C)},
              {"diagnostics", u.diagnostics}};
}

UniversalSeries series_from_json(const Json& j) {
  UniversalSeries u;
  u.S = j.at("S").get<int>();
  u.cumulative = j.at("cumulative").get<bool>();
  u.complete = j.at("complete").get<bool>();
  u.C = coeffs_from_json(j.at("coefficients"));
  u.diagnostics = j.at("diagnostics").get<std::vector<std::string>>();
  for (const auto& e : j.at("blocks")) {
    BlockRecord b;
    b.s = e.at("s").get<int>();
    b.enum_index = e.at("enum_index").get<std::uint64_t>();
    b.eps_s = rat_from(e.at("eps"));
    b.range = BlockRange{b.s, e.at("range_lo").get<std::int64_t>(),
                         e.at("range_hi").get<std::int64_t>()};
    b.f = step_from_json(e.at("f"));
    b.out.eps = b.eps_s;
    b.out.N0 = e.at("N0").get<std::int64_t>();
    b.out.N = b.range.hi;
    b.out.E = set_from_json(e.at("E"));
    for (std::int64_t k = b.out.N0; k < b.out.N; ++k)
      b.out.P.set_coeff(k, u.C.coeff(k));
    b.measure_ok = e.at("measure_ok").get<bool>();
    b.l1_error = e.at("l1_error").get<double>();
    b.l1_ok = e.at("l1_ok").get<bool>();
    b.power_sum = e.at("power_sum").get<double>();
    b.power_ok = e.at("power_ok").get<bool>();
    b.partial_ok = e.at("partial_ok").get<bool>();
    b.budget_ok = e.at("budget_ok").get<bool>();
    u.blocks.push_back(std::move(b));
  }
  return u;
}

Json weight_to_json(const Weight& w) {
  Json parts = Json::array();
  for (const auto& p : w.parts())
    parts.push_back(Json{{"n", p.n},
                         {"level", p.level},
                         {"set", set_to_json(p.set)}});
  return Json{{"eps", rat_json(w.eps())},
              {"n0", w.n0()},
              {"measure_ne1_pi", rat_json(w.measure_ne1_pi())},
              {"E", set_to_json(w.E())},
              {"B", set_to_json(w.B())},
              {"parts", parts}};
}

Weight weight_from_json(const Json& j) {
  std::vector<Weight::Part> parts;
  for (const auto& p : j.at("parts"))
    parts.push_back({set_from_json(p.at("set")), p.at("n").get<int>(),
                     p.at("level").get<double>()});
  return Weight(rat_from(j.at("eps")), j.at("n0").get<int>(),
                std::move(parts), set_from_json(j.at("E")),
                set_from_json(j.at("B")));
}

Json plan_to_json(const RearrangementPlan& p) {
  Json stages = Json::array();
  for (const auto& st : p.stages)
    stages.push_back(Json{{"q", st.q},
                          {"nu", st.nu},
                          {"m", st.m},
                          {"match_error", st.match_error},
                          {"error", st.error},
                          {"bound", st.bound},
                          {"bound_paired", st.bound_paired},
                          {"ok", st.ok},
                          {"ok_strict", st.ok_strict}});
  return Json{{"Q", p.Q},
              {"tol", p.tol},
              {"complete", p.complete},
              {"stages", stages},
              {"atoms", p.atoms},
              {"diagnostics", p.diagnostics}};
}

Json selection_to_json(const UsualSenseSelection& s) {
  Json stages = Json::array();
  for (const auto& st : s.stages)
    stages.push_back(Json{{"k", st.k},
                          {"n", st.n},
                          {"M", st.M},
                          {"match_error", st.match_error},
                          {"error", st.error},
                          {"envelope", st.envelope},
                          {"ok", st.ok}});
  return Json{{"K", s.K},
              {"tol", s.tol},
              {"complete", s.complete},
              {"stages", stages},
              {"diagnostics", s.diagnostics}};
}

void save_json(const Json& j, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot open " + path + " for writing");
  out << j.dump(2) << '\n';
}

Json load_json(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path);
  Json j;
  in >> j;
  return j;
}

}  // namespace useries
