#include "useries/pipeline.hpp"

#include <fstream>
#include <sstream>

namespace useries {

Rat config_eps(const RunConfig& c) {
  Rat e = parse_rational(c.eps);
  if (!(e > 0 && e < parse_rational("1/2")))
    throw ValidationError("eps must lie in (0, 1/2)");
  return e;
}

LemmaConfig config_lemma(const RunConfig& c) {
  LemmaConfig cfg;
  cfg.N_cap = c.N_cap;
  return cfg;
}

void validate_config(const RunConfig& c) {
  config_eps(c);
  if (c.S < 1) throw ValidationError("S must be at least 1");
  if (c.N0 <= 2) throw ValidationError("N0 must exceed 2");
  if (c.N_cap <= c.N0) throw ValidationError("N_cap must exceed N0");
  if (!(c.tol > 0)) throw ValidationError("tol must be positive");
  if (c.trials < 0) throw ValidationError("trials must be nonnegative");
  if (c.Q < 1) throw ValidationError("Q must be at least 1");
  if (c.mode != "rearrange" && c.mode != "usual")
    throw ValidationError("mode must be 'rearrange' or 'usual'");
}

void apply_config_entry(RunConfig& c, const std::string& key,
                        const std::string& value) {
  if (key == "eps")
    c.eps = value;
  else if (key == "S")
    c.S = std::stoi(value);
  else if (key == "N0")
    c.N0 = std::stoll(value);
  else if (key == "N_cap")
    c.N_cap = std::stoll(value);
  else if (key == "tol")
    c.tol = std::stod(value);
  else if (key == "trials")
    c.trials = std::stoi(value);
  else if (key == "seed")
    c.seed = std::stoull(value);
  else if (key == "mode")
    c.mode = value;
  else if (key == "Q")
    c.Q = std::stoi(value);
  else if (key == "out_dir")
    c.out_dir = value;
  else
    throw ValidationError("unknown config key: " + key);
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config " + path);
  RunConfig c;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    line = line.substr(first, last - first + 1);
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ValidationError("config line " + std::to_string(lineno) +
                            ": expected key=value");
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t");
      const auto b = s.find_last_not_of(" \t");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    apply_config_entry(c, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return c;
}

std::string config_to_string(const RunConfig& c) {
  std::ostringstream os;
  os << "eps=" << c.eps << '\n'
     << "S=" << c.S << '\n'
     << "N0=" << c.N0 << '\n'
     << "N_cap=" << c.N_cap << '\n'
     << "tol=" << c.tol << '\n'
     << "trials=" << c.trials << '\n'
     << "seed=" << c.seed << '\n'
     << "mode=" << c.mode << '\n'
     << "Q=" << c.Q << '\n'
     << "out_dir=" << c.out_dir << '\n';
  return os.str();
}

Integrand resolve_target(const std::string& spec) {
  if (spec == "zero") return integrand_zero();
  if (spec == "signum") return integrand_signum();
  if (spec == "sawtooth") return integrand_sawtooth();
  if (spec.size() > 1 && spec[0] == 'f' &&
      spec.find_first_not_of("0123456789", 1) == std::string::npos)
    return integrand_from_step(
        enumerate_step_function(std::stoull(spec.substr(1))), spec);
  return integrand_from_step(step_from_json(load_json(spec)), spec);
}

Json cmd_lemma(const RunConfig& c, const StepFunction& f) {
  validate_config(c);
  const Rat eps = config_eps(c);
  const LemmaConfig cfg = config_lemma(c);
  LemmaOutput out = lemma_construct(f, eps, c.N0, cfg);
  LemmaReport rep = verify_lemma(out, f, eps, c.trials, cfg, c.seed);
  return Json{{"output", lemma_to_json(out)}, {"report", report_to_json(rep)}};
}

PipelineArtifacts cmd_pipeline(const RunConfig& c, const Integrand& target) {
  validate_config(c);
  const Rat eps = config_eps(c);
  const LemmaConfig cfg = config_lemma(c);
  PipelineArtifacts a;

  UniversalSeries series = c.mode == "usual" ? build_usual_series(c.S, cfg)
                                             : build_universal_series(c.S, cfg);
  a.series = series_to_json(series);
  if (!series.complete)
    throw BudgetError("series construction stopped early: " +
                      (series.diagnostics.empty() ? "unknown"
                                                  : series.diagnostics[0]));
  Weight w = build_weight(eps, series);
  a.weight = weight_to_json(w);

  if (c.mode == "usual") {
    UsualSenseSelection sel = usual_sense_select(target, series, w, c.Q);
    a.result = selection_to_json(sel);
    a.trace_csv = convergence_report(sel);
    for (const auto& st : sel.stages) a.pass &= st.ok;
  } else {
    RearrangementPlan plan = rearrange_to_target(target, series, w, c.Q);
    a.result = plan_to_json(plan);
    a.trace_csv = convergence_report(plan);
    for (const auto& st : plan.stages) a.pass &= st.ok;
  }
  return a;
}

void write_artifacts(const RunConfig& c, const PipelineArtifacts& a) {
  save_json(a.series, c.out_dir + "/series.json");
  save_json(a.weight, c.out_dir + "/weight.json");
  save_json(a.result, c.out_dir + (c.mode == "usual" ? "/selection.json"
                                                     : "/plan.json"));
  std::ofstream trace(c.out_dir + "/trace.csv", std::ios::binary);
  if (!trace) throw ValidationError("cannot write trace.csv");
  trace << a.trace_csv;
}

}  // namespace useries
