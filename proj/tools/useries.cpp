#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "useries/pipeline.hpp"

using namespace useries;

namespace {

void add_config_flags(CLI::App* app, RunConfig& c, std::string& config_path) {
  app->add_option("--config", config_path, "key=value configuration file");
  app->add_option("--eps", c.eps, "accuracy parameter, rational in (0,1/2)");
  app->add_option("--S", c.S, "series depth (blocks)");
  app->add_option("--N0", c.N0, "lemma base frequency (> 2)");
  app->add_option("--N-cap", c.N_cap, "frequency budget per lemma run");
  app->add_option("--tol", c.tol, "quadrature tolerance for reports");
  app->add_option("--trials", c.trials, "random test sets per verification");
  app->add_option("--seed", c.seed, "verification RNG seed");
  app->add_option("--mode", c.mode, "rearrange | usual");
  app->add_option("--Q", c.Q, "stages / selections");
  app->add_option("--out-dir", c.out_dir, "artifact directory");
}

/// Re-parses the command line so explicit flags override file values.
RunConfig effective_config(const CLI::App* cmd, const RunConfig& cli_values,
                           const std::string& config_path) {
  if (config_path.empty()) return cli_values;
  RunConfig c = load_config(config_path);
  RunConfig d;  // defaults, to detect which flags were given
  auto pick = [&](const char* flag, auto RunConfig::* field) {
    if (cmd->count(flag) > 0) c.*field = cli_values.*field;
    (void)d;
  };
  pick("--eps", &RunConfig::eps);
  pick("--S", &RunConfig::S);
  pick("--N0", &RunConfig::N0);
  pick("--N-cap", &RunConfig::N_cap);
  pick("--tol", &RunConfig::tol);
  pick("--trials", &RunConfig::trials);
  pick("--seed", &RunConfig::seed);
  pick("--mode", &RunConfig::mode);
  pick("--Q", &RunConfig::Q);
  pick("--out-dir", &RunConfig::out_dir);
  return c;
}

int run_pipeline_mode(const RunConfig& c, const std::string& target_spec,
                      bool print_trace) {
  PipelineArtifacts a = cmd_pipeline(c, resolve_target(target_spec));
  write_artifacts(c, a);
  if (print_trace) std::cout << a.trace_csv;
  std::cout << (a.pass ? "PASS" : "FAIL") << " mode=" << c.mode
            << " target=" << target_spec << " artifacts in " << c.out_dir
            << "\n";
  return a.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Universal trigonometric series toolkit"};
  app.require_subcommand(1);

  RunConfig c;
  std::string config_path;
  std::string input_path;
  std::string target_spec = "zero";

  auto* lemma = app.add_subcommand(
      "lemma", "approximate one step function and verify the result");
  add_config_flags(lemma, c, config_path);
  lemma->add_option("--input", input_path, "step-function JSON file")
      ->required();

  auto* build_series =
      app.add_subcommand("build-series", "build the series to depth S");
  add_config_flags(build_series, c, config_path);

  auto* build_weight_cmd =
      app.add_subcommand("build-weight", "build the series and the weight");
  add_config_flags(build_weight_cmd, c, config_path);

  auto* rearrange = app.add_subcommand(
      "rearrange", "greedy rearrangement toward a target");
  add_config_flags(rearrange, c, config_path);
  rearrange->add_option("--target", target_spec,
                        "zero | signum | sawtooth | f<j> | step JSON path");

  auto* usual = app.add_subcommand(
      "usual", "partial-sum selection toward a target (cumulative mode)");
  add_config_flags(usual, c, config_path);
  usual->add_option("--target", target_spec,
                    "zero | signum | sawtooth | f<j> | step JSON path");

  auto* verify = app.add_subcommand(
      "verify", "re-run the verification checks on a step function");
  add_config_flags(verify, c, config_path);
  verify->add_option("--input", input_path, "step-function JSON file")
      ->required();

  auto* report = app.add_subcommand(
      "report", "run the configured mode and print the trace CSV");
  add_config_flags(report, c, config_path);
  report->add_option("--target", target_spec,
                     "zero | signum | sawtooth | f<j> | step JSON path");

  auto* show = app.add_subcommand("show-config",
                                  "print the effective configuration");
  add_config_flags(show, c, config_path);

  CLI11_PARSE(app, argc, argv);

  try {
    CLI::App* cmd = app.get_subcommands().front();
    RunConfig cfg = effective_config(cmd, c, config_path);

    if (cmd == show) {
      std::cout << config_to_string(cfg);
      return 0;
    }
    if (cmd == lemma || cmd == verify) {
      StepFunction f = step_from_json(load_json(input_path));
      Json out = cmd_lemma(cfg, f);
      if (cmd == lemma) save_json(out, cfg.out_dir + "/lemma.json");
      bool pass = out.at("report").at("pass").get<bool>();
      for (const auto& chk : out.at("report").at("checks"))
        std::cout << (chk.at("pass").get<bool>() ? "PASS " : "FAIL ")
                  << chk.at("name").get<std::string>()
                  << " value=" << chk.at("value").get<double>()
                  << " bound=" << chk.at("bound").get<double>() << "\n";
      std::cout << (pass ? "PASS" : "FAIL") << " overall\n";
      return pass ? 0 : 1;
    }
    if (cmd == build_series) {
      validate_config(cfg);
      UniversalSeries u = cfg.mode == "usual"
                              ? build_usual_series(cfg.S, config_lemma(cfg))
                              : build_universal_series(cfg.S,
                                                       config_lemma(cfg));
      save_json(series_to_json(u), cfg.out_dir + "/series.json");
      std::cout << (u.complete ? "PASS" : "FAIL") << " series S=" << cfg.S
                << " N_end=" << u.N_end() << "\n";
      return u.complete ? 0 : 1;
    }
    if (cmd == build_weight_cmd) {
      validate_config(cfg);
      UniversalSeries u = cfg.mode == "usual"
                              ? build_usual_series(cfg.S, config_lemma(cfg))
                              : build_universal_series(cfg.S,
                                                       config_lemma(cfg));
      save_json(series_to_json(u), cfg.out_dir + "/series.json");
      Weight w = build_weight(config_eps(cfg), u);
      save_json(weight_to_json(w), cfg.out_dir + "/weight.json");
      std::cout << "PASS weight n0=" << w.n0() << " measure_ne1="
                << to_double(w.measure_ne1_pi()) * 3.141592653589793 << "\n";
      return 0;
    }
    if (cmd == rearrange) {
      cfg.mode = "rearrange";
      return run_pipeline_mode(cfg, target_spec, false);
    }
    if (cmd == usual) {
      cfg.mode = "usual";
      return run_pipeline_mode(cfg, target_spec, false);
    }
    if (cmd == report) return run_pipeline_mode(cfg, target_spec, true);
    return 0;
  } catch (const ValidationError& e) {
    std::cerr << "{\"error\":\"validation\",\"message\":\"" << e.what()
              << "\"}\n";
    return 2;
  } catch (const BudgetError& e) {
    std::cerr << "{\"error\":\"budget\",\"message\":\"" << e.what()
              << "\"}\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "{\"error\":\"runtime\",\"message\":\"" << e.what()
              << "\"}\n";
    return 1;
  }
}
