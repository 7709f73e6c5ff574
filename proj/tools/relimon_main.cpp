// relimon command line front end. Everything goes through the C API in
// relimon.h; exit codes are 0 (success / in control), 1 (error), 2 (out of
// control) and nothing else.
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "relimon.h"

namespace {

struct SeriesDeleter {
  void operator()(relimon_series* p) const { relimon_series_free(p); }
};
struct GroupedDeleter {
  void operator()(relimon_grouped* p) const { relimon_grouped_free(p); }
};
struct FitDeleter {
  void operator()(relimon_fit* p) const { relimon_fit_free(p); }
};
struct ChartDeleter {
  void operator()(relimon_chart* p) const { relimon_chart_free(p); }
};
using SeriesPtr = std::unique_ptr<relimon_series, SeriesDeleter>;
using GroupedPtr = std::unique_ptr<relimon_grouped, GroupedDeleter>;
using FitPtr = std::unique_ptr<relimon_fit, FitDeleter>;
using ChartPtr = std::unique_ptr<relimon_chart, ChartDeleter>;

struct CliError {
  std::string message;
};

[[noreturn]] void die(const std::string& message) { throw CliError{message}; }

void check(relimon_status status) {
  if (status != RELIMON_OK) die(relimon_last_error());
}

std::string owned_string(char* text) {
  std::string out = text != nullptr ? text : "";
  relimon_string_free(text);
  return out;
}

struct InputOptions {
  std::string input;
  std::string format = "plain";
};

struct SolverOptions {
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  double tol_score = 1e-9;
  double tol_step = 1e-12;
  int max_iterations = 100;
  int scan_points = 256;
};

struct ModelOptions {
  double a = 0.0;
  double b = 0.0;
  bool given() const { return a > 0.0 || b > 0.0; }
};

void add_input_options(CLI::App* cmd, InputOptions* opts) {
  cmd->add_option("--input", opts->input,
                  "input file path, '-' for stdin, or 'musa' for the bundled dataset")
      ->required();
  cmd->add_option("--format", opts->format, "input format")
      ->check(CLI::IsMember({"plain", "csv"}))
      ->capture_default_str();
}

void add_solver_options(CLI::App* cmd, SolverOptions* opts) {
  cmd->add_option("--bracket-lo", opts->bracket_lo, "lower b bracket (0 = auto)")
      ->envname("RELIMON_BRACKET_LO");
  cmd->add_option("--bracket-hi", opts->bracket_hi, "upper b bracket (0 = auto)")
      ->envname("RELIMON_BRACKET_HI");
  cmd->add_option("--tol", opts->tol_score, "relative score tolerance")
      ->envname("RELIMON_TOL")
      ->capture_default_str();
  cmd->add_option("--tol-step", opts->tol_step, "relative step tolerance")->capture_default_str();
  cmd->add_option("--max-iter", opts->max_iterations, "Newton iteration cap")
      ->capture_default_str();
  cmd->add_option("--scan-points", opts->scan_points, "bracket scan resolution")
      ->capture_default_str();
}

void add_model_options(CLI::App* cmd, ModelOptions* opts) {
  cmd->add_option("--a", opts->a, "known parameter a (skips fitting; requires --b)");
  cmd->add_option("--b", opts->b, "known parameter b (skips fitting; requires --a)");
}

SeriesPtr load_series(const InputOptions& opts) {
  relimon_series* series = nullptr;
  if (opts.input == "musa") {
    check(relimon_series_musa(&series));
    return SeriesPtr(series);
  }
  std::string text;
  if (opts.input == "-") {
    std::ostringstream buffer;
    buffer << std::cin.rdbuf();
    text = buffer.str();
  } else {
    std::ifstream file(opts.input, std::ios::binary);
    if (!file) die("cannot open input file '" + opts.input + "'");
    std::ostringstream buffer;
    buffer << file.rdbuf();
    text = buffer.str();
  }
  const auto format = opts.format == "csv" ? RELIMON_FORMAT_CSV : RELIMON_FORMAT_PLAIN;
  const char* label = opts.input == "-" ? "stdin" : opts.input.c_str();
  check(relimon_series_parse(text.c_str(), format, label, &series));
  return SeriesPtr(series);
}

relimon_fit_options make_fit_options(const SolverOptions& solver) {
  relimon_fit_options options;
  relimon_fit_options_init(&options);
  options.bracket_lo = solver.bracket_lo;
  options.bracket_hi = solver.bracket_hi;
  options.tol_score_rel = solver.tol_score;
  options.tol_step_rel = solver.tol_step;
  options.max_iterations = solver.max_iterations;
  options.scan_points = solver.scan_points;
  return options;
}

FitPtr run_fit(const relimon_grouped* grouped, const SolverOptions& solver) {
  const relimon_fit_options options = make_fit_options(solver);
  relimon_fit* fit = nullptr;
  check(relimon_fit_run(grouped, &options, &fit));
  return FitPtr(fit);
}

// Resolves (a, b): explicit --a/--b win, otherwise fit the data.
void resolve_model(const ModelOptions& model, const relimon_grouped* grouped,
                   const SolverOptions& solver, double* a, double* b, FitPtr* fit_out) {
  if (model.given()) {
    if (!(model.a > 0.0) || !(model.b > 0.0)) die("--a and --b must be given together");
    *a = model.a;
    *b = model.b;
    return;
  }
  FitPtr fit = run_fit(grouped, solver);
  relimon_fit_info info;
  check(relimon_fit_summary(fit.get(), &info));
  if (info.converged == 0) die("fit did not converge; try --max-iter or an explicit bracket");
  *a = info.a;
  *b = info.b;
  if (fit_out != nullptr) *fit_out = std::move(fit);
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream file(path, std::ios::binary);
  if (!file) die("cannot write '" + path.string() + "'");
  file << content;
  if (!file) die("write failed for '" + path.string() + "'");
}

int cmd_fit(const InputOptions& input, int order, const SolverOptions& solver) {
  SeriesPtr series = load_series(input);
  relimon_grouped* grouped_raw = nullptr;
  check(relimon_group(series.get(), order, &grouped_raw));
  GroupedPtr grouped(grouped_raw);
  FitPtr fit = run_fit(grouped.get(), solver);

  char* json = nullptr;
  check(relimon_fit_to_json(fit.get(), &json));
  std::cout << owned_string(json) << "\n";

  relimon_fit_info info;
  check(relimon_fit_summary(fit.get(), &info));
  if (info.converged == 0) {
    std::cerr << "error: did not converge within " << info.iterations << " iterations\n";
    return 1;
  }
  return 0;
}

int cmd_limits(const InputOptions& input, int order, const ModelOptions& model,
               const SolverOptions& solver) {
  SeriesPtr series = load_series(input);
  relimon_grouped* grouped_raw = nullptr;
  check(relimon_group(series.get(), order, &grouped_raw));
  GroupedPtr grouped(grouped_raw);

  double a = 0.0;
  double b = 0.0;
  resolve_model(model, grouped.get(), solver, &a, &b, nullptr);
  char* json = nullptr;
  check(relimon_limits_to_json(a, b, order, &json));
  std::cout << owned_string(json) << "\n";
  return 0;
}

ChartPtr build_chart(const relimon_grouped* grouped, double a, double b,
                     const std::string& m_scale) {
  const auto scale = m_scale == "ordered" ? RELIMON_MSCALE_ORDERED : RELIMON_MSCALE_BASE;
  relimon_chart* chart = nullptr;
  check(relimon_chart_build(grouped, a, b, scale, &chart));
  return ChartPtr(chart);
}

int cmd_chart(const InputOptions& input, int order, const ModelOptions& model,
              const SolverOptions& solver, const std::string& m_scale) {
  SeriesPtr series = load_series(input);
  relimon_grouped* grouped_raw = nullptr;
  check(relimon_group(series.get(), order, &grouped_raw));
  GroupedPtr grouped(grouped_raw);

  double a = 0.0;
  double b = 0.0;
  resolve_model(model, grouped.get(), solver, &a, &b, nullptr);
  ChartPtr chart = build_chart(grouped.get(), a, b, m_scale);
  char* csv = nullptr;
  check(relimon_chart_to_csv(chart.get(), &csv));
  std::cout << owned_string(csv);
  return 0;
}

int cmd_detect(const InputOptions& input, int order, const ModelOptions& model,
               const SolverOptions& solver, const std::string& m_scale) {
  SeriesPtr series = load_series(input);
  relimon_grouped* grouped_raw = nullptr;
  check(relimon_group(series.get(), order, &grouped_raw));
  GroupedPtr grouped(grouped_raw);

  double a = 0.0;
  double b = 0.0;
  resolve_model(model, grouped.get(), solver, &a, &b, nullptr);
  ChartPtr chart = build_chart(grouped.get(), a, b, m_scale);
  char* json = nullptr;
  check(relimon_detect_to_json(chart.get(), &json));
  std::cout << owned_string(json) << "\n";
  return relimon_chart_verdict(chart.get()) == RELIMON_VERDICT_OUT_OF_CONTROL ? 2 : 0;
}

int cmd_report(const InputOptions& input, int order, const ModelOptions& model,
               const SolverOptions& solver, const std::string& m_scale, bool log_y,
               const std::string& out_dir) {
  SeriesPtr series = load_series(input);
  relimon_grouped* grouped_raw = nullptr;
  check(relimon_group(series.get(), order, &grouped_raw));
  GroupedPtr grouped(grouped_raw);

  double a = 0.0;
  double b = 0.0;
  FitPtr fit;  // stays null on the known-parameters path; report carries "fit": null
  resolve_model(model, grouped.get(), solver, &a, &b, &fit);
  ChartPtr chart = build_chart(grouped.get(), a, b, m_scale);

  char* report = nullptr;
  check(relimon_report_to_json(series.get(), fit.get(), chart.get(), &report));
  char* csv = nullptr;
  check(relimon_chart_to_csv(chart.get(), &csv));
  const std::string title = "Mean value chart (r=" + std::to_string(order) + ", " +
                            relimon_series_label(series.get()) + ")";
  char* svg = nullptr;
  check(relimon_chart_to_svg(chart.get(), log_y ? 1 : 0, title.c_str(), &svg));

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  const std::filesystem::path dir(out_dir);
  write_file(dir / "report.json", owned_string(report) + "\n");
  write_file(dir / "chart.csv", owned_string(csv));
  write_file(dir / "chart.svg", owned_string(svg));

  const bool out_of_control =
      relimon_chart_verdict(chart.get()) == RELIMON_VERDICT_OUT_OF_CONTROL;
  std::cout << "wrote report.json chart.csv chart.svg to " << out_dir << " (verdict: "
            << (out_of_control ? "out_of_control" : "in_control") << ", "
            << relimon_chart_alarm_count(chart.get()) << " alarms)\n";
  return out_of_control ? 2 : 0;
}

int cmd_simulate(double a, double b, double horizon, std::uint64_t max_failures,
                 std::uint64_t seed, std::uint32_t replications) {
  for (std::uint32_t rep = 0; rep < replications; ++rep) {
    relimon_series* series_raw = nullptr;
    check(relimon_simulate(a, b, horizon, max_failures, seed, rep, &series_raw));
    SeriesPtr series(series_raw);
    if (replications > 1) std::cout << "# replication " << rep << "\n";
    if (relimon_series_count(series.get()) == 0) continue;
    char* text = nullptr;
    check(relimon_series_serialize(series.get(), RELIMON_FORMAT_PLAIN, &text));
    std::cout << owned_string(text);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string("relimon ") + relimon_version() +
               " — reliability monitoring with order-statistics mean value charts"};
  app.require_subcommand(1);

  InputOptions input;
  SolverOptions solver;
  ModelOptions model;
  int order = 4;
  std::string m_scale = "base";
  std::string out_dir = ".";
  bool log_y_flag = false;
  bool linear_y_flag = false;
  double sim_a = 0.0;
  double sim_b = 0.0;
  double horizon = 0.0;
  std::uint64_t max_failures = 0;
  std::uint64_t seed = 0;
  std::uint32_t replications = 1;

  const auto add_order = [&order](CLI::App* cmd) {
    cmd->add_option("--order", order, "subgroup size r")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
  };
  const auto add_scale = [&m_scale](CLI::App* cmd) {
    cmd->add_option("--m-scale", m_scale, "m scale for plotted differences")
        ->check(CLI::IsMember({"base", "ordered"}))
        ->capture_default_str();
  };

  CLI::App* fit_cmd = app.add_subcommand("fit", "estimate (a, b) by maximum likelihood");
  add_input_options(fit_cmd, &input);
  add_order(fit_cmd);
  add_solver_options(fit_cmd, &solver);

  CLI::App* limits_cmd = app.add_subcommand("limits", "print probability-based control limits");
  add_input_options(limits_cmd, &input);
  add_order(limits_cmd);
  add_model_options(limits_cmd, &model);
  add_solver_options(limits_cmd, &solver);

  CLI::App* chart_cmd = app.add_subcommand("chart", "emit the mean value chart as CSV");
  add_input_options(chart_cmd, &input);
  add_order(chart_cmd);
  add_model_options(chart_cmd, &model);
  add_scale(chart_cmd);
  add_solver_options(chart_cmd, &solver);

  CLI::App* detect_cmd =
      app.add_subcommand("detect", "classify chart points; exit 2 when out of control");
  add_input_options(detect_cmd, &input);
  add_order(detect_cmd);
  add_model_options(detect_cmd, &model);
  add_scale(detect_cmd);
  add_solver_options(detect_cmd, &solver);

  CLI::App* report_cmd = app.add_subcommand(
      "report", "write report.json, chart.csv and chart.svg; exit 2 when out of control");
  add_input_options(report_cmd, &input);
  add_order(report_cmd);
  add_model_options(report_cmd, &model);
  add_scale(report_cmd);
  add_solver_options(report_cmd, &solver);
  report_cmd->add_option("--out", out_dir, "output directory")->capture_default_str();
  report_cmd->add_flag("--log-y", log_y_flag, "log-scale y axis in the SVG (default)");
  report_cmd->add_flag("--linear-y", linear_y_flag, "linear y axis in the SVG");

  CLI::App* simulate_cmd =
      app.add_subcommand("simulate", "generate a failure series from the model");
  simulate_cmd->add_option("--a", sim_a, "parameter a")->required();
  simulate_cmd->add_option("--b", sim_b, "parameter b")->required();
  simulate_cmd->add_option("--horizon", horizon, "time horizon")->required();
  simulate_cmd->add_option("--failures", max_failures, "stop after this many failures (0 = off)");
  simulate_cmd->add_option("--seed", seed, "random seed")->capture_default_str();
  simulate_cmd->add_option("--replications", replications, "independent replications")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (fit_cmd->parsed()) return cmd_fit(input, order, solver);
    if (limits_cmd->parsed()) return cmd_limits(input, order, model, solver);
    if (chart_cmd->parsed()) return cmd_chart(input, order, model, solver, m_scale);
    if (detect_cmd->parsed()) return cmd_detect(input, order, model, solver, m_scale);
    if (report_cmd->parsed())
      return cmd_report(input, order, model, solver, m_scale, !linear_y_flag, out_dir);
    if (simulate_cmd->parsed())
      return cmd_simulate(sim_a, sim_b, horizon, max_failures, seed, replications);
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
