#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <fmt/format.h>
#include <fstream>
#include <iostream>
#include <sstream>

#include "loca/agent.hpp"
#include "loca/config.hpp"
#include "loca/environments.hpp"
#include "loca/error.hpp"
#include "loca/report.hpp"
#include "loca/results.hpp"
#include "loca/suite.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kValidationExit = 1;
constexpr int kRuntimeExit = 2;

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw loca::Error(loca::Errc::IoError, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int exit_code_for(loca::Errc code) {
  switch (code) {
    case loca::Errc::ParseError:
    case loca::Errc::ValidationError:
    case loca::Errc::MissingBaseline:
    case loca::Errc::UndefinedBaseline:
      return kValidationExit;
    default:
      return kRuntimeExit;
  }
}

void cmd_run(const fs::path& config_path, const fs::path& out, std::optional<std::size_t> runs,
             std::optional<std::uint64_t> seed, bool serial) {
  loca::ExperimentConfig cfg = loca::parse_config(read_text(config_path));
  if (runs) {
    if (*runs < 1) throw loca::Error(loca::Errc::ValidationError, "--runs: must be >= 1");
    cfg.runs = *runs;
  }
  if (seed) cfg.base_seed = *seed;

  const auto records = loca::run_suite(cfg, serial ? loca::Execution::Serial : loca::Execution::Parallel);
  loca::MethodSummary summary = loca::summarize(cfg.label, records);
  if (cfg.label == cfg.baseline && summary.gain != 0.0 && std::isfinite(summary.gain)) summary.relative_gain = 1.0;
  loca::write_results(records, summary, cfg, out);
  std::cout << fmt::format("{}: default regret {} ({}), LoCA regret {} ({}), gain {}\n", cfg.label,
                           loca::format_number(summary.default_regret.mean),
                           loca::format_number(summary.default_regret.standard_error),
                           loca::format_number(summary.loca_regret.mean),
                           loca::format_number(summary.loca_regret.standard_error), loca::format_number(summary.gain));
}

std::vector<loca::ResultSet> load_all(const fs::path& in) {
  std::vector<loca::ResultSet> sets;
  for (const auto& dir : loca::find_result_dirs(in)) sets.push_back(loca::read_results(dir));
  if (sets.empty()) throw loca::Error(loca::Errc::IoError, "no results under " + in.string());
  return sets;
}

void cmd_report(const fs::path& in, const std::string& baseline) {
  std::vector<loca::MethodSummary> summaries;
  for (const auto& rs : load_all(in)) summaries.insert(summaries.end(), rs.summaries.begin(), rs.summaries.end());
  std::cout << loca::render_table(summaries, baseline);
}

void cmd_plot(const fs::path& in, const fs::path& out, const std::string& mode) {
  std::vector<loca::NamedCurve> curves;
  for (const auto& rs : load_all(in)) {
    std::vector<loca::EvalCurve> per_run;
    for (const auto& [key, curve] : rs.curves)
      if (key.second == mode) per_run.push_back(curve);
    if (per_run.empty()) continue;
    curves.push_back({rs.config.label, loca::mean_curve(per_run)});
  }
  loca::emit_svg_curves(curves, {}, out);
}

void cmd_list() {
  std::cout << "environments:\n";
  for (const auto& e : loca::registered_environments()) std::cout << "  " << e << '\n';
  std::cout << "agents:\n";
  for (const auto& a : loca::registered_agents()) std::cout << "  " << a << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"LoCA benchmark harness"};
  app.require_subcommand(1);

  fs::path config_path, out_dir;
  std::optional<std::size_t> runs;
  std::optional<std::uint64_t> seed;
  bool serial = false;
  auto* run = app.add_subcommand("run", "run every seeded (LoCA, default) pair of a config");
  run->add_option("--config", config_path, "experiment config file")->required();
  run->add_option("--out", out_dir, "output directory")->required();
  run->add_option("--runs", runs, "override the number of runs");
  run->add_option("--seed", seed, "override the base seed");
  run->add_flag("--serial", serial, "run on one thread");

  fs::path report_in;
  std::string baseline = "q_learning";
  auto* report = app.add_subcommand("report", "markdown regret table of one or more result directories");
  report->add_option("--in", report_in, "results directory")->required();
  report->add_option("--baseline", baseline, "method used for relative gain");

  fs::path plot_in, plot_out;
  std::string mode = "loca";
  auto* plot = app.add_subcommand("plot", "SVG chart of mean top-terminal fraction");
  plot->add_option("--in", plot_in, "results directory")->required();
  plot->add_option("--out", plot_out, "output SVG file")->required();
  plot->add_option("--mode", mode, "curve to plot")->check(CLI::IsMember({"loca", "default"}));

  auto* list = app.add_subcommand("list", "registered agents and environments");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kValidationExit;
  }

  try {
    if (*run) cmd_run(config_path, out_dir, runs, seed, serial);
    if (*report) cmd_report(report_in, baseline);
    if (*plot) cmd_plot(plot_in, plot_out, mode);
    if (*list) cmd_list();
  } catch (const loca::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntimeExit;
  }
  return 0;
}
