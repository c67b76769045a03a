#include "loca/results.hpp"

#include <charconv>
#include <cmath>
#include <fmt/format.h>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "loca/error.hpp"

namespace loca {
namespace {

namespace fs = std::filesystem;

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::IoError, "cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw Error(Errc::IoError, "write failed for " + path.string());
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoError, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.emplace_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_cell(const std::string& cell) {
  if (cell == "inf") return std::numeric_limits<double>::infinity();
  if (cell == "nan") return std::numeric_limits<double>::quiet_NaN();
  double v = 0.0;
  const auto* end = cell.data() + cell.size();
  const auto [ptr, ec] = std::from_chars(cell.data(), end, v);
  if (ec != std::errc() || ptr != end) throw Error(Errc::ParseError, "bad number '" + cell + "' in summary.csv");
  return v;
}

constexpr std::string_view kSummaryHeader = "method,default_regret,default_stderr,loca_regret,loca_stderr,gain,relative_gain";

}  // namespace

std::string format_number(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  return fmt::format("{:.6g}", value);
}

std::string format_fixed(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  return fmt::format("{:.6f}", value);
}

std::string curves_jsonl(const std::vector<RunRecord>& records) {
  std::string out;
  auto emit = [&](std::size_t run, std::string_view mode, const EvalCurve& curve) {
    for (const auto& p : curve.points)
      out += fmt::format("{{\"run\":{},\"mode\":\"{}\",\"step\":{},\"fraction\":{}}}\n", run, mode, p.train_step,
                         format_number(p.fraction));
  };
  for (const auto& r : records) {
    emit(r.run_index, "loca", r.loca);
    emit(r.run_index, "default", r.default_curve);
  }
  return out;
}

std::string summary_csv(const std::vector<MethodSummary>& summaries) {
  std::string out(kSummaryHeader);
  out += '\n';
  for (const auto& s : summaries) {
    out += fmt::format("{},{},{},{},{},{},{}\n", s.method, format_fixed(s.default_regret.mean),
                       format_fixed(s.default_regret.standard_error), format_fixed(s.loca_regret.mean),
                       format_fixed(s.loca_regret.standard_error), format_fixed(s.gain),
                       format_fixed(s.relative_gain.value_or(std::numeric_limits<double>::quiet_NaN())));
  }
  return out;
}

void write_results(const std::vector<RunRecord>& records, const MethodSummary& summary, const ExperimentConfig& cfg,
                   const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(Errc::IoError, "cannot create " + dir.string() + ": " + ec.message());
  write_file(dir / "curves.jsonl", curves_jsonl(records));
  write_file(dir / "summary.csv", summary_csv({summary}));
  write_file(dir / "config.snapshot", to_config_text(cfg));
}

CurveMap parse_curves_jsonl(std::string_view text, std::size_t horizon) {
  CurveMap out;
  std::size_t line_no = 0;
  for (const auto& line : split(text, '\n')) {
    ++line_no;
    if (line.empty()) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      const auto mode = j.at("mode").get<std::string>();
      if (mode != "loca" && mode != "default") throw Error(Errc::ParseError, "unknown mode '" + mode + "'");
      auto& curve = out[{j.at("run").get<std::size_t>(), mode}];
      curve.horizon = horizon;
      curve.points.push_back({j.at("step").get<std::size_t>(), j.at("fraction").get<double>()});
    } catch (const nlohmann::json::exception& e) {
      throw Error(Errc::ParseError, fmt::format("curves.jsonl line {}: {}", line_no, e.what()));
    }
  }
  return out;
}

std::vector<MethodSummary> parse_summary_csv(std::string_view text) {
  const auto lines = split(text, '\n');
  if (lines.empty() || lines.front() != kSummaryHeader) throw Error(Errc::ParseError, "summary.csv: bad header");
  std::vector<MethodSummary> out;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto cells = split(lines[i], ',');
    if (cells.size() != 7) throw Error(Errc::ParseError, fmt::format("summary.csv line {}: expected 7 cells", i + 1));
    MethodSummary s;
    s.method = cells[0];
    s.default_regret = {parse_cell(cells[1]), parse_cell(cells[2])};
    s.loca_regret = {parse_cell(cells[3]), parse_cell(cells[4])};
    s.gain = parse_cell(cells[5]);
    if (const double rel = parse_cell(cells[6]); !std::isnan(rel)) s.relative_gain = rel;
    out.push_back(std::move(s));
  }
  return out;
}

ResultSet read_results(const fs::path& dir) {
  ResultSet rs;
  rs.config = parse_config(read_file(dir / "config.snapshot"));
  rs.curves = parse_curves_jsonl(read_file(dir / "curves.jsonl"), rs.config.phase3_steps);
  rs.summaries = parse_summary_csv(read_file(dir / "summary.csv"));
  return rs;
}

std::vector<fs::path> find_result_dirs(const fs::path& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw Error(Errc::IoError, dir.string() + " is not a directory");
  std::vector<fs::path> out;
  if (fs::exists(dir / "summary.csv")) out.push_back(dir);
  std::vector<fs::path> subs;
  for (const auto& entry : fs::directory_iterator(dir, ec))
    if (entry.is_directory() && fs::exists(entry.path() / "summary.csv")) subs.push_back(entry.path());
  std::sort(subs.begin(), subs.end());
  out.insert(out.end(), subs.begin(), subs.end());
  return out;
}

}  // namespace loca
