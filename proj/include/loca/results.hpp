#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "loca/config.hpp"
#include "loca/suite.hpp"

namespace loca {

/// %.6g rendering used for every number in curves.jsonl.
std::string format_number(double value);
/// Fixed six decimals, "inf" for infinity, "nan" for a missing value.
std::string format_fixed(double value);

/// Writes curves.jsonl, summary.csv and config.snapshot into `dir`
/// (created if needed). Throws IoError.
void write_results(const std::vector<RunRecord>& records, const MethodSummary& summary, const ExperimentConfig& cfg,
                   const std::filesystem::path& dir);

std::string curves_jsonl(const std::vector<RunRecord>& records);
std::string summary_csv(const std::vector<MethodSummary>& summaries);

/// Curves keyed by (run, mode) with mode "loca" or "default". Every curve
/// gets `horizon` as its horizon.
using CurveMap = std::map<std::pair<std::size_t, std::string>, EvalCurve>;
CurveMap parse_curves_jsonl(std::string_view text, std::size_t horizon);

std::vector<MethodSummary> parse_summary_csv(std::string_view text);

/// One results directory read back from disk.
struct ResultSet {
  ExperimentConfig config;
  CurveMap curves;
  std::vector<MethodSummary> summaries;
};

ResultSet read_results(const std::filesystem::path& dir);

/// `dir` itself (if it holds results) followed by every immediate
/// subdirectory holding results, in name order.
std::vector<std::filesystem::path> find_result_dirs(const std::filesystem::path& dir);

}  // namespace loca
