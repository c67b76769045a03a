#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "loca/config.hpp"
#include "loca/execution.hpp"
#include "loca/protocol.hpp"

namespace loca {

struct RunRecord {
  std::size_t run_index = 0;
  std::uint64_t seed = 0;
  EvalCurve loca;
  EvalCurve default_curve;
  double loca_regret = 0.0;
  double default_regret = 0.0;
  friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

/// The (LoCA, default) pair of one run; seed = base_seed + run_index.
RunRecord run_one(const ExperimentConfig& cfg, std::size_t run_index);

/// All runs of a config, ordered by run index. Parallel execution fans runs
/// out over OpenMP threads; the serial path is the reference. If any run
/// fails the suite throws RunFailed naming the failed and completed runs.
std::vector<RunRecord> run_suite(const ExperimentConfig& cfg, Execution exec = Execution::Parallel);

struct AggregateStats {
  double mean = 0.0;
  /// Sample standard deviation / sqrt(n); 0 for a single value.
  double standard_error = 0.0;
};

AggregateStats aggregate(std::span<const double> values);

struct MethodSummary {
  std::string method;
  AggregateStats default_regret;
  AggregateStats loca_regret;
  /// Mean default regret over mean LoCA regret; +inf when the latter is 0.
  double gain = 0.0;
  std::optional<double> relative_gain;
};

MethodSummary summarize(const std::string& method, const std::vector<RunRecord>& records);

/// Fills relative_gain of every summary against the named baseline.
/// Throws MissingBaseline or UndefinedBaseline.
void apply_baseline(std::vector<MethodSummary>& summaries, std::string_view baseline);

/// Mean fraction at every evaluation point across runs (curves must share steps).
EvalCurve mean_curve(std::span<const EvalCurve> curves);

}  // namespace loca
