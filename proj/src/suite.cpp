#include "loca/suite.hpp"

#include <cmath>
#include <exception>
#include <fmt/format.h>
#include <limits>
#include <numeric>

#include "loca/environments.hpp"
#include "loca/error.hpp"

namespace loca {

RunRecord run_one(const ExperimentConfig& cfg, std::size_t run_index) {
  RunRecord rec;
  rec.run_index = run_index;
  rec.seed = cfg.base_seed + run_index;
  const Rng root(rec.seed);

  const AgentConfig agent_cfg = effective_agent_config(cfg);
  const AgentFactory make_agent_fn = [&](const EnvDescriptor& env) { return make_agent(cfg.agent, env, agent_cfg); };
  const EnvFactory make_env_fn = [&](TaskLabel task, Rng noise) {
    return make_environment(cfg.environment, task, cfg.s_mult, std::move(noise));
  };
  EpsSchedule eps = cfg.epsilon;
  eps.phase1_length = cfg.phase1_steps;

  rec.loca = run_loca(make_agent_fn, make_env_fn, loca_schedule(cfg), eps, cfg.eval, root.substream("loca"));
  rec.default_curve = run_default(make_agent_fn, make_env_fn, cfg.default_mode, cfg.phase1_steps, phase3_spec(cfg),
                                  eps, cfg.eval, root.substream("default"));
  rec.loca_regret = regret(rec.loca, cfg.eval.delta_train);
  rec.default_regret = regret(rec.default_curve, cfg.eval.delta_train);
  return rec;
}

std::vector<RunRecord> run_suite(const ExperimentConfig& cfg, Execution exec) {
  const auto n = static_cast<std::ptrdiff_t>(cfg.runs);
  std::vector<RunRecord> records(cfg.runs);
  std::vector<std::string> errors(cfg.runs);
  std::vector<char> ok(cfg.runs, 0);

  auto body = [&](std::ptrdiff_t i) {
    try {
      records[i] = run_one(cfg, static_cast<std::size_t>(i));
      ok[i] = 1;
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  };

  if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t i = 0; i < n; ++i) body(i);
  } else {
    for (std::ptrdiff_t i = 0; i < n; ++i) body(i);
  }

  std::string failed, completed;
  for (std::size_t i = 0; i < cfg.runs; ++i) {
    std::string& list = ok[i] ? completed : failed;
    list += (list.empty() ? "" : ", ") + std::to_string(i);
  }
  if (!failed.empty()) {
    std::string first;
    for (std::size_t i = 0; i < cfg.runs && first.empty(); ++i)
      if (!ok[i]) first = fmt::format("run {}: {}", i, errors[i]);
    throw Error(Errc::RunFailed, fmt::format("failed runs [{}]; completed runs [{}]; {}", failed, completed, first));
  }
  return records;
}

AggregateStats aggregate(std::span<const double> values) {
  if (values.empty()) throw Error(Errc::EmptyInput, "aggregate of no values");
  const double n = static_cast<double>(values.size());
  AggregateStats out;
  out.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - out.mean) * (v - out.mean);
    out.standard_error = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
  }
  return out;
}

MethodSummary summarize(const std::string& method, const std::vector<RunRecord>& records) {
  std::vector<double> def, loc;
  for (const auto& r : records) {
    def.push_back(r.default_regret);
    loc.push_back(r.loca_regret);
  }
  MethodSummary s;
  s.method = method;
  s.default_regret = aggregate(def);
  s.loca_regret = aggregate(loc);
  s.gain = s.loca_regret.mean == 0.0 ? std::numeric_limits<double>::infinity()
                                     : s.default_regret.mean / s.loca_regret.mean;
  return s;
}

void apply_baseline(std::vector<MethodSummary>& summaries, std::string_view baseline) {
  const MethodSummary* base = nullptr;
  for (const auto& s : summaries)
    if (s.method == baseline) base = &s;
  if (base == nullptr) throw Error(Errc::MissingBaseline, fmt::format("baseline '{}' not among results", baseline));
  if (base->gain == 0.0 || std::isinf(base->gain))
    throw Error(Errc::UndefinedBaseline, fmt::format("baseline '{}' has gain {}", baseline, base->gain));
  const double g = base->gain;
  for (auto& s : summaries) s.relative_gain = s.gain / g;
}

EvalCurve mean_curve(std::span<const EvalCurve> curves) {
  if (curves.empty()) throw Error(Errc::EmptyInput, "mean of no curves");
  EvalCurve out = curves.front();
  for (std::size_t c = 1; c < curves.size(); ++c) {
    const auto& pts = curves[c].points;
    if (pts.size() != out.points.size())
      throw Error(Errc::InvalidArgument, "curves have different evaluation points");
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (pts[i].train_step != out.points[i].train_step)
        throw Error(Errc::InvalidArgument, "curves have different evaluation points");
      out.points[i].fraction += pts[i].fraction;
    }
  }
  for (auto& p : out.points) p.fraction /= static_cast<double>(curves.size());
  return out;
}

}  // namespace loca
