#include "loca/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <fmt/format.h>
#include <map>
#include <set>
#include <sstream>

#include "loca/environments.hpp"
#include "loca/error.hpp"

namespace loca {
namespace {

namespace pt = boost::property_tree;

[[noreturn]] void invalid(const std::string& key, const std::string& what) {
  throw Error(Errc::ValidationError, key + ": " + what);
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : ", ") + s;
  return out;
}

double to_double(const std::string& key, const std::string& text) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) invalid(key, "expected a number, got '" + text + "'");
  return v;
}

std::uint64_t to_unsigned(const std::string& key, const std::string& text) {
  std::uint64_t v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) invalid(key, "expected a non-negative integer, got '" + text + "'");
  return v;
}

bool to_bool(const std::string& key, const std::string& text) {
  if (text == "true") return true;
  if (text == "false") return false;
  invalid(key, "expected true or false, got '" + text + "'");
}

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"experiment", {"label", "runs", "seed", "baseline"}},
      {"environment", {"name"}},
      {"agent", {"name", "alpha", "epsilon", "gamma", "lambda", "n", "theta", "max_sweeps", "initial_value",
        "optimistic_model", "value_step"}},
      {"multipliers", {"s_mult", "alpha_mult"}},
      {"schedule",
       {"phase1_steps", "phase2_steps", "phase3_steps", "episode_cap", "default_mode", "epsilon_decay",
        "epsilon_phase1_start", "epsilon_phase1_end"}},
      {"evaluation", {"delta_train", "episodes", "deadline"}},
  };
  return keys;
}

bool label_is_clean(const std::string& label) {
  return !label.empty() && label.find_first_of(",\"\n\r") == std::string::npos;
}

void validate_config(const ExperimentConfig& cfg) {
  if (!label_is_clean(cfg.label)) invalid("experiment.label", "must be non-empty without commas, quotes or newlines");
  if (cfg.runs < 1) invalid("experiment.runs", "must be >= 1");
  if (cfg.s_mult < 1) invalid("multipliers.s_mult", "must be >= 1");
  if (!(cfg.alpha_mult > 0.0)) invalid("multipliers.alpha_mult", "must be > 0");
  const bool tabular_env = cfg.environment == "gridworld";
  const bool tabular_agent = cfg.agent != "sarsa_lambda_tc";
  if (tabular_env != tabular_agent)
    invalid("agent.name", "agent '" + cfg.agent + "' cannot run on environment '" + cfg.environment + "'");
  if (cfg.s_mult > 1 && !tabular_env) invalid("multipliers.s_mult", "requires a tabular environment");

  const AgentConfig& a = cfg.agent_config;
  if (!(a.alpha > 0.0 && a.alpha <= 1.0)) invalid("agent.alpha", "must be in (0, 1]");
  if (!(a.alpha * cfg.alpha_mult <= 1.0)) invalid("multipliers.alpha_mult", "effective alpha exceeds 1");
  if (!(a.epsilon >= 0.0 && a.epsilon <= 1.0)) invalid("agent.epsilon", "must be in [0, 1]");
  if (!(a.gamma > 0.0 && a.gamma < 1.0)) invalid("agent.gamma", "must be in (0, 1)");
  if (!(a.lambda >= 0.0 && a.lambda <= 1.0)) invalid("agent.lambda", "must be in [0, 1]");
  if (a.n < 1) invalid("agent.n", "must be >= 1");
  if (!(a.theta > 0.0)) invalid("agent.theta", "must be > 0");
  if (a.max_sweeps < 1) invalid("agent.max_sweeps", "must be >= 1");
  if (!(a.value_step >= 0.0 && a.value_step <= 1.0)) invalid("agent.value_step", "must be in [0, 1]");

  if (cfg.phase1_steps == 0) invalid("schedule.phase1_steps", "must be > 0");
  if (cfg.phase2_steps == 0) invalid("schedule.phase2_steps", "must be > 0");
  if (cfg.phase3_steps == 0) invalid("schedule.phase3_steps", "must be > 0");
  if (cfg.episode_cap == 0) invalid("schedule.episode_cap", "must be > 0");
  const auto& e = cfg.epsilon;
  if (!(e.phase1_start > 0.0 && e.phase1_start <= 1.0)) invalid("schedule.epsilon_phase1_start", "must be in (0, 1]");
  if (!(e.phase1_end > 0.0 && e.phase1_end <= 1.0)) invalid("schedule.epsilon_phase1_end", "must be in (0, 1]");
  if (cfg.eval.delta_train == 0) invalid("evaluation.delta_train", "must be > 0");
  if (cfg.eval.episodes == 0) invalid("evaluation.episodes", "must be > 0");
  if (cfg.eval.deadline == 0) invalid("evaluation.deadline", "must be > 0");
}

std::string num(double v) { return fmt::format("{}", v); }

}  // namespace

ExperimentConfig default_config(std::string_view environment, std::string_view agent) {
  if (!is_registered_environment(environment))
    invalid("environment.name",
            "unknown environment '" + std::string(environment) + "' (registered: " + join(registered_environments()) + ")");
  if (!is_registered_agent(agent))
    invalid("agent.name", "unknown agent '" + std::string(agent) + "' (registered: " + join(registered_agents()) + ")");

  ExperimentConfig cfg;
  cfg.environment = environment;
  cfg.agent = agent;
  cfg.agent_config = default_agent_config(agent);
  if (environment == "gridworld") {
    cfg.agent_config.gamma = 0.97;
    cfg.phase1_steps = 1000000;
    cfg.phase2_steps = 5000;
    cfg.phase3_steps = 400000;
    cfg.episode_cap = 100;
    cfg.default_mode = DefaultMode::Fresh;
    cfg.epsilon = EpsSchedule::constant(cfg.agent_config.epsilon);
    cfg.eval = {100, 10, 40};
  } else {
    cfg.agent_config.gamma = 0.99;
    cfg.phase1_steps = 200000;
    cfg.phase2_steps = 5000;
    cfg.phase3_steps = 40000;
    cfg.episode_cap = 500;
    cfg.default_mode = DefaultMode::ShuffledPretrain;
    cfg.epsilon = EpsSchedule{1.0, 0.01, cfg.phase1_steps, cfg.agent_config.epsilon, true};
    cfg.eval = {500, 10, 150};
  }
  cfg.label = default_label(cfg);
  return cfg;
}

std::string default_label(const ExperimentConfig& cfg) {
  std::string label = cfg.agent;
  if (cfg.agent == "nstep_model") label += fmt::format(" n={}", cfg.agent_config.n);
  if (cfg.s_mult != 1) label += fmt::format(" s_mult={}", cfg.s_mult);
  if (cfg.alpha_mult != 1.0) label += fmt::format(" alpha_mult={}", cfg.alpha_mult);
  return label;
}

ExperimentConfig parse_config(std::string_view text) {
  pt::ptree tree;
  try {
    std::istringstream in{std::string(text)};
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw Error(Errc::ParseError, fmt::format("line {}: {}", e.line(), e.message()));
  }

  for (const auto& [section, body] : tree) {
    const auto it = schema().find(section);
    if (it == schema().end()) {
      if (body.empty()) invalid(section, "unknown key outside any section");
      invalid(section, "unknown section");
    }
    for (const auto& [key, value] : body)
      if (!it->second.contains(key)) invalid(section + "." + key, "unknown key");
  }

  auto get = [&](const std::string& path) -> std::optional<std::string> {
    if (auto v = tree.get_optional<std::string>(pt::ptree::path_type(path, '.'))) return *v;
    return std::nullopt;
  };

  const auto agent = get("agent.name");
  if (!agent) invalid("agent.name", "required");
  ExperimentConfig cfg = default_config(get("environment.name").value_or("gridworld"), *agent);

  auto set_double = [&](const std::string& key, double& field) {
    if (auto v = get(key)) field = to_double(key, *v);
  };
  auto set_size = [&](const std::string& key, std::size_t& field) {
    if (auto v = get(key)) field = static_cast<std::size_t>(to_unsigned(key, *v));
  };
  auto set_int = [&](const std::string& key, int& field) {
    if (auto v = get(key)) {
      const auto u = to_unsigned(key, *v);
      if (u > 1000000000ULL) invalid(key, "too large");
      field = static_cast<int>(u);
    }
  };

  if (auto v = get("experiment.runs")) cfg.runs = static_cast<std::size_t>(to_unsigned("experiment.runs", *v));
  if (auto v = get("experiment.seed")) cfg.base_seed = to_unsigned("experiment.seed", *v);
  if (auto v = get("experiment.baseline")) cfg.baseline = *v;

  AgentConfig& a = cfg.agent_config;
  set_double("agent.alpha", a.alpha);
  set_double("agent.epsilon", a.epsilon);
  set_double("agent.gamma", a.gamma);
  set_double("agent.lambda", a.lambda);
  set_int("agent.n", a.n);
  set_double("agent.theta", a.theta);
  set_int("agent.max_sweeps", a.max_sweeps);
  set_double("agent.initial_value", a.initial_value);
  set_double("agent.value_step", a.value_step);
  if (auto v = get("agent.optimistic_model")) a.optimistic_model = to_bool("agent.optimistic_model", *v);

  set_size("multipliers.s_mult", cfg.s_mult);
  set_double("multipliers.alpha_mult", cfg.alpha_mult);

  set_size("schedule.phase1_steps", cfg.phase1_steps);
  set_size("schedule.phase2_steps", cfg.phase2_steps);
  set_size("schedule.phase3_steps", cfg.phase3_steps);
  set_size("schedule.episode_cap", cfg.episode_cap);
  if (auto v = get("schedule.default_mode")) {
    if (*v == "fresh") {
      cfg.default_mode = DefaultMode::Fresh;
    } else if (*v == "shuffled_pretrain") {
      cfg.default_mode = DefaultMode::ShuffledPretrain;
    } else {
      invalid("schedule.default_mode", "expected fresh or shuffled_pretrain, got '" + *v + "'");
    }
  }
  if (auto v = get("schedule.epsilon_decay")) cfg.epsilon.decay_phase1 = to_bool("schedule.epsilon_decay", *v);
  set_double("schedule.epsilon_phase1_start", cfg.epsilon.phase1_start);
  set_double("schedule.epsilon_phase1_end", cfg.epsilon.phase1_end);
  cfg.epsilon.later = a.epsilon;
  cfg.epsilon.phase1_length = cfg.phase1_steps;
  if (!cfg.epsilon.decay_phase1) cfg.epsilon.phase1_start = cfg.epsilon.phase1_end = a.epsilon;

  set_size("evaluation.delta_train", cfg.eval.delta_train);
  set_size("evaluation.episodes", cfg.eval.episodes);
  set_size("evaluation.deadline", cfg.eval.deadline);

  cfg.label = get("experiment.label").value_or(default_label(cfg));
  validate_config(cfg);
  return cfg;
}

std::string to_config_text(const ExperimentConfig& cfg) {
  const AgentConfig& a = cfg.agent_config;
  std::string out;
  out += "[experiment]\n";
  out += "label = " + cfg.label + "\n";
  out += fmt::format("runs = {}\nseed = {}\n", cfg.runs, cfg.base_seed);
  out += "baseline = " + cfg.baseline + "\n\n";
  out += "[environment]\nname = " + cfg.environment + "\n\n";
  out += "[agent]\nname = " + cfg.agent + "\n";
  out += "alpha = " + num(a.alpha) + "\nepsilon = " + num(a.epsilon) + "\ngamma = " + num(a.gamma) + "\n";
  out += "lambda = " + num(a.lambda) + fmt::format("\nn = {}\n", a.n);
  out += "theta = " + num(a.theta) + fmt::format("\nmax_sweeps = {}\n", a.max_sweeps);
  out += "initial_value = " + num(a.initial_value) + "\n";
  out += "value_step = " + num(a.value_step) + "\n";
  out += std::string("optimistic_model = ") + (a.optimistic_model ? "true" : "false") + "\n\n";
  out += fmt::format("[multipliers]\ns_mult = {}\n", cfg.s_mult);
  out += "alpha_mult = " + num(cfg.alpha_mult) + "\n\n";
  out += fmt::format("[schedule]\nphase1_steps = {}\nphase2_steps = {}\nphase3_steps = {}\nepisode_cap = {}\n",
                     cfg.phase1_steps, cfg.phase2_steps, cfg.phase3_steps, cfg.episode_cap);
  out += std::string("default_mode = ") +
         (cfg.default_mode == DefaultMode::Fresh ? "fresh" : "shuffled_pretrain") + "\n";
  out += std::string("epsilon_decay = ") + (cfg.epsilon.decay_phase1 ? "true" : "false") + "\n";
  out += "epsilon_phase1_start = " + num(cfg.epsilon.phase1_start) + "\n";
  out += "epsilon_phase1_end = " + num(cfg.epsilon.phase1_end) + "\n\n";
  out += fmt::format("[evaluation]\ndelta_train = {}\nepisodes = {}\ndeadline = {}\n", cfg.eval.delta_train,
                     cfg.eval.episodes, cfg.eval.deadline);
  return out;
}

AgentConfig effective_agent_config(const ExperimentConfig& cfg) {
  AgentConfig a = cfg.agent_config;
  a.alpha *= cfg.alpha_mult;
  a.epsilon = cfg.epsilon.later;
  return a;
}

LocaSchedule loca_schedule(const ExperimentConfig& cfg) {
  return make_loca_schedule(cfg.phase1_steps, cfg.phase2_steps, cfg.phase3_steps, cfg.episode_cap);
}

PhaseSpec phase3_spec(const ExperimentConfig& cfg) { return loca_schedule(cfg)[2]; }

}  // namespace loca
