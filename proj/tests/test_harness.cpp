#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "loca/config.hpp"
#include "loca/error.hpp"
#include "loca/report.hpp"
#include "loca/results.hpp"
#include "loca/suite.hpp"

namespace loca {
namespace {

namespace fs = std::filesystem;

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return Errc::InvalidArgument;
}

std::string message_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("loca_test_" + name);
  fs::remove_all(dir);
  return dir;
}

// A few thousand steps: enough to exercise every stage quickly.
ExperimentConfig small_config(const std::string& agent = "sarsa_lambda") {
  return parse_config(R"(
[experiment]
runs = 3
seed = 11

[agent]
name = )" + agent + R"(

[schedule]
phase1_steps = 3000
phase2_steps = 300
phase3_steps = 1500
)");
}

TEST(ParseConfig, MinimalConfigGetsDefaults) {
  const auto cfg = parse_config("[agent]\nname = mb_su\n");
  EXPECT_EQ(cfg.environment, "gridworld");
  EXPECT_EQ(cfg.agent, "mb_su");
  EXPECT_EQ(cfg.label, "mb_su");
  EXPECT_EQ(cfg.runs, 10u);
  EXPECT_EQ(cfg.s_mult, 1u);
  EXPECT_EQ(cfg.alpha_mult, 1.0);
  EXPECT_EQ(cfg.agent_config.alpha, 0.2);
  EXPECT_EQ(cfg.agent_config.epsilon, 0.1);
  EXPECT_EQ(cfg.agent_config.gamma, 0.97);
  EXPECT_EQ(cfg.phase2_steps, 5000u);
  EXPECT_EQ(cfg.episode_cap, 100u);
  EXPECT_EQ(cfg.eval.delta_train, 100u);
  EXPECT_EQ(cfg.eval.episodes, 10u);
  EXPECT_EQ(cfg.eval.deadline, 40u);
  EXPECT_EQ(cfg.default_mode, DefaultMode::Fresh);
  EXPECT_EQ(cfg.baseline, "q_learning");
}

TEST(ParseConfig, MountainCarDefaults) {
  const auto cfg = parse_config("[environment]\nname = mountaincar\n[agent]\nname = sarsa_lambda_tc\n");
  EXPECT_EQ(cfg.phase1_steps, 200000u);
  EXPECT_EQ(cfg.phase2_steps, 5000u);
  EXPECT_EQ(cfg.phase3_steps, 40000u);
  EXPECT_EQ(cfg.episode_cap, 500u);
  EXPECT_EQ(cfg.eval.deadline, 150u);
  EXPECT_EQ(cfg.default_mode, DefaultMode::ShuffledPretrain);
  EXPECT_EQ(cfg.agent_config.gamma, 0.99);
  EXPECT_TRUE(cfg.epsilon.decay_phase1);
  EXPECT_EQ(cfg.epsilon.phase1_start, 1.0);
  EXPECT_EQ(cfg.epsilon.phase1_end, 0.01);
  EXPECT_EQ(cfg.epsilon.later, 0.1);
}

TEST(ParseConfig, AlphaMultiplierScalesTheStep) {
  const auto cfg = parse_config("[agent]\nname = mb_vi\n[multipliers]\nalpha_mult = 0.1\n");
  EXPECT_NEAR(effective_agent_config(cfg).alpha, 0.02, 1e-15);
  EXPECT_EQ(cfg.agent_config.alpha, 0.2);
  EXPECT_EQ(cfg.label, "mb_vi alpha_mult=0.1");
}

TEST(ParseConfig, UnknownAgentListsRegisteredOnes) {
  const auto text = "[agent]\nname = muzero\n";
  EXPECT_EQ(code_of([&] { parse_config(text); }), Errc::ValidationError);
  const std::string msg = message_of([&] { parse_config(text); });
  for (const auto* name : {"sarsa_lambda", "q_learning", "mb_vi", "mb_su", "nstep_model"})
    EXPECT_NE(msg.find(name), std::string::npos) << msg;
}

TEST(ParseConfig, RejectsUnknownKeysAndSections) {
  EXPECT_EQ(code_of([] { parse_config("[agent]\nname = mb_vi\nalpah = 0.1\n"); }), Errc::ValidationError);
  EXPECT_NE(message_of([] { parse_config("[agent]\nname = mb_vi\nalpah = 0.1\n"); }).find("agent.alpah"),
            std::string::npos);
  EXPECT_EQ(code_of([] { parse_config("[agent]\nname = mb_vi\n[extra]\nx = 1\n"); }), Errc::ValidationError);
}

TEST(ParseConfig, RejectsOutOfRangeValues) {
  EXPECT_EQ(code_of([] { parse_config("[agent]\nname = mb_vi\n[experiment]\nruns = 0\n"); }), Errc::ValidationError);
  EXPECT_EQ(code_of([] { parse_config("[agent]\nname = mb_vi\n[multipliers]\ns_mult = 0\n"); }),
            Errc::ValidationError);
  EXPECT_EQ(code_of([] { parse_config("[agent]\nname = mb_vi\n[multipliers]\nalpha_mult = 0\n"); }),
            Errc::ValidationError);
  EXPECT_EQ(code_of([] { parse_config("[agent]\nname = mb_vi\nalpha = 1.5\n"); }), Errc::ValidationError);
  EXPECT_EQ(code_of([] { parse_config("[agent]\nname = mb_vi\nalpha = fast\n"); }), Errc::ValidationError);
  EXPECT_EQ(code_of([] { parse_config("[agent]\nname = sarsa_lambda_tc\n"); }), Errc::ValidationError);
  EXPECT_EQ(code_of([] { parse_config("[experiment]\nruns = 2\n"); }), Errc::ValidationError);
}

TEST(ParseConfig, MalformedTextIsAParseError) {
  EXPECT_EQ(code_of([] { parse_config("[agent\nname = mb_vi\n"); }), Errc::ParseError);
}

TEST(ParseConfig, CanonicalTextRoundTrips) {
  auto cfg = parse_config(
      "[agent]\nname = nstep_model\nn = 2\noptimistic_model = true\nvalue_step = 1\n"
      "[multipliers]\ns_mult = 3\n[evaluation]\ndelta_train = 250\n");
  const std::string text = to_config_text(cfg);
  const auto again = parse_config(text);
  EXPECT_EQ(to_config_text(again), text);
  EXPECT_EQ(again.agent_config.n, 2);
  EXPECT_TRUE(again.agent_config.optimistic_model);
  EXPECT_EQ(again.s_mult, 3u);
  EXPECT_EQ(again.eval.delta_train, 250u);
  EXPECT_EQ(again.label, "nstep_model n=2 s_mult=3");
}

TEST(Aggregate, HandExamples) {
  const std::vector<double> same{2, 2, 2}, two{1, 3}, skew{0, 0, 0, 4}, one{7};
  EXPECT_EQ(aggregate(same).mean, 2.0);
  EXPECT_EQ(aggregate(same).standard_error, 0.0);
  EXPECT_EQ(aggregate(two).mean, 2.0);
  EXPECT_DOUBLE_EQ(aggregate(two).standard_error, 1.0);
  EXPECT_EQ(aggregate(skew).mean, 1.0);
  EXPECT_DOUBLE_EQ(aggregate(skew).standard_error, 1.0);
  EXPECT_EQ(aggregate(one).standard_error, 0.0);
  EXPECT_EQ(code_of([] { aggregate(std::vector<double>{}); }), Errc::EmptyInput);
}

TEST(Aggregate, MatchesDirectFormula) {
  Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> v(2 + rng.below(20));
    for (auto& x : v) x = rng.uniform(0, 50000);
    long double sum = 0, sq = 0;
    for (double x : v) sum += x;
    const long double mean = sum / v.size();
    for (double x : v) sq += (x - mean) * (x - mean);
    const long double se = std::sqrt(sq / (v.size() - 1)) / std::sqrt(static_cast<long double>(v.size()));
    const auto s = aggregate(v);
    EXPECT_NEAR(s.mean, static_cast<double>(mean), 1e-12 * 50000);
    EXPECT_NEAR(s.standard_error, static_cast<double>(se), 1e-12 * 50000);
  }
}

TEST(Summaries, GainAndBaseline) {
  RunRecord a, b;
  a.default_regret = 30000;
  a.loca_regret = 15000;
  b.default_regret = 30000;
  b.loca_regret = 15000;
  auto s = summarize("sarsa_lambda", {a, b});
  EXPECT_EQ(s.gain, 2.0);
  RunRecord z;
  z.default_regret = 7000;
  auto vi = summarize("mb_vi", {z});
  EXPECT_TRUE(std::isinf(vi.gain));

  std::vector<MethodSummary> all{s, vi};
  EXPECT_EQ(code_of([&] { apply_baseline(all, "q_learning"); }), Errc::MissingBaseline);
  EXPECT_EQ(code_of([&] { apply_baseline(all, "mb_vi"); }), Errc::UndefinedBaseline);
  apply_baseline(all, "sarsa_lambda");
  EXPECT_EQ(all[0].relative_gain, 1.0);
  EXPECT_TRUE(std::isinf(*all[1].relative_gain));
}

TEST(Results, NumberFormats) {
  EXPECT_EQ(format_fixed(0.0), "0.000000");
  EXPECT_EQ(format_fixed(std::numeric_limits<double>::infinity()), "inf");
  EXPECT_EQ(format_fixed(std::numeric_limits<double>::quiet_NaN()), "nan");
  EXPECT_EQ(format_fixed(1.0), "1.000000");
  EXPECT_EQ(format_number(0.3), "0.3");
  EXPECT_EQ(format_number(123456789.0), "1.23457e+08");
}

TEST(Results, SummaryCsvRows) {
  MethodSummary vi;
  vi.method = "mb_vi";
  vi.default_regret = {7687.0, 61.12};
  vi.loca_regret = {0.0, 0.0};
  vi.gain = std::numeric_limits<double>::infinity();
  MethodSummary q;
  q.method = "q_learning";
  q.default_regret = {68283.0, 91.66};
  q.loca_regret = {39705.0, 69.08};
  q.gain = 68283.0 / 39705.0;
  q.relative_gain = 1.0;
  const std::string csv = summary_csv({vi, q});
  std::istringstream lines(csv);
  std::string header, row_vi, row_q;
  std::getline(lines, header);
  std::getline(lines, row_vi);
  std::getline(lines, row_q);
  EXPECT_EQ(header, "method,default_regret,default_stderr,loca_regret,loca_stderr,gain,relative_gain");
  EXPECT_EQ(row_vi, "mb_vi,7687.000000,61.120000,0.000000,0.000000,inf,nan");
  EXPECT_EQ(row_q.substr(row_q.rfind(',') + 1), "1.000000");
  EXPECT_EQ(csv.back(), '\n');

  const auto parsed = parse_summary_csv(csv);
  ASSERT_EQ(parsed.size(), 2u);
  EXPECT_EQ(parsed[0].method, "mb_vi");
  EXPECT_TRUE(std::isinf(parsed[0].gain));
  EXPECT_FALSE(parsed[0].relative_gain);
  EXPECT_EQ(parsed[1].relative_gain, 1.0);
  EXPECT_EQ(parsed[1].loca_regret.mean, 39705.0);
}

TEST(Results, CurvesRoundTripExactly) {
  const auto cfg = small_config();
  const auto records = run_suite(cfg, Execution::Serial);
  const std::string text = curves_jsonl(records);
  const auto parsed = parse_curves_jsonl(text, cfg.phase3_steps);
  ASSERT_EQ(parsed.size(), 2 * records.size());
  for (const auto& r : records) {
    EXPECT_EQ(parsed.at({r.run_index, "loca"}), r.loca);
    EXPECT_EQ(parsed.at({r.run_index, "default"}), r.default_curve);
  }
  EXPECT_EQ(text.substr(0, text.find('\n')), R"({"run":0,"mode":"loca","step":0,"fraction":)" +
                                                 format_number(records[0].loca.points[0].fraction) + "}");
}

TEST(Results, WriteAndReadBack) {
  const auto cfg = small_config("mb_su");
  const auto records = run_suite(cfg);
  const auto summary = summarize(cfg.label, records);
  const fs::path dir = scratch_dir("readback");
  write_results(records, summary, cfg, dir);
  for (const auto* f : {"curves.jsonl", "summary.csv", "config.snapshot"}) EXPECT_TRUE(fs::exists(dir / f)) << f;
  const auto back = read_results(dir);
  EXPECT_EQ(to_config_text(back.config), to_config_text(cfg));
  EXPECT_EQ(back.curves.size(), 6u);
  EXPECT_EQ(back.curves.at({2, "default"}), records[2].default_curve);
  ASSERT_EQ(back.summaries.size(), 1u);
  EXPECT_EQ(back.summaries[0].method, "mb_su");
  EXPECT_EQ(find_result_dirs(dir), std::vector<fs::path>{dir});
  fs::remove_all(dir);
}

TEST(Suite, RerunsAreByteIdentical) {
  const auto cfg = small_config();
  const fs::path d1 = scratch_dir("det1"), d2 = scratch_dir("det2");
  const auto r1 = run_suite(cfg);
  const auto r2 = run_suite(cfg);
  write_results(r1, summarize(cfg.label, r1), cfg, d1);
  write_results(r2, summarize(cfg.label, r2), cfg, d2);
  for (const auto* f : {"curves.jsonl", "summary.csv", "config.snapshot"}) EXPECT_EQ(slurp(d1 / f), slurp(d2 / f)) << f;
  fs::remove_all(d1);
  fs::remove_all(d2);
}

TEST(Suite, SerialAndParallelAgree) {
  const auto cfg = small_config("q_learning");
  const auto serial = run_suite(cfg, Execution::Serial);
  const auto parallel = run_suite(cfg, Execution::Parallel);
  EXPECT_EQ(serial, parallel);
  ASSERT_EQ(serial.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(serial[i].run_index, i);
    EXPECT_EQ(serial[i].seed, 11 + i);
  }
}

TEST(Suite, FailedRunsAreReported) {
  auto cfg = small_config();
  cfg.agent_config.alpha = 0.0;  // rejected when the agent is built
  EXPECT_EQ(code_of([&] { run_suite(cfg); }), Errc::RunFailed);
  const std::string msg = message_of([&] { run_suite(cfg, Execution::Serial); });
  EXPECT_NE(msg.find("failed runs [0, 1, 2]"), std::string::npos) << msg;
  EXPECT_NE(msg.find("completed runs []"), std::string::npos) << msg;
}

TEST(Suite, MeanCurve) {
  EvalCurve a{{{0, 0.0}, {100, 1.0}}, 200}, b{{{0, 0.5}, {100, 1.0}}, 200};
  const std::vector<EvalCurve> both{a, b};
  const auto m = mean_curve(both);
  EXPECT_EQ(m.points[0].fraction, 0.25);
  EXPECT_EQ(m.points[1].fraction, 1.0);
  EvalCurve c{{{0, 0.0}}, 200};
  const std::vector<EvalCurve> mismatched{a, c};
  EXPECT_THROW(mean_curve(mismatched), Error);
}

MethodSummary row(const std::string& method, double def, double loca) {
  MethodSummary s;
  s.method = method;
  s.default_regret = {def, 10.0};
  s.loca_regret = {loca, 20.0};
  s.gain = loca == 0.0 ? std::numeric_limits<double>::infinity() : def / loca;
  return s;
}

TEST(Report, TableCellsAndGrouping) {
  const std::string table = render_table(
      {row("mb_su", 10430, 2080), row("mb_vi", 7690, 0), row("q_learning", 68250, 39520), row("nstep_model n=1", 41220, 2400),
       row("sarsa_lambda", 30090, 14920)},
      "q_learning");
  std::istringstream lines(table);
  std::vector<std::string> rows;
  for (std::string l; std::getline(lines, l);) rows.push_back(l);
  ASSERT_EQ(rows.size(), 7u);
  EXPECT_EQ(rows[0], "| method | default regret | LoCA regret | relative gain |");
  EXPECT_EQ(rows[2], "| q_learning | 68.25 (0.01) | 39.52 (0.02) | 1.00 |");
  EXPECT_EQ(rows[3].substr(0, 15), "| sarsa_lambda ");
  EXPECT_NE(rows[3].find("| 1.17 |"), std::string::npos);
  EXPECT_EQ(rows[4], "| mb_vi | 7.69 (0.01) | 0.00 (0.02) | ∞ |");
  EXPECT_EQ(rows[5].substr(0, 8), "| mb_su ");
  EXPECT_EQ(rows[6].substr(0, 18), "| nstep_model n=1 ");
}

TEST(Report, MissingBaseline) {
  EXPECT_EQ(code_of([] { render_table({row("mb_vi", 7690, 0)}, "q_learning"); }), Errc::MissingBaseline);
}

TEST(Report, MethodGroups) {
  EXPECT_EQ(method_group("q_learning"), 0);
  EXPECT_EQ(method_group("sarsa_lambda alpha_mult=0.1"), 0);
  EXPECT_EQ(method_group("mb_vi s_mult=5"), 1);
  EXPECT_EQ(method_group("mb_su"), 2);
  EXPECT_EQ(method_group("nstep_model n=5"), 3);
}

// Minimal structural XML check: every tag closes in order, no stray '<' or '&'.
bool well_formed(const std::string& xml) {
  std::vector<std::string> stack;
  std::size_t i = 0;
  if (xml.rfind("<?xml", 0) == 0) i = xml.find("?>") + 2;
  bool root_seen = false;
  while (i < xml.size()) {
    const auto open = xml.find('<', i);
    const std::string text = xml.substr(i, open == std::string::npos ? std::string::npos : open - i);
    for (std::size_t k = 0; k < text.size(); ++k) {
      if (text[k] != '&') continue;
      const auto semi = text.find(';', k);
      if (semi == std::string::npos) return false;
      const auto ent = text.substr(k, semi - k + 1);
      if (ent != "&amp;" && ent != "&lt;" && ent != "&gt;" && ent != "&quot;" && ent != "&apos;") return false;
    }
    if (open == std::string::npos) break;
    const auto close = xml.find('>', open);
    if (close == std::string::npos) return false;
    std::string tag = xml.substr(open + 1, close - open - 1);
    if (tag.find('<') != std::string::npos) return false;
    if (tag.front() == '/') {
      const std::string name = tag.substr(1);
      if (stack.empty() || stack.back() != name) return false;
      stack.pop_back();
    } else if (tag.back() != '/') {
      const std::string name = tag.substr(0, tag.find_first_of(" \n\t"));
      if (stack.empty() && root_seen) return false;
      root_seen = true;
      stack.push_back(name);
    }
    i = close + 1;
  }
  return root_seen && stack.empty();
}

TEST(Svg, WellFormedWithDefaultLabels) {
  EvalCurve rising{{{0, 0.0}, {100, 0.5}, {200, 1.0}}, 300};
  const std::string svg = svg_curves({{"sarsa_lambda", rising}, {"a<b & c", rising}}, {});
  EXPECT_TRUE(well_formed(svg)) << svg;
  EXPECT_NE(svg.find(">sarsa_lambda<"), std::string::npos);
  EXPECT_NE(svg.find("a&lt;b &amp; c"), std::string::npos);
  EXPECT_EQ(code_of([] { svg_curves({}, {}); }), Errc::EmptyInput);
}

std::vector<double> polyline_ys(const std::string& svg) {
  const auto start = svg.find("points=\"", svg.find("<polyline")) + 8;
  std::istringstream pts(svg.substr(start, svg.find('"', start) - start));
  std::vector<double> ys;
  for (std::string pair; pts >> pair;) ys.push_back(std::stod(pair.substr(pair.find(',') + 1)));
  return ys;
}

TEST(Svg, ConstantOneCurveSitsOnTopGridline) {
  EvalCurve ones{{{0, 1.0}, {100, 1.0}, {200, 1.0}}, 300};
  const std::string svg = svg_curves({{"mb_vi", ones}}, {"MB-VI"});
  EXPECT_NE(svg.find(">MB-VI<"), std::string::npos);
  const auto ys = polyline_ys(svg);
  ASSERT_EQ(ys.size(), 3u);
  for (double y : ys) EXPECT_EQ(y, ys.front());
  // The topmost gridline is the one with the smallest y.
  double top = std::numeric_limits<double>::infinity();
  for (auto pos = svg.find("class=\"grid\""); pos != std::string::npos; pos = svg.find("class=\"grid\"", pos + 1)) {
    const auto tag_start = svg.rfind('<', pos);
    const auto tag = svg.substr(tag_start, svg.find('>', pos) - tag_start);
    const auto y1 = tag.find("y1=\"");
    if (y1 != std::string::npos) top = std::min(top, std::stod(tag.substr(y1 + 4)));
  }
  EXPECT_EQ(ys.front(), top);
}

TEST(Svg, EmitWritesFileOrThrows) {
  const fs::path dir = scratch_dir("svg");
  fs::create_directories(dir);
  EvalCurve c{{{0, 0.5}}, 100};
  emit_svg_curves({{"q_learning", c}}, {}, dir / "c.svg");
  EXPECT_TRUE(well_formed(slurp(dir / "c.svg")));
  EXPECT_EQ(code_of([&] { emit_svg_curves({{"q_learning", c}}, {}, dir / "missing" / "c.svg"); }), Errc::IoError);
  fs::remove_all(dir);
}

}  // namespace
}  // namespace loca
