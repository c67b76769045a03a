#include "loca/report.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <fstream>

#include "loca/error.hpp"

namespace loca {
namespace {

std::string scaled(const AggregateStats& s) {
  return fmt::format("{:.2f} ({:.2f})", s.mean * 1e-3, s.standard_error * 1e-3);
}

std::string ratio_cell(double v) {
  if (std::isinf(v)) return "∞";
  return fmt::format("{:.2f}", v);
}

std::string xml_escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

constexpr std::array<const char*, 8> kPalette{"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                             "#9467bd", "#8c564b", "#e377c2", "#17becf"};

}  // namespace

int method_group(std::string_view method) {
  const auto head = method.substr(0, method.find(' '));
  if (head == "mb_vi") return 1;
  if (head == "mb_su") return 2;
  if (head == "nstep_model") return 3;
  return 0;
}

std::string render_table(std::vector<MethodSummary> summaries, std::string_view baseline) {
  apply_baseline(summaries, baseline);
  std::stable_sort(summaries.begin(), summaries.end(), [](const MethodSummary& a, const MethodSummary& b) {
    return method_group(a.method) < method_group(b.method);
  });
  std::string out = "| method | default regret | LoCA regret | relative gain |\n|---|---|---|---|\n";
  for (const auto& s : summaries)
    out += fmt::format("| {} | {} | {} | {} |\n", s.method, scaled(s.default_regret), scaled(s.loca_regret),
                       ratio_cell(*s.relative_gain));
  return out;
}

std::string svg_curves(const std::vector<NamedCurve>& curves, const std::vector<std::string>& labels) {
  if (curves.empty()) throw Error(Errc::EmptyInput, "no curves to plot");
  constexpr double width = 640, height = 400, left = 60, right = 180, top = 20, bottom = 50;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;

  std::size_t x_max = 0;
  for (const auto& c : curves) {
    x_max = std::max(x_max, c.curve.horizon);
    if (!c.curve.points.empty()) x_max = std::max(x_max, c.curve.points.back().train_step);
  }
  if (x_max == 0) x_max = 1;
  auto px = [&](double step) { return left + plot_w * step / static_cast<double>(x_max); };
  auto py = [&](double frac) { return top + plot_h * (1.0 - frac); };

  std::string out = fmt::format(
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\">\n"
      "<rect x=\"0\" y=\"0\" width=\"{0}\" height=\"{1}\" fill=\"white\"/>\n",
      width, height);

  for (int i = 0; i <= 4; ++i) {
    const double f = i / 4.0;
    out += fmt::format(
        "<line class=\"grid\" x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"#dddddd\"/>\n"
        "<text x=\"{:.2f}\" y=\"{:.2f}\" font-size=\"11\" text-anchor=\"end\">{:.2f}</text>\n",
        left, py(f), left + plot_w, py(f), left - 6, py(f) + 4, f);
  }
  for (int i = 0; i <= 4; ++i) {
    const double step = static_cast<double>(x_max) * i / 4.0;
    out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" font-size=\"11\" text-anchor=\"middle\">{}</text>\n", px(step),
                       top + plot_h + 16, static_cast<std::size_t>(std::llround(step)));
  }
  out += fmt::format(
      "<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" fill=\"none\" stroke=\"black\"/>\n"
      "<text x=\"{:.2f}\" y=\"{:.2f}\" font-size=\"12\" text-anchor=\"middle\">training steps</text>\n"
      "<text x=\"14\" y=\"{:.2f}\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 14 {:.2f})\">"
      "top-terminal fraction</text>\n",
      left, top, plot_w, plot_h, left + plot_w / 2, height - 10, top + plot_h / 2, top + plot_h / 2);

  for (std::size_t i = 0; i < curves.size(); ++i) {
    const char* color = kPalette[i % kPalette.size()];
    std::string pts;
    for (const auto& p : curves[i].curve.points)
      pts += fmt::format("{}{:.2f},{:.2f}", pts.empty() ? "" : " ", px(static_cast<double>(p.train_step)),
                         py(p.fraction));
    out += fmt::format("<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\" points=\"{}\"/>\n", color, pts);
    const std::string& label = i < labels.size() && !labels[i].empty() ? labels[i] : curves[i].method;
    const double ly = top + 14 + 18.0 * static_cast<double>(i);
    out += fmt::format(
        "<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"{}\" stroke-width=\"2\"/>\n"
        "<text x=\"{:.2f}\" y=\"{:.2f}\" font-size=\"11\">{}</text>\n",
        left + plot_w + 10, ly, left + plot_w + 30, ly, color, left + plot_w + 36, ly + 4, xml_escape(label));
  }
  out += "</svg>\n";
  return out;
}

void emit_svg_curves(const std::vector<NamedCurve>& curves, const std::vector<std::string>& labels,
                     const std::filesystem::path& path) {
  const std::string text = svg_curves(curves, labels);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::IoError, "cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw Error(Errc::IoError, "write failed for " + path.string());
}

}  // namespace loca
