#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "loca/protocol.hpp"
#include "loca/suite.hpp"

namespace loca {

/// Markdown table with default regret, LoCA regret (both x 1e-3, with
/// standard errors) and relative gain against `baseline`. Rows are grouped
/// model-free first, then mb_vi, mb_su and nstep_model rows; input order is
/// kept within a group. Throws MissingBaseline.
std::string render_table(std::vector<MethodSummary> summaries, std::string_view baseline);

/// Rank used for the row grouping of render_table.
int method_group(std::string_view method);

struct NamedCurve {
  std::string method;
  EvalCurve curve;
};

/// Standalone SVG line chart of top-terminal fraction against training
/// steps, one polyline per curve. Empty `labels` fall back to method names.
std::string svg_curves(const std::vector<NamedCurve>& curves, const std::vector<std::string>& labels);

/// Writes svg_curves to `path`; throws IoError.
void emit_svg_curves(const std::vector<NamedCurve>& curves, const std::vector<std::string>& labels,
                     const std::filesystem::path& path);

}  // namespace loca
