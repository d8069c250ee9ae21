#include "milnor/cli/report.hpp"

#include <fmt/format.h>

#include <fstream>

namespace milnor::cli {

nlohmann::json RunReport::to_json() const {
  return {{"command", command},
          {"inputs", inputs},
          {"tolerances", tolerances},
          {"results", results},
          {"exit_code", exit_code}};
}

std::string render_json(const RunReport& report) { return report.to_json().dump(2) + "\n"; }

std::string render_csv(const RunReport& report) {
  if (!report.table) throw UsageError("command '" + report.command + "' has no point list to write as CSV");
  const PointTable& t = *report.table;
  std::string out = "index";
  for (const auto& name : t.coordinate_names) out += "," + name;
  out += ",residual\n";
  for (std::size_t i = 0; i < t.points.size(); ++i) {
    out += std::to_string(i);
    for (double v : t.points[i]) out += fmt::format(",{:.17g}", v);
    out += fmt::format(",{:.17g}\n", t.residuals[i]);
  }
  return out;
}

void emit_report(const RunReport& report, Format format, const std::string& path) {
  const std::string text = format == Format::Json ? render_json(report) : render_csv(report);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw UsageError("cannot open '" + path + "' for writing");
  out << text;
  out.flush();
  if (!out) throw UsageError("failed writing '" + path + "'");
}

}  // namespace milnor::cli
