#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "milnor/sampling.hpp"

namespace milnor::cli {

enum ExitCode : int { kPass = 0, kViolation = 1, kUsage = 2 };

// Bad flags, unsupported output format, unwritable path (exit code 2).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Point list flattened for CSV: one row per point.
struct PointTable {
  std::vector<std::string> coordinate_names;
  std::vector<Point> points;
  std::vector<double> residuals;
};

struct RunReport {
  std::string command;
  nlohmann::json inputs = nlohmann::json::object();
  nlohmann::json tolerances = nlohmann::json::object();
  nlohmann::json results = nlohmann::json::object();
  int exit_code = kPass;
  std::optional<PointTable> table;

  nlohmann::json to_json() const;
};

enum class Format { Json, Csv };

// JSON: the full report, two-space indented, keys sorted.
std::string render_json(const RunReport& report);

// CSV header is "index,<variable names...>,residual"; values use 17
// significant digits. Throws UsageError when the report carries no points.
std::string render_csv(const RunReport& report);

// Writes the rendered report to `path`; UsageError on I/O failure.
void emit_report(const RunReport& report, Format format, const std::string& path);

}  // namespace milnor::cli
