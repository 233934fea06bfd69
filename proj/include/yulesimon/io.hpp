#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "yulesimon/diagnostics.hpp"
#include "yulesimon/distribution.hpp"
#include "yulesimon/regression.hpp"
#include "yulesimon/trace.hpp"

namespace yulesimon::io {

/// %.17g
std::string format_real(double x);

/// JSON text with every floating-point number printed with 17 significant
/// digits. Objects keep nlohmann's key order (sorted).
std::string dump_json(const nlohmann::json& j, int indent = 2);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& contents);

/// Count data: one positive integer per line. Blank lines and lines starting
/// with '#' are skipped. A line with commas contributes its last field, and a
/// non-numeric first line is taken as a header, so `word,count` files from
/// the text command are accepted as-is.
std::vector<Count> parse_counts(const std::string& text);

/// Regression CSV with header `k,x2[,x3,...]`; the intercept column is added.
RegressionDesign parse_regression_csv(const std::string& text);
std::string regression_csv(const RegressionDesign& design);

/// Trace CSV: header `iter,<names...>`.
std::string trace_csv(const ChainTrace& trace);

struct TraceTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> values;  ///< values[col][row]
  const std::vector<double>& column(const std::string& name) const;
};
TraceTable parse_trace_csv(const std::string& text);

nlohmann::json to_json(const PosteriorSummary& s);
nlohmann::json to_json(const DiagnosticsReport& r, bool include_series = false);

/// CSV `t,running_mean`.
std::string progressive_mean_csv(const std::vector<double>& running);

}  // namespace yulesimon::io
