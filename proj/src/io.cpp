#include "yulesimon/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "yulesimon/error.hpp"

namespace yulesimon::io {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, sep)) out.push_back(trim(field));
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    out.push_back(line);
  }
  return out;
}

bool parse_u64(const std::string& s, std::uint64_t& out) {
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

double parse_double(const std::string& s, std::size_t line_no) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw DataError("line " + std::to_string(line_no) + ": not a number: \"" + s + "\"");
}

void dump_value(const nlohmann::json& j, int indent, int depth, std::string& out) {
  const auto pad = [&](int d) {
    if (indent >= 0) {
      out += '\n';
      out.append(static_cast<std::size_t>(indent * d), ' ');
    }
  };
  switch (j.type()) {
    case nlohmann::json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        pad(depth + 1);
        out += nlohmann::json(it.key()).dump();
        out += indent >= 0 ? ": " : ":";
        dump_value(it.value(), indent, depth + 1, out);
      }
      pad(depth);
      out += '}';
      return;
    }
    case nlohmann::json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += '[';
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += ',';
        first = false;
        pad(depth + 1);
        dump_value(v, indent, depth + 1, out);
      }
      pad(depth);
      out += ']';
      return;
    }
    case nlohmann::json::value_t::number_float: {
      const double x = j.get<double>();
      out += std::isfinite(x) ? format_real(x) : "null";
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string dump_json(const nlohmann::json& j, int indent) {
  std::string out;
  dump_value(j, indent, 0, out);
  out += '\n';
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << contents;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::vector<Count> parse_counts(const std::string& text) {
  std::vector<Count> out;
  bool first_content = true;
  std::size_t line_no = 0;
  for (const auto& raw : lines_of(text)) {
    ++line_no;
    const auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    std::string field = line;
    if (const auto comma = line.rfind(','); comma != std::string::npos)
      field = trim(std::string_view(line).substr(comma + 1));
    std::uint64_t v = 0;
    if (!parse_u64(field, v)) {
      if (first_content) {
        first_content = false;
        continue;  // header
      }
      throw DataError("line " + std::to_string(line_no) + ": expected a positive integer, got \"" +
                      field + "\"");
    }
    first_content = false;
    if (v < 1)
      throw DataError("line " + std::to_string(line_no) + ": counts must be >= 1");
    out.push_back(v);
  }
  return out;
}

RegressionDesign parse_regression_csv(const std::string& text) {
  const auto lines = lines_of(text);
  std::size_t i = 0;
  while (i < lines.size() && trim(lines[i]).empty()) ++i;
  if (i == lines.size()) throw DataError("regression file is empty");
  const auto header = split(trim(lines[i]), ',');
  if (header.empty() || header[0] != "k")
    throw DataError("regression header must start with `k`");
  const std::size_t p = header.size();  // k plus p-1 regressors => p coefficients
  std::vector<Count> k;
  std::vector<double> x;
  for (++i; i < lines.size(); ++i) {
    const auto line = trim(lines[i]);
    if (line.empty()) continue;
    const auto fields = split(line, ',');
    if (fields.size() != p)
      throw DataError("line " + std::to_string(i + 1) + ": expected " + std::to_string(p) +
                      " fields");
    std::uint64_t kv = 0;
    if (!parse_u64(fields[0], kv) || kv < 1)
      throw DataError("line " + std::to_string(i + 1) + ": k must be a positive integer");
    k.push_back(kv);
    x.push_back(1.0);
    for (std::size_t j = 1; j < p; ++j) x.push_back(parse_double(fields[j], i + 1));
  }
  return RegressionDesign(std::move(k), std::move(x), p);
}

std::string regression_csv(const RegressionDesign& design) {
  std::string out = "k";
  for (std::size_t j = 1; j < design.n_beta(); ++j) out += ",x" + std::to_string(j + 1);
  out += '\n';
  for (std::size_t i = 0; i < design.n(); ++i) {
    out += std::to_string(design.k()[i]);
    const auto row = design.row(i);
    for (std::size_t j = 1; j < row.size(); ++j) out += ',' + format_real(row[j]);
    out += '\n';
  }
  return out;
}

std::string trace_csv(const ChainTrace& trace) {
  std::string out = "iter";
  for (const auto& n : trace.parameter_names()) out += ',' + n;
  out += '\n';
  for (std::size_t r = 0; r < trace.size(); ++r) {
    out += std::to_string(trace.iterations()[r]);
    for (std::size_t c = 0; c < trace.dim(); ++c) out += ',' + format_real(trace.at(r, c));
    out += '\n';
  }
  return out;
}

const std::vector<double>& TraceTable::column(const std::string& name) const {
  for (std::size_t c = 0; c < columns.size(); ++c)
    if (columns[c] == name) return values[c];
  throw DataError("trace has no column named \"" + name + "\"");
}

TraceTable parse_trace_csv(const std::string& text) {
  const auto lines = lines_of(text);
  if (lines.empty()) throw DataError("trace file is empty");
  TraceTable t;
  t.columns = split(trim(lines[0]), ',');
  t.values.resize(t.columns.size());
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto line = trim(lines[i]);
    if (line.empty()) continue;
    const auto fields = split(line, ',');
    if (fields.size() != t.columns.size())
      throw DataError("trace line " + std::to_string(i + 1) + " has the wrong number of fields");
    for (std::size_t c = 0; c < fields.size(); ++c)
      t.values[c].push_back(parse_double(fields[c], i + 1));
  }
  return t;
}

nlohmann::json to_json(const PosteriorSummary& s) {
  return {{"mean", s.mean},         {"median", s.median},          {"ci_lower", s.ci_lower},
          {"ci_upper", s.ci_upper}, {"n_retained", s.n_retained}, {"level", s.level}};
}

nlohmann::json to_json(const DiagnosticsReport& r, bool include_series) {
  nlohmann::json j;
  j["parameter"] = r.parameter;
  j["rhat"] = r.has_rhat ? nlohmann::json(r.rhat) : nlohmann::json(nullptr);
  j["geweke_z"] = r.geweke_z;
  nlohmann::json finals = nlohmann::json::array();
  for (const auto& s : r.progressive_means) finals.push_back(s.back());
  j["final_progressive_mean"] = finals;
  if (include_series) j["progressive_means"] = r.progressive_means;
  return j;
}

std::string progressive_mean_csv(const std::vector<double>& running) {
  std::string out = "t,running_mean\n";
  for (std::size_t t = 0; t < running.size(); ++t)
    out += std::to_string(t + 1) + ',' + format_real(running[t]) + '\n';
  return out;
}

}  // namespace yulesimon::io
