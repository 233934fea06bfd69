#include "yulesimon/study.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <sstream>

#include "yulesimon/corpus.hpp"
#include "yulesimon/diagnostics.hpp"
#include "yulesimon/io.hpp"

namespace yulesimon::study {

namespace {

constexpr std::size_t kQuickFactor = 10;
constexpr std::size_t kQuickReplicates = 5;

std::string fixed2(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

void apply_quick(Scenario& s) {
  s.iterations /= kQuickFactor;
  s.burn_in /= kQuickFactor;
  s.replicates = kQuickReplicates;
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

ChainConfig chain_config(const Scenario& s, std::uint64_t seed) {
  ChainConfig c;
  c.iterations = s.iterations;
  c.burn_in = s.burn_in;
  c.seed = seed;
  return c;
}

}  // namespace

std::uint64_t scenario_seed(std::uint64_t master_seed, const std::string& label) {
  return derive_seed(master_seed, hash_label(label));
}

ExperimentSpec table1_spec(std::uint64_t master_seed, bool quick) {
  ExperimentSpec spec;
  spec.master_seed = master_seed;
  spec.quick = quick;
  for (double rho : {0.80, 5.00})
    for (std::size_t n : {30, 100, 500}) {
      Scenario s;
      s.label = "table1:rho=" + fixed2(rho) + ":n=" + std::to_string(n);
      s.model = Model::iid;
      s.truth = {rho};
      s.n = n;
      s.prior = {0.25, 0.05};
      if (quick) apply_quick(s);
      spec.scenarios.push_back(std::move(s));
    }
  return spec;
}

ExperimentSpec table2_spec(std::uint64_t master_seed, bool quick) {
  ExperimentSpec spec;
  spec.master_seed = master_seed;
  spec.quick = quick;
  const std::vector<std::vector<double>> betas = {{-0.5, 5.0}, {1.5, -1.0}};
  for (std::size_t n : {30, 100, 500})
    for (const auto& beta : betas) {
      Scenario s;
      s.label = "table2:beta=(" + fixed2(beta[0]) + "," + fixed2(beta[1]) +
                "):n=" + std::to_string(n);
      s.model = Model::regression;
      s.truth = beta;
      s.n = n;
      if (quick) apply_quick(s);
      spec.scenarios.push_back(std::move(s));
    }
  return spec;
}

std::string Table::to_csv() const {
  std::ostringstream out;
  for (std::size_t c = 0; c < header.size(); ++c) out << (c ? "," : "") << csv_escape(header[c]);
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << csv_escape(row[c]);
    out << '\n';
  }
  return out.str();
}

nlohmann::json Table::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& row : rows) {
    nlohmann::json obj = nlohmann::json::object();
    for (std::size_t c = 0; c < header.size(); ++c) obj[header[c]] = row[c];
    arr.push_back(std::move(obj));
  }
  return arr;
}

// ---- Table 1 ---------------------------------------------------------------

std::vector<Table1Row> run_table1_rows(const ExperimentSpec& spec) {
  std::vector<Table1Row> out;
  for (const auto& s : spec.scenarios) {
    Table1Row row;
    row.scenario = s;
    try {
      const auto seed = scenario_seed(spec.master_seed, s.label);
      row.study = replicate_study(s.truth.at(0), s.n, s.prior, chain_config(s, seed), s.replicates);
      RngState data_rng(row.study->replicates.front().data_seed);
      const auto data = simulate_counts(data_rng, YuleSimonParam(s.truth[0]), s.n);
      try {
        row.fixed_point = fixed_point_fit(data);
      } catch (const std::exception& e) {
        row.error = std::string("fixed point: ") + e.what();
      }
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    out.push_back(std::move(row));
  }
  return out;
}

Table table1_from_rows(const std::vector<Table1Row>& rows) {
  Table t;
  t.header = {"rho", "n", "mean", "median", "mse_mean", "mse_median", "fixed_point", "error"};
  for (const auto& r : rows) {
    std::vector<std::string> line = {io::format_real(r.scenario.truth.at(0)),
                                     std::to_string(r.scenario.n)};
    if (r.study) {
      for (double v : {r.study->mean, r.study->median, r.study->mse_mean, r.study->mse_median})
        line.push_back(io::format_real(v));
    } else {
      line.insert(line.end(), 4, "");
    }
    line.push_back(r.fixed_point ? io::format_real(r.fixed_point->rho_hat) : "");
    line.push_back(r.error);
    t.rows.push_back(std::move(line));
  }
  return t;
}

Table run_table1(const ExperimentSpec& spec) { return table1_from_rows(run_table1_rows(spec)); }

// ---- Table 2 ---------------------------------------------------------------

RegressionStudyRow regression_study(const Scenario& s, std::uint64_t seed) {
  RegressionStudyRow row;
  row.scenario = s;
  const std::size_t p = s.truth.size();
  row.replicates.resize(s.replicates);

  std::exception_ptr failure;
  const auto nr = static_cast<std::ptrdiff_t>(s.replicates);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t r = 0; r < nr; ++r) {
    try {
      RngState data_rng(derive_seed(seed, 2 * static_cast<std::uint64_t>(r)));
      const auto design = simulate_regression_data(data_rng, s.truth, s.n);
      RegressionConfig cfg;
      cfg.chain = chain_config(s, derive_seed(seed, 2 * static_cast<std::uint64_t>(r) + 1));
      cfg.proposal_scale = s.proposal_scale;
      const auto trace = run_regression(design, cfg);
      auto& rep = row.replicates[r];
      for (std::size_t j = 0; j < p; ++j) {
        const auto col = trace.column(j);
        rep.summaries.push_back(summarize(std::span<const double>(col)));
      }
      rep.acceptance_rate = trace.metadata.at("acceptance_rate");
    } catch (...) {
#pragma omp critical(ys_regression_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  const double rn = static_cast<double>(s.replicates);
  row.coefficients.resize(p);
  for (std::size_t j = 0; j < p; ++j) {
    auto& c = row.coefficients[j];
    c.truth = s.truth[j];
    for (const auto& rep : row.replicates) {
      const auto& sm = rep.summaries[j];
      c.mean += sm.mean / rn;
      c.median += sm.median / rn;
      c.mse_mean += (sm.mean - c.truth) * (sm.mean - c.truth) / rn;
      c.ci_lower += sm.ci_lower / rn;
      c.ci_upper += sm.ci_upper / rn;
      if (sm.ci_lower <= c.truth && c.truth <= sm.ci_upper) ++c.covered;
    }
  }
  for (const auto& rep : row.replicates) row.acceptance_rate += rep.acceptance_rate / rn;
  return row;
}

std::vector<RegressionStudyRow> run_table2_rows(const ExperimentSpec& spec) {
  std::vector<RegressionStudyRow> out;
  for (const auto& s : spec.scenarios) {
    try {
      out.push_back(regression_study(s, scenario_seed(spec.master_seed, s.label)));
    } catch (const std::exception& e) {
      RegressionStudyRow row;
      row.scenario = s;
      row.error = e.what();
      out.push_back(std::move(row));
    }
  }
  return out;
}

Table table2_from_rows(const std::vector<RegressionStudyRow>& rows) {
  Table t;
  t.header = {"n",        "coefficient", "true",     "mean",     "median",          "mse_mean",
              "ci_lower", "ci_upper",    "coverage", "acceptance_rate", "error"};
  for (const auto& r : rows) {
    if (!r.error.empty()) {
      std::vector<std::string> line(t.header.size());
      line[0] = std::to_string(r.scenario.n);
      line.back() = r.error;
      t.rows.push_back(std::move(line));
      continue;
    }
    for (std::size_t j = 0; j < r.coefficients.size(); ++j) {
      const auto& c = r.coefficients[j];
      t.rows.push_back({std::to_string(r.scenario.n), "beta" + std::to_string(j),
                        io::format_real(c.truth), io::format_real(c.mean),
                        io::format_real(c.median), io::format_real(c.mse_mean),
                        io::format_real(c.ci_lower), io::format_real(c.ci_upper),
                        io::format_real(static_cast<double>(c.covered) /
                                        static_cast<double>(r.scenario.replicates)),
                        io::format_real(r.acceptance_rate), ""});
    }
  }
  return t;
}

Table run_table2(const ExperimentSpec& spec) { return table2_from_rows(run_table2_rows(spec)); }

// ---- Table 3 ---------------------------------------------------------------

Table3Row fit_counts(const std::string& name, const std::vector<Count>& counts,
                     const TextOptions& opts) {
  Table3Row row;
  row.novel = name;
  row.n = counts.size();
  for (Count k : counts) row.total_tokens += k;

  ChainConfig cfg;
  cfg.iterations = opts.iterations;
  cfg.burn_in = opts.burn_in;
  cfg.seed = opts.seed;
  const auto traces = run_chains(counts, opts.prior, cfg, opts.chains);
  row.posterior = summarize_pooled(traces);

  std::vector<std::vector<double>> chains;
  for (const auto& t : traces) chains.push_back(t.column(0));
  if (chains.size() >= 2) row.rhat = gelman_rubin(chains);
  for (const auto& c : chains) row.geweke_max_abs = std::max(row.geweke_max_abs, std::abs(geweke(c)));

  try {
    row.fixed_point = fixed_point_fit(counts);
  } catch (const std::exception& e) {
    row.error = std::string("fixed point: ") + e.what();
  }
  return row;
}

std::vector<Table3Row> run_table3_rows(const std::vector<std::filesystem::path>& texts,
                                       const TextOptions& opts) {
  std::vector<Table3Row> out;
  for (const auto& path : texts) {
    const auto name = path.stem().string();
    try {
      auto raw = io::read_file(path);
      bool markers = false;
      if (opts.strip_boilerplate) {
        auto stripped = strip_gutenberg_boilerplate(raw);
        markers = stripped.markers_found;
        raw = std::move(stripped.body);
      }
      const auto freq = count_words(raw, opts.rules);
      TextOptions per_text = opts;
      per_text.seed = derive_seed(opts.seed, hash_label(name));
      auto row = fit_counts(name, freq.counts(), per_text);
      row.markers_found = markers;
      out.push_back(std::move(row));
    } catch (const std::exception& e) {
      Table3Row row;
      row.novel = name;
      row.error = e.what();
      out.push_back(std::move(row));
    }
  }
  return out;
}

Table table3_from_rows(const std::vector<Table3Row>& rows) {
  Table t;
  t.header = {"novel",    "n",           "total_tokens", "mean",           "median",
              "ci_lower", "ci_upper",    "fixed_point",  "rhat",           "geweke_max_abs",
              "boilerplate_stripped", "error"};
  for (const auto& r : rows) {
    if (r.n == 0) {
      std::vector<std::string> line(t.header.size());
      line[0] = r.novel;
      line.back() = r.error;
      t.rows.push_back(std::move(line));
      continue;
    }
    t.rows.push_back({r.novel, std::to_string(r.n), std::to_string(r.total_tokens),
                      io::format_real(r.posterior.mean), io::format_real(r.posterior.median),
                      io::format_real(r.posterior.ci_lower), io::format_real(r.posterior.ci_upper),
                      r.fixed_point ? io::format_real(r.fixed_point->rho_hat) : "",
                      io::format_real(r.rhat), io::format_real(r.geweke_max_abs),
                      r.markers_found ? "true" : "false", r.error});
  }
  return t;
}

Table run_table3(const std::vector<std::filesystem::path>& texts, const TextOptions& opts) {
  return table3_from_rows(run_table3_rows(texts, opts));
}

nlohmann::json spec_json(const ExperimentSpec& spec) {
  nlohmann::json j;
  j["master_seed"] = spec.master_seed;
  j["quick"] = spec.quick;
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& s : spec.scenarios) {
    nlohmann::json sj;
    sj["label"] = s.label;
    sj["model"] = s.model == Model::iid ? "iid" : "regression";
    sj["truth"] = s.truth;
    sj["n"] = s.n;
    if (s.model == Model::iid) sj["prior"] = {{"a", s.prior.a}, {"b", s.prior.b}};
    else sj["proposal_scale"] = s.proposal_scale;
    sj["iterations"] = s.iterations;
    sj["burn_in"] = s.burn_in;
    sj["replicates"] = s.replicates;
    sj["seed"] = scenario_seed(spec.master_seed, s.label);
    arr.push_back(std::move(sj));
  }
  j["scenarios"] = arr;
  return j;
}

}  // namespace yulesimon::study
