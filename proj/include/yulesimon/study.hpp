#pragma once

// Simulation-study harness: scenario definitions for the three result tables
// and the runners that produce them.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "yulesimon/corpus.hpp"
#include "yulesimon/gibbs.hpp"
#include "yulesimon/mle.hpp"
#include "yulesimon/regression.hpp"

namespace yulesimon::study {

inline constexpr std::uint64_t kDefaultMasterSeed = 2017;

enum class Model { iid, regression };

struct Scenario {
  std::string label;
  Model model = Model::iid;
  std::vector<double> truth;  ///< {rho} or beta
  std::size_t n = 0;
  GammaPrior prior;
  std::size_t iterations = 50'000;
  std::size_t burn_in = 10'000;
  std::size_t replicates = 20;
  double proposal_scale = 0.1;
};

struct ExperimentSpec {
  std::vector<Scenario> scenarios;
  std::uint64_t master_seed = kDefaultMasterSeed;
  bool quick = false;
};

/// rho in {0.80, 5.00} x n in {30, 100, 500}; Gamma(0.25, 0.05); 50k/10k; 20 replicates.
/// quick: iterations and burn-in / 10, 5 replicates.
ExperimentSpec table1_spec(std::uint64_t master_seed, bool quick = false);

/// beta in {(-0.5, 5.0), (1.5, -1.0)} x n in {30, 100, 500}.
ExperimentSpec table2_spec(std::uint64_t master_seed, bool quick = false);

/// Seed of a scenario: depends only on the master seed and the label.
std::uint64_t scenario_seed(std::uint64_t master_seed, const std::string& label);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string to_csv() const;
  nlohmann::json to_json() const;
};

struct Table1Row {
  Scenario scenario;
  std::optional<StudyRow> study;
  std::optional<FixedPointResult> fixed_point;  ///< on replicate 0's data
  std::string error;
};

std::vector<Table1Row> run_table1_rows(const ExperimentSpec& spec);
Table run_table1(const ExperimentSpec& spec);
Table table1_from_rows(const std::vector<Table1Row>& rows);

struct CoefficientStats {
  double truth = 0.0;
  double mean = 0.0;      ///< average posterior mean
  double median = 0.0;    ///< average posterior median
  double mse_mean = 0.0;
  double ci_lower = 0.0;  ///< average lower 95% bound
  double ci_upper = 0.0;
  std::size_t covered = 0;  ///< replicates whose interval contains the truth
};

struct RegressionReplicate {
  std::vector<PosteriorSummary> summaries;  ///< per coefficient
  double acceptance_rate = 0.0;
};

struct RegressionStudyRow {
  Scenario scenario;
  std::vector<CoefficientStats> coefficients;
  std::vector<RegressionReplicate> replicates;
  double acceptance_rate = 0.0;  ///< average over replicates
  std::string error;
};

/// Fresh design (regressors ~ U(0,1)) and chain per replicate.
RegressionStudyRow regression_study(const Scenario& scenario, std::uint64_t seed);

std::vector<RegressionStudyRow> run_table2_rows(const ExperimentSpec& spec);
Table run_table2(const ExperimentSpec& spec);
Table table2_from_rows(const std::vector<RegressionStudyRow>& rows);

struct TextOptions {
  GammaPrior prior;
  std::size_t chains = 3;
  std::size_t iterations = 10'000;
  std::size_t burn_in = 1'000;
  std::uint64_t seed = kDefaultMasterSeed;
  bool strip_boilerplate = true;
  TokenizerRules rules;
};

struct Table3Row {
  std::string novel;
  std::size_t n = 0;
  std::uint64_t total_tokens = 0;
  PosteriorSummary posterior;
  std::optional<FixedPointResult> fixed_point;
  double rhat = 0.0;
  double geweke_max_abs = 0.0;
  bool markers_found = false;
  std::string error;
};

/// Fits one frequency vector: pooled posterior of `chains` Gibbs chains,
/// fixed-point MLE, R-hat and Geweke.
Table3Row fit_counts(const std::string& name, const std::vector<Count>& counts,
                     const TextOptions& opts);

std::vector<Table3Row> run_table3_rows(const std::vector<std::filesystem::path>& texts,
                                       const TextOptions& opts);
Table run_table3(const std::vector<std::filesystem::path>& texts, const TextOptions& opts);
Table table3_from_rows(const std::vector<Table3Row>& rows);

nlohmann::json spec_json(const ExperimentSpec& spec);

}  // namespace yulesimon::study
