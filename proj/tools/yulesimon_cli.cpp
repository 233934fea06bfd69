// yulesimon: command-line front end.
//
//   yulesimon pmf --rho R --k K [--log]
//   yulesimon sample --rho R --n N --seed S
//   yulesimon fit --data FILE --a A --b B --iters N --burnin M --chains C --seed S --out PREFIX
//   yulesimon regress --data FILE --iters N --burnin M --scale S --seed X --out PREFIX
//   yulesimon mle --data FILE [--tol T --max-iters M]
//   yulesimon text --in FILE [--no-fold] [--keep-boilerplate] --out counts.csv
//   yulesimon diag --traces F1 F2 ... --param NAME [--out PREFIX]
//   yulesimon study table1|table2|table3 --out DIR [--quick] [--texts ...]
//
// Errors go to stderr as one JSON object and the exit status is nonzero.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <iterator>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "yulesimon/corpus.hpp"
#include "yulesimon/diagnostics.hpp"
#include "yulesimon/error.hpp"
#include "yulesimon/gibbs.hpp"
#include "yulesimon/io.hpp"
#include "yulesimon/mle.hpp"
#include "yulesimon/regression.hpp"
#include "yulesimon/study.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace yulesimon;

namespace {

struct Globals {
  std::optional<std::uint64_t> seed_opt;
  std::string out;
  bool quick = false;
  std::string format;  // empty: per-subcommand default

  std::uint64_t seed(std::uint64_t fallback = 1) const { return seed_opt.value_or(fallback); }
  std::string format_or(const std::string& fallback) const {
    return format.empty() ? fallback : format;
  }
};

std::string read_input(const std::string& path) {
  if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
  return io::read_file(path);
}

// Writes to --out when given, stdout otherwise.
void emit(const Globals& g, const std::string& text) {
  if (g.out.empty()) std::cout << text;
  else io::write_file(g.out, text);
}

std::string error_kind(const std::exception& e) {
  if (dynamic_cast<const DomainError*>(&e)) return "domain_error";
  if (dynamic_cast<const DataError*>(&e)) return "data_error";
  if (dynamic_cast<const DegenerateError*>(&e)) return "degenerate_error";
  if (dynamic_cast<const DivergenceError*>(&e)) return "divergence_error";
  if (dynamic_cast<const ConvergenceError*>(&e)) return "convergence_error";
  if (dynamic_cast<const DecodeError*>(&e)) return "decode_error";
  return "error";
}

json error_json(const std::exception& e) {
  json j = {{"error", error_kind(e)}, {"message", e.what()}};
  if (const auto* c = dynamic_cast<const ConvergenceError*>(&e)) j["last_iterate"] = c->last_iterate();
  if (const auto* d = dynamic_cast<const DecodeError*>(&e)) j["byte_offset"] = d->offset();
  return j;
}

// ---- pmf / sample ------------------------------------------------------------

struct PmfArgs {
  double rho = 1.0;
  Count k = 1;
  bool log = false;
};

void run_pmf(const Globals& g, const PmfArgs& a) {
  const YuleSimonParam p(a.rho);
  const double v = a.log ? log_pmf(a.k, p) : pmf(a.k, p);
  if (g.format_or("csv") == "json")
    emit(g, io::dump_json({{"rho", a.rho}, {"k", a.k}, {a.log ? "log_pmf" : "pmf", v}}, -1));
  else
    emit(g, io::format_real(v) + "\n");
}

struct SampleArgs {
  double rho = 1.0;
  std::size_t n = 1;
};

void run_sample(const Globals& g, const SampleArgs& a) {
  const YuleSimonParam p(a.rho);
  RngState rng(g.seed());
  std::string out;
  for (std::size_t i = 0; i < a.n; ++i) out += std::to_string(sample(rng, p)) + "\n";
  emit(g, out);
}

// ---- fit -----------------------------------------------------------------------

struct FitArgs {
  std::string data;
  double a = 0.25;
  double b = 0.05;
  std::size_t iters = 50'000;
  std::size_t burnin = 10'000;
  std::size_t thin = 1;
  std::size_t chains = 1;
  double level = 0.95;
  std::optional<double> init;
};

void run_fit(const Globals& g, const FitArgs& a) {
  const auto data = io::parse_counts(read_input(a.data));
  const GammaPrior prior{a.a, a.b};
  ChainConfig cfg;
  cfg.iterations = a.iters;
  cfg.burn_in = a.burnin;
  cfg.thinning = a.thin;
  cfg.seed = g.seed();
  cfg.initial_rho = a.init;
  const auto traces = run_chains(data, prior, cfg, a.chains);

  json summary = io::to_json(summarize_pooled(traces, 0, a.level));
  if (a.chains > 1) {
    std::vector<std::vector<double>> cols;
    for (const auto& t : traces) cols.push_back(t.column(0));
    summary["rhat"] = gelman_rubin(cols);
  }
  summary["n"] = data.size();
  summary["chains"] = a.chains;
  summary["config"] = {{"a", a.a},           {"b", a.b},         {"iterations", a.iters},
                       {"burn_in", a.burnin}, {"thinning", a.thin}, {"seed", g.seed()}};

  if (g.out.empty()) {
    std::cout << io::dump_json(summary);
    return;
  }
  for (std::size_t c = 0; c < traces.size(); ++c) {
    const auto name = a.chains == 1 ? g.out + ".trace.csv"
                                    : g.out + ".chain" + std::to_string(c + 1) + ".trace.csv";
    io::write_file(name, io::trace_csv(traces[c]));
  }
  io::write_file(g.out + ".summary.json", io::dump_json(summary));
}

// ---- regress -------------------------------------------------------------------

struct RegressArgs {
  std::string data;
  std::size_t iters = 50'000;
  std::size_t burnin = 10'000;
  std::size_t thin = 1;
  double scale = 0.1;
  bool no_adapt = false;
  double level = 0.95;
};

void run_regress(const Globals& g, const RegressArgs& a) {
  const auto design = io::parse_regression_csv(read_input(a.data));
  RegressionConfig cfg;
  cfg.chain.iterations = a.iters;
  cfg.chain.burn_in = a.burnin;
  cfg.chain.thinning = a.thin;
  cfg.chain.seed = g.seed();
  cfg.proposal_scale = a.scale;
  cfg.adapt = !a.no_adapt;
  const auto trace = run_regression(design, cfg);

  json coefs = json::object();
  for (std::size_t j = 0; j < trace.dim(); ++j) {
    const auto col = trace.column(j);
    coefs[trace.parameter_names()[j]] = io::to_json(summarize(std::span<const double>(col), a.level));
  }
  json summary = {{"coefficients", coefs},
                  {"acceptance_rate", trace.metadata.at("acceptance_rate")},
                  {"proposal_scale", trace.metadata.at("proposal_scale")},
                  {"guard_rejections", trace.metadata.at("guard_rejections")},
                  {"n", design.n()},
                  {"config",
                   {{"iterations", a.iters},
                    {"burn_in", a.burnin},
                    {"thinning", a.thin},
                    {"initial_scale", a.scale},
                    {"adapt", !a.no_adapt},
                    {"seed", g.seed()}}}};
  if (g.out.empty()) {
    std::cout << io::dump_json(summary);
    return;
  }
  io::write_file(g.out + ".trace.csv", io::trace_csv(trace));
  io::write_file(g.out + ".summary.json", io::dump_json(summary));
}

// ---- mle -----------------------------------------------------------------------

struct MleArgs {
  std::string data;
  double tol = 1e-10;
  std::size_t max_iters = 10'000;
  double init = 1.0;
};

void run_mle(const Globals& g, const MleArgs& a) {
  const auto data = io::parse_counts(read_input(a.data));
  FixedPointConfig cfg;
  cfg.tolerance = a.tol;
  cfg.max_iterations = a.max_iters;
  cfg.initial_rho = a.init;
  const auto r = fixed_point_fit(data, cfg);
  if (g.format_or("json") == "csv") {
    emit(g, "rho_hat,iterations,score_residual,loglik\n" + io::format_real(r.rho_hat) + "," +
                std::to_string(r.iterations) + "," + io::format_real(r.score_residual) + "," +
                io::format_real(r.loglik) + "\n");
    return;
  }
  emit(g, io::dump_json({{"rho_hat", r.rho_hat},
                         {"iterations", r.iterations},
                         {"score_residual", r.score_residual},
                         {"loglik", r.loglik},
                         {"n", data.size()}}));
}

// ---- text ----------------------------------------------------------------------

struct TextArgs {
  std::string in;
  bool no_fold = false;
  bool keep_boilerplate = false;
};

void run_text(const Globals& g, const TextArgs& a) {
  std::string text = read_input(a.in);
  if (!a.keep_boilerplate) {
    auto stripped = strip_gutenberg_boilerplate(text);
    if (!stripped.markers_found)
      std::cerr << io::dump_json({{"warning", "gutenberg_markers_not_found"}, {"input", a.in}}, -1);
    text = std::move(stripped.body);
  }
  TokenizerRules rules;
  rules.case_folding = !a.no_fold;
  emit(g, count_words(text, rules).to_csv());
}

// ---- diag ----------------------------------------------------------------------

struct DiagArgs {
  std::vector<std::string> traces;
  std::string param = "rho";
  bool plain_variance = false;
  double frac_first = 0.1;
  double frac_last = 0.5;
};

void run_diag(const Globals& g, const DiagArgs& a) {
  std::vector<std::vector<double>> chains;
  for (const auto& path : a.traces)
    chains.push_back(io::parse_trace_csv(io::read_file(path)).column(a.param));
  GewekeOptions opts;
  opts.frac_first = a.frac_first;
  opts.frac_last = a.frac_last;
  opts.plain_variance = a.plain_variance;
  const auto report = diagnose(a.param, chains, opts);
  json j = io::to_json(report);
  j["traces"] = a.traces;

  if (!g.out.empty()) {
    for (std::size_t c = 0; c < chains.size(); ++c)
      io::write_file(g.out + ".chain" + std::to_string(c + 1) + ".progressive.csv",
                     io::progressive_mean_csv(report.progressive_means[c]));
    if (chains.size() >= 2) {
      std::size_t len = chains.front().size();
      for (const auto& c : chains) len = std::min(len, c.size());
      std::vector<std::size_t> lengths;
      constexpr std::size_t kPoints = 50;
      for (std::size_t i = 1; i <= kPoints; ++i) {
        const std::size_t t = len * i / kPoints;
        if (t >= 2 && (lengths.empty() || t != lengths.back())) lengths.push_back(t);
      }
      const auto rh = gelman_rubin_by_prefix(chains, lengths);
      std::string csv = "t,rhat\n";
      for (std::size_t i = 0; i < lengths.size(); ++i)
        csv += std::to_string(lengths[i]) + "," + io::format_real(rh[i]) + "\n";
      io::write_file(g.out + ".rhat_by_prefix.csv", csv);
    }
    io::write_file(g.out + ".diag.json", io::dump_json(j));
    return;
  }
  std::cout << io::dump_json(j);
}

// ---- study ---------------------------------------------------------------------

struct StudyArgs {
  std::string table;
  std::vector<std::string> texts;
  std::size_t chains = 3;
};

void write_table(const Globals& g, const std::string& name, const study::Table& table,
                 const json& config) {
  const fs::path dir = g.out.empty() ? fs::path(".") : fs::path(g.out);
  if (g.format_or("csv") == "json")
    io::write_file(dir / (name + ".json"), io::dump_json(table.to_json()));
  else
    io::write_file(dir / (name + ".csv"), table.to_csv());
  io::write_file(dir / (name + ".config.json"), io::dump_json(config));
}

void run_study(const Globals& g, const StudyArgs& a) {
  const std::uint64_t seed = g.seed(study::kDefaultMasterSeed);
  if (a.table == "table1") {
    const auto spec = study::table1_spec(seed, g.quick);
    write_table(g, "table1", study::run_table1(spec), study::spec_json(spec));
  } else if (a.table == "table2") {
    const auto spec = study::table2_spec(seed, g.quick);
    write_table(g, "table2", study::run_table2(spec), study::spec_json(spec));
  } else {
    if (a.texts.empty()) throw DataError("study table3 needs --texts FILE...");
    study::TextOptions opts;
    opts.seed = seed;
    opts.chains = a.chains;
    if (g.quick) {
      opts.iterations /= 10;
      opts.burn_in /= 10;
    }
    json config = {{"seed", g.seed()},
                   {"quick", g.quick},
                   {"chains", opts.chains},
                   {"iterations", opts.iterations},
                   {"burn_in", opts.burn_in},
                   {"prior", {{"a", opts.prior.a}, {"b", opts.prior.b}}},
                   {"texts", a.texts}};
    std::vector<fs::path> paths(a.texts.begin(), a.texts.end());
    write_table(g, "table3", study::run_table3(paths, opts), config);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bayesian and maximum-likelihood inference for the Yule-Simon distribution"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed_opt, "master seed (64-bit unsigned)");
  app.add_option("--out", g.out, "output path or prefix");
  app.add_flag("--quick", g.quick, "desk-scale studies: 10x fewer iterations, 5 replicates");
  app.add_option("--format", g.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  PmfArgs pmf_a;
  auto* pmf_cmd = app.add_subcommand("pmf", "evaluate the probability mass function");
  pmf_cmd->add_option("--rho", pmf_a.rho)->required();
  pmf_cmd->add_option("--k", pmf_a.k)->required()->check(CLI::PositiveNumber);
  pmf_cmd->add_flag("--log", pmf_a.log, "print log f(k; rho)");

  SampleArgs sample_a;
  auto* sample_cmd = app.add_subcommand("sample", "draw Yule-Simon variates, one per line");
  sample_cmd->add_option("--rho", sample_a.rho)->required();
  sample_cmd->add_option("--n", sample_a.n)->required();

  FitArgs fit_a;
  auto* fit_cmd = app.add_subcommand("fit", "Gibbs sampler for rho under a Gamma(a, b) prior");
  fit_cmd->add_option("--data", fit_a.data, "counts, one per line ('-' for stdin)")->required();
  fit_cmd->add_option("--a", fit_a.a, "prior shape")->capture_default_str();
  fit_cmd->add_option("--b", fit_a.b, "prior rate")->capture_default_str();
  fit_cmd->add_option("--iters", fit_a.iters)->capture_default_str();
  fit_cmd->add_option("--burnin", fit_a.burnin)->capture_default_str();
  fit_cmd->add_option("--thin", fit_a.thin)->capture_default_str();
  fit_cmd->add_option("--chains", fit_a.chains)->capture_default_str();
  fit_cmd->add_option("--level", fit_a.level, "credible level")->capture_default_str();
  fit_cmd->add_option("--init", fit_a.init, "initial rho (default: prior mean, dispersed per chain)");

  RegressArgs reg_a;
  auto* reg_cmd = app.add_subcommand("regress", "Metropolis-within-Gibbs count regression");
  reg_cmd->add_option("--data", reg_a.data, "CSV with header k,x2[,x3,...]")->required();
  reg_cmd->add_option("--iters", reg_a.iters)->capture_default_str();
  reg_cmd->add_option("--burnin", reg_a.burnin)->capture_default_str();
  reg_cmd->add_option("--thin", reg_a.thin)->capture_default_str();
  reg_cmd->add_option("--scale", reg_a.scale, "initial random-walk step")->capture_default_str();
  reg_cmd->add_flag("--no-adapt", reg_a.no_adapt, "keep --scale fixed during burn-in");
  reg_cmd->add_option("--level", reg_a.level)->capture_default_str();

  MleArgs mle_a;
  auto* mle_cmd = app.add_subcommand("mle", "fixed-point maximum likelihood estimate of rho");
  mle_cmd->add_option("--data", mle_a.data)->required();
  mle_cmd->add_option("--tol", mle_a.tol)->capture_default_str();
  mle_cmd->add_option("--max-iters", mle_a.max_iters)->capture_default_str();
  mle_cmd->add_option("--init", mle_a.init)->capture_default_str();

  TextArgs text_a;
  auto* text_cmd = app.add_subcommand("text", "word-frequency counts of a text file");
  text_cmd->add_option("--in", text_a.in)->required();
  text_cmd->add_flag("--no-fold", text_a.no_fold, "keep letter case");
  text_cmd->add_flag("--keep-boilerplate", text_a.keep_boilerplate,
                     "do not strip Project Gutenberg header/footer");

  DiagArgs diag_a;
  auto* diag_cmd = app.add_subcommand("diag", "Gelman-Rubin, Geweke and progressive means");
  diag_cmd->add_option("--traces", diag_a.traces)->required()->expected(1, -1);
  diag_cmd->add_option("--param", diag_a.param)->capture_default_str();
  diag_cmd->add_flag("--plain-variance", diag_a.plain_variance);
  diag_cmd->add_option("--first", diag_a.frac_first)->capture_default_str();
  diag_cmd->add_option("--last", diag_a.frac_last)->capture_default_str();

  StudyArgs study_a;
  auto* study_cmd = app.add_subcommand("study", "reproduce the simulation and text tables");
  study_cmd->add_option("table", study_a.table)
      ->required()
      ->check(CLI::IsMember({"table1", "table2", "table3"}));
  study_cmd->add_option("--texts", study_a.texts)->expected(1, -1);
  study_cmd->add_option("--chains", study_a.chains)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << io::dump_json({{"error", "usage_error"}, {"message", e.what()}}, -1);
    return 2;
  }

  try {
    if (*pmf_cmd) run_pmf(g, pmf_a);
    else if (*sample_cmd) run_sample(g, sample_a);
    else if (*fit_cmd) run_fit(g, fit_a);
    else if (*reg_cmd) run_regress(g, reg_a);
    else if (*mle_cmd) run_mle(g, mle_a);
    else if (*text_cmd) run_text(g, text_a);
    else if (*diag_cmd) run_diag(g, diag_a);
    else if (*study_cmd) run_study(g, study_a);
  } catch (const std::exception& e) {
    std::cerr << io::dump_json(error_json(e), -1);
    return 1;
  }
  return 0;
}
