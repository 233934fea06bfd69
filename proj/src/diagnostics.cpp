#include "yulesimon/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "yulesimon/error.hpp"

namespace yulesimon {

namespace {

struct Moments {
  double mean;
  double var;  // unbiased
};

Moments moments(std::span<const double> x) {
  double sum = 0.0;
  for (double v : x) sum += v;
  const double m = sum / static_cast<double>(x.size());
  double ss = 0.0;
  for (double v : x) ss += (v - m) * (v - m);
  return {m, x.size() > 1 ? ss / static_cast<double>(x.size() - 1) : 0.0};
}

// Variance of the segment mean: batch means with floor(sqrt(len)) batches,
// or the iid formula s^2 / len.
double mean_variance(std::span<const double> seg, bool plain) {
  if (plain) return moments(seg).var / static_cast<double>(seg.size());
  const auto batches = static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(seg.size()))));
  const std::size_t size = seg.size() / batches;
  std::vector<double> bm(batches);
  for (std::size_t b = 0; b < batches; ++b)
    bm[b] = moments(seg.subspan(b * size, size)).mean;
  return moments(bm).var / static_cast<double>(batches);
}

}  // namespace

double gelman_rubin(std::span<const std::vector<double>> chains) {
  if (chains.size() < 2) throw DomainError("Gelman-Rubin needs at least two chains");
  const std::size_t len = chains.front().size();
  if (len < 2) throw DomainError("Gelman-Rubin needs chains of length >= 2");
  for (const auto& c : chains)
    if (c.size() != len) throw DomainError("Gelman-Rubin chains must have equal length");

  const double m = static_cast<double>(chains.size());
  const double l = static_cast<double>(len);
  std::vector<double> means;
  double w = 0.0;
  for (const auto& c : chains) {
    const auto mo = moments(c);
    means.push_back(mo.mean);
    w += mo.var / m;
  }
  if (!(w > 0.0)) throw DegenerateError("Gelman-Rubin: within-chain variance is zero");
  const double b = l * moments(means).var;
  const double v = (l - 1.0) / l * w + b / l;
  return std::max(1.0, std::sqrt(v / w));
}

std::vector<double> gelman_rubin_by_prefix(std::span<const std::vector<double>> chains,
                                           std::span<const std::size_t> lengths) {
  std::vector<double> out;
  out.reserve(lengths.size());
  std::vector<std::vector<double>> prefix(chains.size());
  for (std::size_t t : lengths) {
    for (std::size_t c = 0; c < chains.size(); ++c) {
      if (t > chains[c].size()) throw DomainError("prefix longer than chain");
      prefix[c].assign(chains[c].begin(), chains[c].begin() + static_cast<std::ptrdiff_t>(t));
    }
    out.push_back(gelman_rubin(prefix));
  }
  return out;
}

double geweke(std::span<const double> trace, const GewekeOptions& opts) {
  if (!(opts.frac_first > 0.0) || !(opts.frac_last > 0.0) ||
      opts.frac_first + opts.frac_last > 1.0)
    throw DomainError("Geweke segments must be non-empty and must not overlap");
  const auto len = static_cast<double>(trace.size());
  const auto n_first = static_cast<std::size_t>(std::floor(opts.frac_first * len));
  const auto n_last = static_cast<std::size_t>(std::floor(opts.frac_last * len));
  if (n_first < 10 || n_last < 10)
    throw DomainError("Geweke segments need at least 10 samples each");

  const auto first = trace.first(n_first);
  const auto last = trace.last(n_last);
  const double var = mean_variance(first, opts.plain_variance) +
                     mean_variance(last, opts.plain_variance);
  if (!(var > 0.0)) throw DegenerateError("Geweke: a segment has zero variance");
  return (moments(first).mean - moments(last).mean) / std::sqrt(var);
}

std::vector<double> progressive_mean(std::span<const double> trace) {
  if (trace.empty()) throw DomainError("progressive mean of an empty trace");
  std::vector<double> out(trace.size());
  double sum = 0.0;
  for (std::size_t t = 0; t < trace.size(); ++t) {
    sum += trace[t];
    out[t] = sum / static_cast<double>(t + 1);
  }
  return out;
}

DiagnosticsReport diagnose(std::string parameter, std::span<const std::vector<double>> chains,
                           const GewekeOptions& opts) {
  if (chains.empty()) throw DomainError("no chains to diagnose");
  DiagnosticsReport r;
  r.parameter = std::move(parameter);
  if (chains.size() >= 2) {
    r.rhat = gelman_rubin(chains);
    r.has_rhat = true;
  }
  for (const auto& c : chains) {
    r.geweke_z.push_back(geweke(c, opts));
    r.progressive_means.push_back(progressive_mean(c));
  }
  return r;
}

}  // namespace yulesimon
