#pragma once

// Per-observation loops shared by the samplers and the MLE.
//
// Each kernel has a serial reference and an OpenMP version. Work is cut into
// fixed blocks of kBlockSize observations, independent of the thread count;
// partial sums are formed per block and combined in block order, and random
// kernels give every block its own RNG stream keyed by (sweep key, block).
// Both versions therefore return bit-identical results for any number of
// threads.

#include <cstddef>
#include <cstdint>
#include <span>

#include "yulesimon/distribution.hpp"

namespace yulesimon::kernels {

inline constexpr std::size_t kBlockSize = 1024;

/// Below this many observations `automatic` runs the serial path.
inline constexpr std::size_t kParallelThreshold = 16 * kBlockSize;

enum class Exec { serial, parallel, automatic };

/// Sum over i of w_i = -log t_i, t_i ~ Beta(rho + 1, k_i).
double aux_sum(std::uint64_t sweep_key, double rho, std::span<const Count> k,
               Exec exec = Exec::automatic);

/// w_i = -log t_i with t_i ~ Beta(rates[i] + 1, k_i), written into w.
void aux_draw(std::uint64_t sweep_key, std::span<const double> rates,
              std::span<const Count> k, std::span<double> w,
              Exec exec = Exec::automatic);

/// Sum over i of sum_{j=1..k_i} 1 / (rho + j), the data part of the score.
double harmonic_sum(double rho, std::span<const Count> k, Exec exec = Exec::automatic);

/// Sum over i of log B(k_i, rho + 1).
double log_beta_sum(double rho, std::span<const Count> k, Exec exec = Exec::automatic);

/// Sum over i of (eta_i - exp(eta_i) w_i).
double link_sum(std::span<const double> eta, std::span<const double> w,
                Exec exec = Exec::automatic);

/// sum_{j=1..k} 1/(rho + j); direct for small k, digamma difference otherwise.
double harmonic_term(double rho, Count k);

}  // namespace yulesimon::kernels
