#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "walkdet/chain.hpp"

namespace walkdet::montecarlo {

// Monte Carlo estimate of the error exponent eta from the almost-sure limit
// of -ell_N under H0.
struct ExponentEstimate {
    double eta_hat = 0.0;
    double std_err = 0.0;
    int trials = 0;
    int n = 0;
    std::vector<double> trace;  // per-trial -ell_N, in trial order
};

ExponentEstimate estimate_exponent(const MarkovChain& chain, double beta, int n, int trials,
                                   std::uint64_t seed, int threads = 0, bool keep_trace = true);

// One growing H0 observation stream, -ell_n recorded at each checkpoint.
std::vector<std::pair<int, double>> convergence_trace(const MarkovChain& chain, double beta,
                                                      const std::vector<int>& checkpoints,
                                                      std::uint64_t seed);

}  // namespace walkdet::montecarlo
