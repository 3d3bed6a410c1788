#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "walkdet/chain.hpp"

namespace walkdet::detector {

// M x N measurement matrix, one column per time step, unit noise variance.
// `truth` (0-based states) is present only for H1 simulations.
struct Observations {
    Eigen::MatrixXd y;
    int n = 0;
    std::optional<std::vector<int>> truth;
};

struct LlrResult {
    double ell;    // normalized log likelihood ratio, nats/step
    double log_l;  // unnormalized log L
    int n;
};

enum class Decision { H0, H1 };

Observations simulate_h0(int m, int n, std::uint64_t seed);
Observations simulate_h1(const MarkovChain& chain, double beta, int n, std::uint64_t seed);

// Renormalized matrix-product likelihood, O(M^2 N): propagates a row vector
// through pi^T D_1 P D_2 ... P D_N 1, rescaling to unit sup-norm each step
// and accumulating the log of the normalization factors.
LlrResult log_likelihood_ratio(const MarkovChain& chain, double beta, const Observations& obs);

// Exhaustive path-sum oracle via streaming log-sum-exp; M^N must be <= 1e7.
LlrResult brute_force_llr(const MarkovChain& chain, double beta, const Observations& obs);

// H1 iff ell > tau; ties decide H0.
Decision neyman_pearson(const LlrResult& llr, double tau);

struct RocPoint {
    double tau;
    double pf;
    double pm;
};

// Empirical ROC at the 99 H0 log-likelihood quantiles.
std::vector<RocPoint> estimate_roc(const MarkovChain& chain, double beta, int n, int trials,
                                   std::uint64_t seed, int threads = 0);

}  // namespace walkdet::detector
