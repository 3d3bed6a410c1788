#pragma once

#include <map>
#include <vector>

#include "walkdet/chain.hpp"
#include "walkdet/errors.hpp"

namespace walkdet::spectral {

// Perron eigenvalue with normalized left/right positive eigenvectors of a
// Hadamard power P^(t). Normalization: left^T 1 = 1 and left^T right = 1.
// For extreme |t| the eigenvalue itself can overflow a double; log_lambda is
// always finite and is what the rest of the library consumes.
struct SpectralTriple {
    double lambda;
    double log_lambda;
    Eigen::VectorXd left;
    Eigen::VectorXd right;
    double t;
};

struct RhoRange {
    double rho_min;  // minimum mean-weight simple cycle, weights log p_ij
    double rho_max;  // maximum mean-weight simple cycle
};

// Hadamard power with scale factored out: entries are
// exp(t log p_ij - log_scale), clamped away from underflow so the sparsity
// pattern survives arbitrary t in [-64, 64].
struct ScaledHadamard {
    SpMat a;
    double log_scale;
};

MarkovChain validate_chain(const Eigen::MatrixXd& p);

Eigen::MatrixXd hadamard_power(const MarkovChain& chain, double t);
ScaledHadamard scaled_hadamard(const MarkovChain& chain, double t);

// Top eigenpair of a nonnegative irreducible matrix. `t` is carried as a
// label only. log_offset is added to log_lambda (for pre-scaled inputs).
SpectralTriple perron(const SpMat& a, double t = 1.0, double log_offset = 0.0);
SpectralTriple perron(const Eigen::MatrixXd& a, double t = 1.0);

double log_lambda(const MarkovChain& chain, double t);
double log_lambda_deriv(const MarkovChain& chain, double t);
double entropy_rate(const MarkovChain& chain);
RhoRange rho_extremes(const MarkovChain& chain);
double path_count_rate(const MarkovChain& chain);

// log pi_{s_0} + sum log p_{s_k, s_{k+1}}; -inf if a transition is forbidden.
// States are 0-based.
double path_log_prob(const MarkovChain& chain, const std::vector<int>& states);

// Warm-started eigensolver bound to one chain. Repeated solves at nearby t
// (bisection, curve sweeps) reuse the previous eigenvectors as the starting
// guess, which matters on graphs with a small spectral gap.
class PerronSolver {
  public:
    explicit PerronSolver(const MarkovChain& chain) : chain_(&chain) {}

    const SpectralTriple& solve(double t);
    double log_lambda(double t) { return solve(t).log_lambda; }
    double deriv(double t);  // d/dt log lambda_t via the eigenvector formula

  private:
    const MarkovChain* chain_;
    std::map<double, SpectralTriple> cache_;
};

}  // namespace walkdet::spectral
