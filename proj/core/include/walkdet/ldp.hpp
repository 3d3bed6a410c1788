#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "walkdet/chain.hpp"
#include "walkdet/spectral.hpp"

namespace walkdet::ldp {

struct DensityPoint {
    double s;                      // nats; -inf outside the effective domain
    std::optional<double> t_star;  // minimizing Hadamard exponent, when defined
};

struct RatePoint {
    double rho;
    double xi;
    double i_value;   // in [0, log lambda_0] or +inf
    double s2_value;  // s(rho, xi); -inf where i_value is +inf
};

struct EntropyCurve {
    std::vector<double> rho_grid;
    std::vector<double> s_values;
    std::vector<double> t_values;
};

// Sampled pairs (log P(s)/N, x_s/N) over every allowed length-N path.
struct EmpiricalMeasure {
    std::vector<std::pair<double, double>> points;
    int n = 0;
    double bin_width = 0.1;
};

// s(rho) = inf_t { log lambda_t - t rho } and friends, with a warm-started
// eigensolver shared across queries. The uniform-regular walk degenerates to
// a single-point domain and is special-cased throughout.
class EntropyDensity {
  public:
    explicit EntropyDensity(const MarkovChain& chain);

    DensityPoint at(double rho);
    double rate1(double rho);             // I_1(rho) = log lambda_0 - s(rho)
    RatePoint rate2(double rho, double xi);
    const spectral::RhoRange& range() const { return range_; }
    double log_lambda0() { return solver_.log_lambda(0.0); }

  private:
    const MarkovChain* chain_;
    spectral::PerronSolver solver_;
    spectral::RhoRange range_;
    std::optional<int> regular_k_;
};

DensityPoint entropy_density(const MarkovChain& chain, double rho);
double rate1(const MarkovChain& chain, double rho);
RatePoint rate2(const MarkovChain& chain, double rho, double xi);

// 201 evenly spaced interior points plus both endpoints (endpoints by the
// limit from inside the domain). Degenerate walks give a single point.
EntropyCurve entropy_curve(const MarkovChain& chain, int interior = 201);

// Exhaustive enumeration of allowed paths; each path gets an independent
// N(0, n) Gaussian from a per-path seeded substream.
EmpiricalMeasure enumerate_path_measure(const MarkovChain& chain, int n, std::uint64_t seed);

}  // namespace walkdet::ldp
