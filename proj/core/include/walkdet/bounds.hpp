#pragma once

#include <optional>
#include <vector>

#include "walkdet/chain.hpp"
#include "walkdet/spectral.hpp"

namespace walkdet::bounds {

struct ParametricPoint {
    double t;
    double beta_t;
    double chi;
    double rho_t;
};

struct ExponentBounds {
    double beta;
    double genie_ub;
    double sum_lb;
    double physics_lb;
    double threshold_beta;
    double phi_tilde;  // beta^2/2 - physics_lb
};

double genie_upper(double beta);
double sum_detector_lower(double beta, int m);
double threshold_beta(const MarkovChain& chain);

// Closed form for the uniform walk on a K-regular graph.
double physics_lower_regular(int k, double beta);

// Parametric lower bound machinery. Construction is cheap; the 512-point
// t-grid used for bracketing and all eigensolves are built lazily and cached,
// so sweeping a beta grid reuses the work.
class PhysicsBound {
  public:
    explicit PhysicsBound(const MarkovChain& chain, bool force_parametric = false);

    double threshold() const { return threshold_; }
    double entropy() const { return h_; }
    ParametricPoint curve(double t);
    double lower(double beta);

    static constexpr double kTFloor = 1e-6;

  private:
    void ensure_grid();

    const MarkovChain* chain_;
    spectral::PerronSolver solver_;
    double h_;
    double threshold_;
    std::optional<int> regular_k_;
    std::vector<double> t_grid_;
    std::vector<double> beta_grid_;
};

ParametricPoint parametric_curve(const MarkovChain& chain, double t);
double physics_lower(const MarkovChain& chain, double beta);

ExponentBounds all_bounds(const MarkovChain& chain, double beta);
ExponentBounds all_bounds(PhysicsBound& pb, const MarkovChain& chain, double beta);

}  // namespace walkdet::bounds
