#include "walkdet/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "walkdet/errors.hpp"

namespace walkdet::bounds {

double genie_upper(double beta) { return 0.5 * beta * beta; }

double sum_detector_lower(double beta, int m) { return 0.5 * beta * beta / m; }

double threshold_beta(const MarkovChain& chain) {
    return std::sqrt(2.0 * spectral::entropy_rate(chain));
}

double physics_lower_regular(int k, double beta) {
    const double log_k = std::log(static_cast<double>(k));
    const double th = std::sqrt(2.0 * log_k);
    if (beta <= th) return 0.0;
    return 0.5 * beta * beta - beta * th + log_k;
}

PhysicsBound::PhysicsBound(const MarkovChain& chain, bool force_parametric)
    : chain_(&chain), solver_(chain) {
    h_ = spectral::entropy_rate(chain);
    threshold_ = std::sqrt(2.0 * h_);
    if (!force_parametric) regular_k_ = chain.uniform_regular_k();
}

ParametricPoint PhysicsBound::curve(double t) {
    if (!(t > kTFloor * (1.0 - 1e-9)) || t > 1.0)
        throw InversionError("parametric t must lie in (1e-6, 1]");
    ParametricPoint out;
    out.t = t;
    const double ll = solver_.log_lambda(t);
    out.rho_t = solver_.deriv(t);
    const double arg = std::max(ll - t * out.rho_t, 0.0);  // s(rho_t) >= 0
    out.beta_t = std::sqrt(2.0 * arg) / t;
    out.chi = (1.0 - 2.0 * t) / (t * t) * ll - (1.0 - t) / t * out.rho_t;
    return out;
}

void PhysicsBound::ensure_grid() {
    if (!t_grid_.empty()) return;
    constexpr int kGrid = 512;
    t_grid_.reserve(kGrid);
    beta_grid_.reserve(kGrid);
    // Geometric from t=1 down to the floor; beta_t grows roughly like 1/t.
    for (int i = 0; i < kGrid; ++i) {
        const double t = std::pow(kTFloor, static_cast<double>(i) / (kGrid - 1));
        t_grid_.push_back(t);
        beta_grid_.push_back(curve(t).beta_t);
    }
}

double PhysicsBound::lower(double beta) {
    if (beta < 0.0) throw InversionError("beta must be nonnegative");
    if (beta <= threshold_) return 0.0;
    if (regular_k_) return physics_lower_regular(*regular_k_, beta);
    ensure_grid();
    // Just above the threshold the root sits at t ~ 1; the eigensolve route
    // and the entropy-rate route can disagree by rounding, so clamp.
    if (beta <= beta_grid_.front()) return std::max(curve(1.0).chi, 0.0);

    // t -> beta_t is onto [sqrt(2H), inf) but need not be injective; scan
    // for every bracket and keep the smallest chi,
    // which preserves validity of the lower bound under multiple roots.
    double best_chi = std::numeric_limits<double>::infinity();
    bool found = false;
    for (std::size_t i = 0; i + 1 < t_grid_.size(); ++i) {
        const double fa = beta_grid_[i] - beta;
        const double fb = beta_grid_[i + 1] - beta;
        if (fa == 0.0) {
            best_chi = std::min(best_chi, curve(t_grid_[i]).chi);
            found = true;
            continue;
        }
        if (fa * fb > 0.0) continue;
        // The cached grid descends in t; orient the bracket ascending.
        double ta = t_grid_[i + 1], tb = t_grid_[i];
        double sa = fb;
        for (int it = 0; it < 100; ++it) {
            const double tm = 0.5 * (ta + tb);
            const double fm = curve(tm).beta_t - beta;
            if (fm == 0.0) {
                ta = tb = tm;
                break;
            }
            if ((fm > 0.0) == (sa > 0.0)) {
                ta = tm;
                sa = fm;
            } else {
                tb = tm;
            }
            if (tb - ta <= 1e-12 * std::max(1e-3, ta)) break;
        }
        best_chi = std::min(best_chi, curve(0.5 * (ta + tb)).chi);
        found = true;
    }
    if (!found) {
        // beta beyond the representable parametric range: fall back to the
        // steepest cached point, still a valid (if loose) lower bound.
        return std::max(curve(t_grid_.back()).chi, 0.0);
    }
    return std::max(best_chi, 0.0);
}

ParametricPoint parametric_curve(const MarkovChain& chain, double t) {
    return PhysicsBound(chain).curve(t);
}

double physics_lower(const MarkovChain& chain, double beta) {
    return PhysicsBound(chain).lower(beta);
}

ExponentBounds all_bounds(PhysicsBound& pb, const MarkovChain& chain, double beta) {
    ExponentBounds out;
    out.beta = beta;
    out.genie_ub = genie_upper(beta);
    out.sum_lb = sum_detector_lower(beta, chain.m());
    out.physics_lb = pb.lower(beta);
    out.threshold_beta = pb.threshold();
    out.phi_tilde = out.genie_ub - out.physics_lb;
    return out;
}

ExponentBounds all_bounds(const MarkovChain& chain, double beta) {
    PhysicsBound pb(chain);
    return all_bounds(pb, chain, beta);
}

}  // namespace walkdet::bounds
