#include "walkdet/ldp.hpp"

#include <cmath>
#include <limits>

#include "walkdet/errors.hpp"
#include "walkdet/rng.hpp"

namespace walkdet::ldp {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTMax = 64.0;  // derivative is within 1e-12 of its limit here
}

EntropyDensity::EntropyDensity(const MarkovChain& chain)
    : chain_(&chain), solver_(chain), regular_k_(chain.uniform_regular_k()) {
    if (regular_k_) {
        const double r = -std::log(static_cast<double>(*regular_k_));
        range_ = {r, r};
    } else {
        range_ = spectral::rho_extremes(chain);
    }
}

DensityPoint EntropyDensity::at(double rho) {
    if (regular_k_) {
        const double log_k = std::log(static_cast<double>(*regular_k_));
        if (std::abs(rho + log_k) <= 1e-12 * std::max(1.0, log_k)) return {log_k, 1.0};
        return {-kInf, std::nullopt};
    }
    if (rho < range_.rho_min - 1e-12 || rho > range_.rho_max + 1e-12)
        return {-kInf, std::nullopt};

    // Bisection on the nondecreasing derivative of log lambda_t, expanding
    // the bracket geometrically before refining.
    double lo = -1.0, hi = 2.0;
    while (solver_.deriv(hi) < rho && hi < kTMax) hi = std::min(2.0 * hi, kTMax);
    while (solver_.deriv(lo) > rho && lo > -kTMax) lo = std::max(2.0 * lo, -kTMax);
    if (solver_.deriv(hi) < rho) {  // rho at/above the domain edge: clamp
        return {solver_.log_lambda(kTMax) - kTMax * rho, kTMax};
    }
    if (solver_.deriv(lo) > rho) {
        return {solver_.log_lambda(-kTMax) + kTMax * rho, -kTMax};
    }
    double mid = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        mid = 0.5 * (lo + hi);
        const double g = solver_.deriv(mid);
        if (std::abs(g - rho) <= 1e-10) break;
        if (g < rho)
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= 1e-13 * std::max(1.0, std::abs(mid))) break;
    }
    return {solver_.log_lambda(mid) - mid * rho, mid};
}

double EntropyDensity::rate1(double rho) {
    const auto pt = at(rho);
    if (!std::isfinite(pt.s)) return kInf;
    return std::max(log_lambda0() - pt.s, 0.0);
}

RatePoint EntropyDensity::rate2(double rho, double xi) {
    RatePoint out;
    out.rho = rho;
    out.xi = xi;
    const double l0 = log_lambda0();
    const double i1 = rate1(rho);
    const double i = std::isfinite(i1) ? i1 + 0.5 * xi * xi : kInf;
    if (i <= l0 + 1e-12) {
        out.i_value = i;
        out.s2_value = l0 - i;
    } else {
        out.i_value = kInf;
        out.s2_value = -kInf;
    }
    return out;
}

DensityPoint entropy_density(const MarkovChain& chain, double rho) {
    return EntropyDensity(chain).at(rho);
}

double rate1(const MarkovChain& chain, double rho) { return EntropyDensity(chain).rate1(rho); }

RatePoint rate2(const MarkovChain& chain, double rho, double xi) {
    return EntropyDensity(chain).rate2(rho, xi);
}

EntropyCurve entropy_curve(const MarkovChain& chain, int interior) {
    EntropyDensity d(chain);
    EntropyCurve out;
    const auto& r = d.range();
    if (r.rho_max - r.rho_min <= 0.0) {
        const auto pt = d.at(r.rho_min);
        out.rho_grid = {r.rho_min};
        out.s_values = {pt.s};
        out.t_values = {pt.t_star.value_or(1.0)};
        return out;
    }
    std::vector<double> grid;
    grid.push_back(r.rho_min);
    for (int i = 1; i <= interior; ++i)
        grid.push_back(r.rho_min + (r.rho_max - r.rho_min) * i / (interior + 1.0));
    grid.push_back(r.rho_max);
    for (double rho : grid) {
        const auto pt = d.at(rho);
        out.rho_grid.push_back(rho);
        out.s_values.push_back(pt.s);
        out.t_values.push_back(pt.t_star.value_or(0.0));
    }
    return out;
}

EmpiricalMeasure enumerate_path_measure(const MarkovChain& chain, int n, std::uint64_t seed) {
    if (n < 1) throw SizeTooSmallError("horizon must be >= 1");
    const int m = chain.m();
    // Path count 1^T A^(n-1) 1 on the 0-1 adjacency.
    Eigen::VectorXd v = Eigen::VectorXd::Ones(m);
    Eigen::MatrixXd a01 = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if (chain.support(i, j)) a01(i, j) = 1.0;
    for (int k = 1; k < n; ++k) {
        v = a01 * v;
        if (v.sum() > 1e7) throw TooManyPathsError("more than 1e7 allowed paths");
    }
    const std::size_t total = static_cast<std::size_t>(v.sum() + 0.5);
    if (total > 10'000'000) throw TooManyPathsError("more than 1e7 allowed paths");

    EmpiricalMeasure out;
    out.n = n;
    out.points.reserve(total);
    const double sqrt_n = std::sqrt(static_cast<double>(n));

    // Depth-first over the support graph in lexicographic order; the path
    // index seeds its Gaussian so the result is schedule-independent.
    std::vector<int> state(n);
    std::vector<double> logp(n);
    std::uint64_t path_index = 0;
    struct Frame {
        int depth;
        int s;
    };
    for (int s0 = 0; s0 < m; ++s0) {
        std::vector<Frame> stack{{0, s0}};
        while (!stack.empty()) {
            auto [depth, s] = stack.back();
            stack.pop_back();
            state[depth] = s;
            logp[depth] = depth == 0 ? std::log(chain.pi()[s])
                                     : logp[depth - 1] + std::log(chain.p()(state[depth - 1], s));
            if (depth == n - 1) {
                Rng rng = Rng::substream(seed, path_index++);
                const double x = sqrt_n * rng.normal();
                out.points.emplace_back(logp[depth] / n, x / n);
                continue;
            }
            for (int j = m - 1; j >= 0; --j)
                if (chain.support(s, j)) stack.push_back({depth + 1, j});
        }
    }
    return out;
}

}  // namespace walkdet::ldp
