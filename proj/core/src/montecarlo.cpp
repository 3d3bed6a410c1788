#include "walkdet/montecarlo.hpp"

#include <algorithm>
#include <cmath>

#include "walkdet/detector.hpp"
#include "walkdet/errors.hpp"
#include "walkdet/parallel.hpp"
#include "walkdet/rng.hpp"

namespace walkdet::montecarlo {

ExponentEstimate estimate_exponent(const MarkovChain& chain, double beta, int n, int trials,
                                   std::uint64_t seed, int threads, bool keep_trace) {
    if (trials < 2) throw SizeTooSmallError("estimate_exponent needs trials >= 2");
    std::vector<double> values(trials);
    parallel_for(static_cast<std::size_t>(trials), threads, [&](std::size_t i) {
        const auto obs = detector::simulate_h0(chain.m(), n, Rng::derive(seed, i));
        values[i] = -detector::log_likelihood_ratio(chain, beta, obs).ell;
    });
    ExponentEstimate est;
    est.trials = trials;
    est.n = n;
    est.eta_hat = pairwise_sum(values.data(), values.size()) / trials;
    std::vector<double> sq(trials);
    for (int i = 0; i < trials; ++i) {
        const double d = values[i] - est.eta_hat;
        sq[i] = d * d;
    }
    const double var = pairwise_sum(sq.data(), sq.size()) / (trials - 1);
    est.std_err = std::sqrt(var / trials);
    if (keep_trace) est.trace = std::move(values);
    return est;
}

std::vector<std::pair<int, double>> convergence_trace(const MarkovChain& chain, double beta,
                                                      const std::vector<int>& checkpoints,
                                                      std::uint64_t seed) {
    for (std::size_t i = 0; i + 1 < checkpoints.size(); ++i)
        if (checkpoints[i + 1] <= checkpoints[i])
            throw SizeTooSmallError("checkpoints must be ascending");
    if (checkpoints.empty() || checkpoints.front() < 1)
        throw SizeTooSmallError("checkpoints must be positive");

    const int m = chain.m();
    const int n_max = checkpoints.back();
    const SpMat pt = SpMat(chain.sparse().transpose());
    Rng rng(seed);

    std::vector<std::pair<int, double>> out;
    Eigen::VectorXd v = chain.pi();
    Eigen::VectorXd col(m);
    double log_acc = 0.0;
    std::size_t next_cp = 0;
    for (int step = 0; step < n_max; ++step) {
        for (int row = 0; row < m; ++row) col[row] = rng.normal();
        if (step > 0) v = pt * v;
        const Eigen::VectorXd e = beta * col;
        const double emax = e.maxCoeff();
        v = v.cwiseProduct((e.array() - emax).exp().matrix());
        log_acc += emax - 0.5 * beta * beta;
        const double s = v.maxCoeff();
        if (!(s > 0.0)) throw ConvergenceError("likelihood vector vanished");
        v /= s;
        log_acc += std::log(s);
        const int n_now = step + 1;
        while (next_cp < checkpoints.size() && checkpoints[next_cp] == n_now) {
            const double log_l = log_acc + std::log(v.sum());
            out.emplace_back(n_now, -log_l / n_now);
            ++next_cp;
        }
    }
    return out;
}

}  // namespace walkdet::montecarlo
