#include "walkdet/detector.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "walkdet/errors.hpp"
#include "walkdet/parallel.hpp"
#include "walkdet/rng.hpp"

namespace walkdet::detector {

namespace {

void fill_noise(Eigen::MatrixXd& y, Rng& rng) {
    for (int col = 0; col < y.cols(); ++col)
        for (int row = 0; row < y.rows(); ++row) y(row, col) = rng.normal();
}

int sample_categorical(const Eigen::VectorXd& probs, Rng& rng) {
    const double u = rng.uniform();
    double acc = 0.0;
    for (int i = 0; i < probs.size(); ++i) {
        acc += probs[i];
        if (u < acc) return i;
    }
    return static_cast<int>(probs.size()) - 1;
}

}  // namespace

Observations simulate_h0(int m, int n, std::uint64_t seed) {
    if (m < 1 || n < 1) throw SizeTooSmallError("observations need m, n >= 1");
    Observations obs;
    obs.n = n;
    obs.y.resize(m, n);
    Rng rng(seed);
    fill_noise(obs.y, rng);
    return obs;
}

Observations simulate_h1(const MarkovChain& chain, double beta, int n, std::uint64_t seed) {
    if (n < 1) throw SizeTooSmallError("observations need n >= 1");
    Observations obs;
    obs.n = n;
    obs.y.resize(chain.m(), n);
    Rng rng(seed);
    // Path first, then noise, then the signal; order is part of the
    // reproducibility contract.
    std::vector<int> path(n);
    path[0] = sample_categorical(chain.pi(), rng);
    for (int k = 1; k < n; ++k) path[k] = sample_categorical(chain.p().row(path[k - 1]), rng);
    fill_noise(obs.y, rng);
    for (int k = 0; k < n; ++k) obs.y(path[k], k) += beta;
    obs.truth = std::move(path);
    return obs;
}

LlrResult log_likelihood_ratio(const MarkovChain& chain, double beta, const Observations& obs) {
    if (obs.y.rows() != chain.m() || obs.y.cols() != obs.n)
        throw DimensionMismatchError("observation matrix does not match chain dimension");
    const int n = obs.n;
    const SpMat pt = SpMat(chain.sparse().transpose());

    Eigen::VectorXd v = chain.pi();
    double log_acc = 0.0;
    for (int step = 0; step < n; ++step) {
        if (step > 0) v = pt * v;
        // Apply D_step with its largest exponent factored into the log
        // accumulator, so arbitrarily large beta*y cannot overflow.
        const Eigen::VectorXd e = beta * obs.y.col(step);
        const double emax = e.maxCoeff();
        v = v.cwiseProduct((e.array() - emax).exp().matrix());
        log_acc += emax - 0.5 * beta * beta;
        const double s = v.maxCoeff();
        if (!(s > 0.0)) throw ConvergenceError("likelihood vector vanished");
        v /= s;
        log_acc += std::log(s);
    }
    LlrResult out;
    out.n = n;
    out.log_l = log_acc + std::log(v.sum());
    out.ell = out.log_l / n;
    return out;
}

LlrResult brute_force_llr(const MarkovChain& chain, double beta, const Observations& obs) {
    if (obs.y.rows() != chain.m() || obs.y.cols() != obs.n)
        throw DimensionMismatchError("observation matrix does not match chain dimension");
    const int m = chain.m();
    const int n = obs.n;
    if (n * std::log(static_cast<double>(m)) > std::log(1e7))
        throw TooManyPathsError("M^N exceeds 1e7");

    // Streaming log-sum-exp over every allowed path.
    double run_max = -std::numeric_limits<double>::infinity();
    double run_sum = 0.0;
    auto add_term = [&](double lt) {
        if (lt <= run_max) {
            run_sum += std::exp(lt - run_max);
        } else {
            run_sum = run_sum * std::exp(run_max - lt) + 1.0;
            run_max = lt;
        }
    };

    std::vector<int> state(n);
    std::vector<double> partial(n);  // log P(s_1..k) + beta * sum y
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
            const double base = depth == 0 ? std::log(chain.pi()[s])
                                           : partial[depth - 1] +
                                                 std::log(chain.p()(state[depth - 1], s));
            partial[depth] = base + beta * obs.y(s, depth);
            if (depth == n - 1) {
                add_term(partial[depth] - 0.5 * n * beta * beta);
                continue;
            }
            for (int j = m - 1; j >= 0; --j)
                if (chain.support(s, j)) stack.push_back({depth + 1, j});
        }
    }
    LlrResult out;
    out.n = n;
    out.log_l = run_max + std::log(run_sum);
    out.ell = out.log_l / n;
    return out;
}

Decision neyman_pearson(const LlrResult& llr, double tau) {
    return llr.ell > tau ? Decision::H1 : Decision::H0;
}

std::vector<RocPoint> estimate_roc(const MarkovChain& chain, double beta, int n, int trials,
                                   std::uint64_t seed, int threads) {
    if (trials < 10) throw SizeTooSmallError("roc needs trials >= 10");
    std::vector<double> ell0(trials), ell1(trials);
    parallel_for(static_cast<std::size_t>(trials), threads, [&](std::size_t i) {
        const auto obs0 = simulate_h0(chain.m(), n, Rng::derive(seed, i));
        ell0[i] = log_likelihood_ratio(chain, beta, obs0).ell;
        const auto obs1 = simulate_h1(chain, beta, n, Rng::derive(seed, trials + i));
        ell1[i] = log_likelihood_ratio(chain, beta, obs1).ell;
    });
    std::vector<double> sorted0 = ell0;
    std::sort(sorted0.begin(), sorted0.end());
    std::vector<RocPoint> roc;
    roc.reserve(99);
    for (int k = 1; k <= 99; ++k) {
        const std::size_t idx =
            std::min<std::size_t>(static_cast<std::size_t>(k) * trials / 100, trials - 1);
        const double tau = sorted0[idx];
        RocPoint pt;
        pt.tau = tau;
        pt.pf = static_cast<double>(std::count_if(ell0.begin(), ell0.end(),
                                                  [&](double e) { return e > tau; })) /
                trials;
        pt.pm = static_cast<double>(std::count_if(ell1.begin(), ell1.end(),
                                                  [&](double e) { return e <= tau; })) /
                trials;
        roc.push_back(pt);
    }
    return roc;
}

}  // namespace walkdet::detector
