#include "walkdet/spectral.hpp"

#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <unordered_map>

namespace walkdet {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

class ChainBuilder {
  public:
    static MarkovChain build(Eigen::MatrixXd p, SpMat sp, Eigen::VectorXd pi,
                             std::optional<int> regular_k) {
        MarkovChain c;
        c.m_ = static_cast<int>(p.rows());
        c.p_ = std::move(p);
        c.sp_ = std::move(sp);
        c.pi_ = std::move(pi);
        c.regular_k_ = regular_k;
        return c;
    }
};

namespace spectral {

namespace {

std::vector<std::vector<int>> support_adjacency(const Eigen::MatrixXd& p) {
    const int m = static_cast<int>(p.rows());
    std::vector<std::vector<int>> adj(m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if (p(i, j) > 0.0) adj[i].push_back(j);
    return adj;
}

std::vector<int> bfs_levels(const std::vector<std::vector<int>>& adj, int src) {
    std::vector<int> level(adj.size(), -1);
    std::queue<int> q;
    level[src] = 0;
    q.push(src);
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int v : adj[u])
            if (level[v] < 0) {
                level[v] = level[u] + 1;
                q.push(v);
            }
    }
    return level;
}

bool strongly_connected(const std::vector<std::vector<int>>& adj) {
    const int m = static_cast<int>(adj.size());
    std::vector<std::vector<int>> rev(m);
    for (int u = 0; u < m; ++u)
        for (int v : adj[u]) rev[v].push_back(u);
    auto fwd = bfs_levels(adj, 0);
    auto bwd = bfs_levels(rev, 0);
    for (int v = 0; v < m; ++v)
        if (fwd[v] < 0 || bwd[v] < 0) return false;
    return true;
}

// Period of a strongly connected digraph: gcd of (level[u] + 1 - level[v])
// over all edges, with BFS levels from one fixed node.
int graph_period(const std::vector<std::vector<int>>& adj) {
    auto level = bfs_levels(adj, 0);
    int g = 0;
    for (int u = 0; u < static_cast<int>(adj.size()); ++u)
        for (int v : adj[u]) g = std::gcd(g, std::abs(level[u] + 1 - level[v]));
    return g == 0 ? 1 : g;
}

struct PerronWork {
    Eigen::VectorXd left;
    Eigen::VectorXd right;
    double lambda = 0.0;  // of the (scaled) input matrix
};

double rayleigh(const SpMat& a, const Eigen::VectorXd& l, const Eigen::VectorXd& r) {
    const double d = l.dot(r);
    if (std::abs(d) < 1e-300) return 0.0;
    return l.dot(a * r) / d;
}

double residual_inf(const SpMat& a, const Eigen::VectorXd& v, double lambda, bool left) {
    Eigen::VectorXd w = left ? Eigen::VectorXd(a.transpose() * v) : Eigen::VectorXd(a * v);
    return (w - lambda * v).cwiseAbs().maxCoeff();
}

void sup_normalize(Eigen::VectorXd& v) {
    if (v.sum() < 0.0) v = -v;
    const double s = v.cwiseAbs().maxCoeff();
    if (s > 0.0 && std::isfinite(s)) v /= s;
}

// Top eigenpair of a nonnegative irreducible matrix. Shifted power iteration
// (shift = max row sum, which dominates any negative eigenvalue) followed by
// inverse iteration once the estimate is in the right neighborhood; the
// latter is what keeps graphs with a tiny spectral gap inside the iteration
// budget. Falls back to pure power iteration if a factorization fails.
PerronWork perron_core(const SpMat& a, double t_label, const Eigen::VectorXd* warm_l,
                       const Eigen::VectorXd* warm_r) {
    const int m = static_cast<int>(a.rows());
    PerronWork w;
    if (m == 1) {
        w.lambda = a.coeff(0, 0);
        w.left = Eigen::VectorXd::Ones(1);
        w.right = Eigen::VectorXd::Ones(1);
        if (w.lambda <= 0.0) throw ConvergenceError("matrix has no positive entries");
        return w;
    }

    SpMat at = SpMat(a.transpose());
    double shift = 0.0;
    for (int i = 0; i < m; ++i) {
        double rs = 0.0;
        for (SpMat::InnerIterator it(a, i); it; ++it) rs += it.value();
        shift = std::max(shift, rs);
    }
    if (shift <= 0.0) throw ConvergenceError("matrix has no positive entries");

    Eigen::VectorXd r = warm_r ? *warm_r : Eigen::VectorXd::Ones(m);
    Eigen::VectorXd l = warm_l ? *warm_l : Eigen::VectorXd::Ones(m);
    sup_normalize(r);
    sup_normalize(l);

    const long cap = static_cast<long>(100.0 * m * (1.0 + std::abs(t_label))) + 100;
    long spent = 0;
    double lambda = rayleigh(a, l, r);
    if (!(lambda > 0.0)) lambda = shift;

    auto tol = [&] { return 1e-12 * std::max(lambda, 1e-300); };
    auto converged = [&] {
        return residual_inf(a, r, lambda, false) <= tol() &&
               residual_inf(a, l, lambda, true) <= tol();
    };

    // Phase 1: shifted power iteration to get into the basin.
    const long phase1 = std::min<long>(cap, 400);
    for (; spent < phase1; ++spent) {
        r = a * r + shift * r;
        sup_normalize(r);
        l = at * l + shift * l;
        sup_normalize(l);
        if (spent % 16 == 15) {
            lambda = rayleigh(a, l, r);
            if (converged()) break;
        }
    }
    lambda = rayleigh(a, l, r);
    if (!(lambda > 0.0)) lambda = shift;

    // Phase 2: inverse iteration on (sigma I - A), sigma just above lambda.
    bool lu_ok = true;
    for (int outer = 0; outer < 60 && !converged() && lu_ok && spent < cap; ++outer) {
        const double sigma = lambda * (1.0 + 1e-8) + 1e-300;
        Eigen::SparseMatrix<double> cm(m, m);
        {
            std::vector<Eigen::Triplet<double>> trips;
            trips.reserve(a.nonZeros() + m);
            for (int i = 0; i < a.outerSize(); ++i)
                for (SpMat::InnerIterator it(a, i); it; ++it)
                    trips.emplace_back(i, static_cast<int>(it.col()), -it.value());
            for (int i = 0; i < m; ++i) trips.emplace_back(i, i, sigma);
            cm.setFromTriplets(trips.begin(), trips.end());
        }
        Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
        lu.compute(cm);
        if (lu.info() != Eigen::Success) {
            lu_ok = false;
            break;
        }
        for (int inner = 0; inner < 4; ++inner) {
            r = lu.solve(r);
            sup_normalize(r);
            l = lu.transpose().solve(l);
            sup_normalize(l);
            spent += 50;
            lambda = rayleigh(a, l, r);
            if (converged()) break;
        }
    }

    // Fallback / polish: plain shifted power iteration up to the cap.
    while (!converged() && spent < cap) {
        r = a * r + shift * r;
        sup_normalize(r);
        l = at * l + shift * l;
        sup_normalize(l);
        ++spent;
        if (spent % 16 == 0) lambda = rayleigh(a, l, r);
    }
    lambda = rayleigh(a, l, r);
    if (!converged())
        throw ConvergenceError("Perron iteration did not reach residual 1e-12 (t=" +
                               std::to_string(t_label) + ")");

    const double floor_neg = -1e-8;
    for (int i = 0; i < m; ++i) {
        if (r[i] < floor_neg || l[i] < floor_neg)
            throw ConvergenceError("iteration converged to a non-Perron eigenpair");
        r[i] = std::max(r[i], std::numeric_limits<double>::min());
        l[i] = std::max(l[i], std::numeric_limits<double>::min());
    }
    w.lambda = lambda;
    w.left = std::move(l);
    w.right = std::move(r);
    return w;
}

SpectralTriple finish_triple(PerronWork w, double t, double log_offset) {
    w.left /= w.left.sum();
    w.right /= w.left.dot(w.right);
    SpectralTriple tr;
    tr.log_lambda = std::log(w.lambda) + log_offset;
    tr.lambda = std::exp(tr.log_lambda);
    tr.left = std::move(w.left);
    tr.right = std::move(w.right);
    tr.t = t;
    return tr;
}

}  // namespace

MarkovChain validate_chain(const Eigen::MatrixXd& p) {
    if (p.rows() != p.cols() || p.rows() < 1)
        throw DimensionMismatchError("transition matrix must be square and nonempty");
    const int m = static_cast<int>(p.rows());
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if (p(i, j) < 0.0)
                throw NegativeEntryError("negative entry at (" + std::to_string(i + 1) + "," +
                                         std::to_string(j + 1) + ")");
    for (int i = 0; i < m; ++i) {
        const double rs = p.row(i).sum();
        if (std::abs(rs - 1.0) > 1e-9)
            throw RowSumError("row " + std::to_string(i + 1) + " sums to " + std::to_string(rs));
    }
    auto adj = support_adjacency(p);
    if (!strongly_connected(adj))
        throw NotIrreducibleError("support graph is not strongly connected");
    if (graph_period(adj) != 1)
        throw NotAperiodicError("support graph has period " + std::to_string(graph_period(adj)));

    SpMat sp(m, m);
    {
        std::vector<Eigen::Triplet<double>> trips;
        for (int i = 0; i < m; ++i)
            for (int j : adj[i]) trips.emplace_back(i, j, p(i, j));
        sp.setFromTriplets(trips.begin(), trips.end());
    }

    // Exact uniform-regularity test (entries written as 1/K compare equal).
    std::optional<int> regular_k;
    {
        const int k0 = static_cast<int>(adj[0].size());
        bool regular = true;
        for (int i = 0; i < m && regular; ++i) {
            if (static_cast<int>(adj[i].size()) != k0) regular = false;
            for (int j : adj[i])
                if (p(i, j) != 1.0 / k0) {
                    regular = false;
                    break;
                }
        }
        if (regular) regular_k = k0;
    }

    Eigen::VectorXd pi;
    if (m == 1) {
        pi = Eigen::VectorXd::Ones(1);
    } else {
        auto w = perron_core(sp, 1.0, nullptr, nullptr);
        pi = w.left / w.left.sum();
        const double res = ((sp.transpose() * pi) - pi).cwiseAbs().maxCoeff();
        if (res > 1e-10)
            throw ConvergenceError("stationary distribution residual " + std::to_string(res));
    }
    return ChainBuilder::build(p, std::move(sp), std::move(pi), regular_k);
}

Eigen::MatrixXd hadamard_power(const MarkovChain& chain, double t) {
    const int m = chain.m();
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if (chain.support(i, j)) out(i, j) = std::pow(chain.p()(i, j), t);
    return out;
}

ScaledHadamard scaled_hadamard(const MarkovChain& chain, double t) {
    const auto& sp = chain.sparse();
    double max_exp = -kInf;
    for (int i = 0; i < sp.outerSize(); ++i)
        for (SpMat::InnerIterator it(sp, i); it; ++it)
            max_exp = std::max(max_exp, t * std::log(it.value()));
    ScaledHadamard out;
    out.log_scale = max_exp;
    out.a = sp;
    for (int i = 0; i < out.a.outerSize(); ++i)
        for (SpMat::InnerIterator it(out.a, i); it; ++it) {
            const double e = t * std::log(it.value()) - max_exp;
            it.valueRef() = std::exp(std::max(e, -700.0));
        }
    return out;
}

SpectralTriple perron(const SpMat& a, double t, double log_offset) {
    return finish_triple(perron_core(a, t, nullptr, nullptr), t, log_offset);
}

SpectralTriple perron(const Eigen::MatrixXd& a, double t) {
    SpMat sp(a.rows(), a.cols());
    std::vector<Eigen::Triplet<double>> trips;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            if (a(i, j) != 0.0) trips.emplace_back(i, j, a(i, j));
    sp.setFromTriplets(trips.begin(), trips.end());
    return perron(sp, t);
}

const SpectralTriple& PerronSolver::solve(double t) {
    auto it = cache_.find(t);
    if (it != cache_.end()) return it->second;

    const Eigen::VectorXd* warm_l = nullptr;
    const Eigen::VectorXd* warm_r = nullptr;
    if (!cache_.empty()) {
        auto lo = cache_.lower_bound(t);
        const SpectralTriple* near = nullptr;
        if (lo == cache_.end())
            near = &std::prev(lo)->second;
        else if (lo == cache_.begin())
            near = &lo->second;
        else
            near = (t - std::prev(lo)->first < lo->first - t) ? &std::prev(lo)->second
                                                              : &lo->second;
        warm_l = &near->left;
        warm_r = &near->right;
    }

    auto sh = scaled_hadamard(*chain_, t);
    auto w = perron_core(sh.a, t, warm_l, warm_r);
    auto res = cache_.emplace(t, finish_triple(std::move(w), t, sh.log_scale));
    return res.first->second;
}

double PerronSolver::deriv(double t) {
    const auto& tr = solve(t);
    auto sh = scaled_hadamard(*chain_, t);
    double num = 0.0, den = 0.0;
    for (int i = 0; i < sh.a.outerSize(); ++i)
        for (SpMat::InnerIterator it(sh.a, i); it; ++it) {
            const double v = tr.left[i] * it.value() * tr.right[it.col()];
            num += v * std::log(chain_->p()(i, it.col()));
            den += v;
        }
    return num / den;
}

double log_lambda(const MarkovChain& chain, double t) {
    PerronSolver solver(chain);
    return solver.log_lambda(t);
}

double log_lambda_deriv(const MarkovChain& chain, double t) {
    PerronSolver solver(chain);
    return solver.deriv(t);
}

double entropy_rate(const MarkovChain& chain) {
    double h = 0.0;
    const auto& sp = chain.sparse();
    for (int i = 0; i < sp.outerSize(); ++i) {
        double row = 0.0;
        for (SpMat::InnerIterator it(sp, i); it; ++it) row += it.value() * std::log(it.value());
        h -= chain.pi()[i] * row;
    }
    return std::max(h, 0.0);
}

double path_count_rate(const MarkovChain& chain) { return log_lambda(chain, 0.0); }

double path_log_prob(const MarkovChain& chain, const std::vector<int>& states) {
    if (states.empty()) throw StateOutOfRangeError("empty state sequence");
    for (int s : states)
        if (s < 0 || s >= chain.m())
            throw StateOutOfRangeError("state " + std::to_string(s) + " out of range");
    double lp = std::log(chain.pi()[states[0]]);
    for (std::size_t k = 0; k + 1 < states.size(); ++k) {
        const double p = chain.p()(states[k], states[k + 1]);
        if (p == 0.0) return -kInf;
        lp += std::log(p);
    }
    return lp;
}

namespace {

// Mean weight of a simple cycle, with a canonical arithmetic order (start at
// the smallest vertex, sum around), so that the DP route and the brute-force
// enumeration oracle produce bit-identical values for the same cycle.
double canonical_cycle_mean(std::vector<int> cycle, const Eigen::MatrixXd& logw) {
    const std::size_t n = cycle.size();
    const auto rot = std::min_element(cycle.begin(), cycle.end()) - cycle.begin();
    std::rotate(cycle.begin(), cycle.begin() + rot, cycle.end());
    double sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) sum += logw(cycle[k], cycle[(k + 1) % n]);
    return sum / static_cast<double>(n);
}

// Karp minimum mean cycle on the support graph with the given edge weights.
// Returns the canonical mean of a critical cycle recovered from the DP table.
double karp_min_mean_cycle(const MarkovChain& chain, const Eigen::MatrixXd& logw) {
    const int m = chain.m();
    auto adj = support_adjacency(chain.p());
    std::vector<std::vector<double>> d(m + 1, std::vector<double>(m, kInf));
    std::vector<std::vector<int>> par(m + 1, std::vector<int>(m, -1));
    d[0][0] = 0.0;
    for (int k = 1; k <= m; ++k)
        for (int u = 0; u < m; ++u) {
            if (!std::isfinite(d[k - 1][u])) continue;
            for (int v : adj[u]) {
                const double cand = d[k - 1][u] + logw(u, v);
                if (cand < d[k][v]) {
                    d[k][v] = cand;
                    par[k][v] = u;
                }
            }
        }
    double best = kInf;
    int best_v = -1;
    for (int v = 0; v < m; ++v) {
        if (!std::isfinite(d[m][v])) continue;
        double worst = -kInf;
        for (int k = 0; k < m; ++k)
            if (std::isfinite(d[k][v]))
                worst = std::max(worst, (d[m][v] - d[k][v]) / static_cast<double>(m - k));
        if (worst < best) {
            best = worst;
            best_v = v;
        }
    }
    // Walk the m-edge critical path back; every cycle on it is examined and
    // the smallest canonical mean wins.
    std::vector<int> path(m + 1);
    path[m] = best_v;
    for (int k = m; k >= 1; --k) path[k - 1] = par[k][path[k]];
    double best_mean = kInf;
    std::vector<int> stack;
    std::vector<int> pos(m, -1);
    for (int k = 0; k <= m; ++k) {
        const int v = path[k];
        if (pos[v] >= 0) {
            std::vector<int> cycle(stack.begin() + pos[v], stack.end());
            best_mean = std::min(best_mean, canonical_cycle_mean(std::move(cycle), logw));
            for (std::size_t i = pos[v] + 1; i < stack.size(); ++i) pos[stack[i]] = -1;
            stack.resize(pos[v] + 1);
        } else {
            pos[v] = static_cast<int>(stack.size());
            stack.push_back(v);
        }
    }
    return best_mean;
}

}  // namespace

RhoRange rho_extremes(const MarkovChain& chain) {
    const int m = chain.m();
    Eigen::MatrixXd logw = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if (chain.support(i, j)) logw(i, j) = std::log(chain.p()(i, j));
    RhoRange out;
    out.rho_min = karp_min_mean_cycle(chain, logw);
    out.rho_max = -karp_min_mean_cycle(chain, -logw);
    return out;
}

}  // namespace spectral
}  // namespace walkdet
