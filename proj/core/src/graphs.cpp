#include "walkdet/graphs.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>

#include "walkdet/errors.hpp"
#include "walkdet/rng.hpp"
#include "walkdet/spectral.hpp"

namespace walkdet::graphs {

namespace {

Graph from_undirected_pairs(int m, const std::set<std::pair<int, int>>& und,
                            const std::vector<int>& loops) {
    Graph g;
    g.m = m;
    g.directed = false;
    for (const auto& [a, b] : und) {
        g.edges.emplace_back(a, b);
        g.edges.emplace_back(b, a);
    }
    for (int v : loops) g.edges.emplace_back(v, v);
    std::sort(g.edges.begin(), g.edges.end());
    return g;
}

bool connected_undirected(int m, const std::set<std::pair<int, int>>& und) {
    if (m == 0) return false;
    std::vector<std::vector<int>> adj(m);
    for (const auto& [a, b] : und) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::vector<char> seen(m, 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    int count = 1;
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int v : adj[u])
            if (!seen[v]) {
                seen[v] = 1;
                ++count;
                q.push(v);
            }
    }
    return count == m;
}

}  // namespace

Graph gen_cycle(int n) {
    if (n < 3) throw SizeTooSmallError("cycle needs n >= 3");
    std::set<std::pair<int, int>> und;
    for (int i = 0; i < n; ++i) und.insert({std::min(i, (i + 1) % n), std::max(i, (i + 1) % n)});
    return from_undirected_pairs(n, und, {});
}

Graph gen_grid(int w, int h, bool self_loops) {
    if (w < 2 || h < 2) throw SizeTooSmallError("grid needs w, h >= 2");
    std::set<std::pair<int, int>> und;
    auto id = [w](int r, int c) { return r * w + c; };
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c) {
            if (c + 1 < w) und.insert({id(r, c), id(r, c + 1)});
            if (r + 1 < h) und.insert({id(r, c), id(r + 1, c)});
        }
    std::vector<int> loops;
    if (self_loops)
        for (int v = 0; v < w * h; ++v) loops.push_back(v);
    return from_undirected_pairs(w * h, und, loops);
}

Graph gen_rgg(int n, double radius, std::uint64_t seed) {
    if (n < 2) throw SizeTooSmallError("rgg needs n >= 2");
    radius = std::min(std::max(radius, 1e-9), 1.0);
    for (std::uint64_t attempt = 0; attempt < 100; ++attempt) {
        Rng rng = Rng::substream(seed, attempt);
        std::vector<double> x(n), y(n);
        for (int i = 0; i < n; ++i) {
            x[i] = rng.uniform();
            y[i] = rng.uniform();
        }
        std::set<std::pair<int, int>> und;
        const double r2 = radius * radius;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                const double dx = x[i] - x[j], dy = y[i] - y[j];
                if (dx * dx + dy * dy <= r2) und.insert({i, j});
            }
        if (connected_undirected(n, und)) return from_undirected_pairs(n, und, {});
    }
    throw DisconnectedError("rgg: no connected instance within 100 attempts");
}

Graph gen_watts_strogatz(int n, int k, double p_rewire, std::uint64_t seed) {
    if (n < 3) throw SizeTooSmallError("watts-strogatz needs n >= 3");
    if (k < 2 || k % 2 != 0 || k >= n)
        throw SizeTooSmallError("watts-strogatz needs even k with 2 <= k < n");
    for (std::uint64_t attempt = 0; attempt < 100; ++attempt) {
        Rng rng = Rng::substream(seed, attempt);
        std::set<std::pair<int, int>> und;
        auto key = [](int a, int b) { return std::pair(std::min(a, b), std::max(a, b)); };
        for (int i = 0; i < n; ++i)
            for (int j = 1; j <= k / 2; ++j) und.insert(key(i, (i + j) % n));
        // Rewire each clockwise lattice edge with probability p_rewire.
        for (int j = 1; j <= k / 2; ++j)
            for (int i = 0; i < n; ++i) {
                const int old_to = (i + j) % n;
                if (rng.uniform() >= p_rewire) continue;
                int to = static_cast<int>(rng.uniform_index(n));
                int guard = 0;
                while ((to == i || und.count(key(i, to))) && guard++ < 8 * n)
                    to = static_cast<int>(rng.uniform_index(n));
                if (to == i || und.count(key(i, to))) continue;
                und.erase(key(i, old_to));
                und.insert(key(i, to));
            }
        if (connected_undirected(n, und)) return from_undirected_pairs(n, und, {});
    }
    throw DisconnectedError("watts-strogatz: no connected instance within 100 attempts");
}

MarkovChain uniform_walk_chain(const Graph& g, double lazy) {
    if (g.m < 1) throw SizeTooSmallError("empty graph");
    if (lazy < 0.0 || lazy >= 1.0) throw SizeTooSmallError("lazy weight must be in [0, 1)");
    std::vector<std::set<int>> out(g.m);
    for (const auto& [a, b] : g.edges) {
        if (a < 0 || a >= g.m || b < 0 || b >= g.m)
            throw StateOutOfRangeError("edge endpoint out of range");
        out[a].insert(b);
    }
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(g.m, g.m);
    for (int i = 0; i < g.m; ++i) {
        if (out[i].empty()) throw NotIrreducibleError("node with no outgoing edges");
        const double w = (1.0 - lazy) / static_cast<double>(out[i].size());
        for (int j : out[i]) p(i, j) += w;
        p(i, i) += lazy;
    }
    return spectral::validate_chain(p);
}

}  // namespace walkdet::graphs
