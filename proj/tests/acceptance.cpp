// Acceptance gate: one line per criterion, nonzero exit if any fail.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "walkdet/bounds.hpp"
#include "walkdet/detector.hpp"
#include "walkdet/graphs.hpp"
#include "walkdet/io.hpp"
#include "walkdet/ldp.hpp"
#include "walkdet/montecarlo.hpp"
#include "walkdet/spectral.hpp"

using namespace walkdet;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int num, bool ok, const std::string& what, const std::string& detail = "") {
    std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << num << ": " << what;
    if (!detail.empty()) std::cout << " (" << detail << ")";
    std::cout << std::endl;
    if (!ok) ++failures;
}

// Documented default benchmark instances.
constexpr double kRggRadius = 0.055;
constexpr int kWsK = 30;
constexpr double kWsP = 0.1;

MarkovChain bench_cycle() { return graphs::uniform_walk_chain(graphs::gen_cycle(101)); }
MarkovChain bench_grid() { return graphs::uniform_walk_chain(graphs::gen_grid(32, 32, true)); }
MarkovChain bench_rgg() {
    return graphs::uniform_walk_chain(graphs::gen_rgg(1000, kRggRadius, 0), 1e-6);
}
MarkovChain bench_ws() {
    return graphs::uniform_walk_chain(graphs::gen_watts_strogatz(1000, kWsK, kWsP, 0), 1e-6);
}

MarkovChain regular_chain(int k) {
    // Uniform walk on an aperiodic K-regular support.
    if (k == 2) return bench_cycle();
    const int m = 2 * k + 1;
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(m, m);
    // Ring with self loop and (k-2) extra forward chords: k nonzeros per row.
    for (int i = 0; i < m; ++i) {
        p(i, i) = 1.0 / k;
        for (int d = 1; d <= k - 1; ++d) p(i, (i + d) % m) = 1.0 / k;
    }
    return spectral::validate_chain(p);
}

void criterion1() {
    auto t0 = std::chrono::steady_clock::now();
    const double h_cycle = spectral::entropy_rate(bench_cycle());
    const double h_grid = spectral::entropy_rate(bench_grid());
    const double h_rgg = spectral::entropy_rate(bench_rgg());
    const double h_ws = spectral::entropy_rate(bench_ws());
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::ostringstream d;
    d.precision(4);
    d << "cycle " << h_cycle << ", grid " << h_grid << ", rgg " << h_rgg << ", ws " << h_ws
      << ", " << secs << " s";
    const bool ok = std::abs(h_cycle - std::log(2.0)) <= 1e-6 &&
                    std::abs(h_grid - 1.58) <= 0.01 && std::abs(h_rgg - 2.09) <= 0.3 &&
                    std::abs(h_ws - 3.41) <= 0.3 && secs < 5.0;
    report(1, ok, "benchmark entropy rates", d.str());
}

void criterion2() {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    double worst = 0.0;
    for (int k : {2, 3, 4}) {
        auto c = regular_chain(k);
        bounds::PhysicsBound pb(c, /*force_parametric=*/true);
        const double lo = std::sqrt(2.0 * std::log(static_cast<double>(k)));
        for (int i = 1; i <= 100; ++i) {
            const double beta = lo + (10.0 - lo) * i / 100.0;
            const double diff =
                std::abs(pb.lower(beta) - bounds::physics_lower_regular(k, beta));
            worst = std::max(worst, diff);
            if (diff > 1e-10) ok = false;
        }
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::ostringstream d;
    d << "max |parametric - closed form| = " << worst << ", " << secs << " s";
    report(2, ok && secs < 1.0, "regular-graph bound equivalence", d.str());
}

void criterion3() {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::string note;
    const std::vector<std::pair<std::string, MarkovChain>> chains = {
        {"cycle", bench_cycle()}, {"grid", bench_grid()}, {"rgg", bench_rgg()},
        {"ws", bench_ws()}};
    for (const auto& [name, c] : chains) {
        bounds::PhysicsBound pb(c);
        const double bt = pb.threshold();
        for (double f : {0.0, 0.25, 0.5, 0.75, 0.999})
            if (pb.lower(f * bt) != 0.0) { ok = false; note = name + " nonzero below"; }
        if (pb.lower(bt + 1e-7) >= 1e-6) { ok = false; note = name + " jump at threshold"; }
        double prev = 0.0;
        for (int i = 1; i <= 20; ++i) {
            const double beta = bt + (8.0 - bt) * i / 20.0;
            const double v = pb.lower(beta);
            if (!(v > 0.0) || v < prev - 1e-12) { ok = false; note = name + " not increasing"; }
            prev = v;
        }
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::ostringstream d;
    d << note << (note.empty() ? "" : ", ") << secs << " s";
    report(3, ok && secs < 30.0, "phase-transition shape on benchmarks", d.str());
}

void criterion4() {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    double worst = 0.0;
    Rng rng(2024);
    for (int rep = 0; rep < 50; ++rep) {
        const int m = 2 + static_cast<int>(rng.uniform_index(3));
        const int n = 2 + static_cast<int>(rng.uniform_index(7));
        auto c = spectral::validate_chain(oracles::random_chain_matrix(m, rng));
        const double beta = 0.2 + 2.5 * rng.uniform();
        auto obs = (rep % 2) ? detector::simulate_h1(c, beta, n, rng.next_u64())
                             : detector::simulate_h0(m, n, rng.next_u64());
        auto fast = detector::log_likelihood_ratio(c, beta, obs);
        auto slow = detector::brute_force_llr(c, beta, obs);
        const double rel =
            std::abs(fast.log_l - slow.log_l) / std::max(1.0, std::abs(slow.log_l));
        worst = std::max(worst, rel);
        if (rel > 1e-9) ok = false;
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::ostringstream d;
    d << "max rel err " << worst << ", " << secs << " s";
    report(4, ok && secs < 10.0, "likelihood oracle equivalence", d.str());
}

void criterion5() {
    auto t0 = std::chrono::steady_clock::now();
    auto c = bench_cycle();
    bounds::PhysicsBound pb(c);
    bool ok = true;
    std::ostringstream d;
    d.precision(4);
    for (double beta : {1.5, 2.0, 2.5, 3.0}) {
        auto est = montecarlo::estimate_exponent(c, beta, 2000, 200, 5, 0, false);
        const double lb = pb.lower(beta);
        const double sum_lb = bounds::sum_detector_lower(beta, c.m());
        const double slack = 4.0 * est.std_err;
        if (est.eta_hat < lb - slack || est.eta_hat > 0.5 * beta * beta + slack ||
            est.eta_hat < sum_lb - slack)
            ok = false;
        d << "b=" << beta << " eta=" << est.eta_hat << " in [" << lb << "," << 0.5 * beta * beta
          << "] ";
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    d << secs << " s";
    report(5, ok && secs < 300.0, "exponent sandwich on cycle-101", d.str());
}

void criterion6() {
    auto t0 = std::chrono::steady_clock::now();
    Eigen::MatrixXd one(1, 1);
    one << 1.0;
    auto c = spectral::validate_chain(one);
    bool ok = true;
    for (double beta : {0.5, 1.0, 2.0}) {
        auto est = montecarlo::estimate_exponent(c, beta, 10000, 100, 6, 0, false);
        if (std::abs(est.eta_hat - 0.5 * beta * beta) > 4.0 * est.std_err) ok = false;
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report(6, ok && secs < 30.0, "single-state analytic exponent",
           std::to_string(secs) + " s");
}

void criterion7() {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::string note;

    Eigen::MatrixXd p2(2, 2);
    p2 << 0.9, 0.1, 0.5, 0.5;
    Rng rng(404);
    std::vector<MarkovChain> chains;
    chains.push_back(spectral::validate_chain(p2));
    chains.push_back(spectral::validate_chain(oracles::random_chain_matrix(5, rng)));
    for (auto& c : chains) {
        for (double t : {-3.0, -1.0, 0.0, 0.5, 1.0, 2.0, 4.0}) {
            const double h = 1e-5;
            const double fd =
                (spectral::log_lambda(c, t + h) - spectral::log_lambda(c, t - h)) / (2.0 * h);
            const double an = spectral::log_lambda_deriv(c, t);
            if (std::abs(an - fd) > 1e-6 * std::max(1.0, std::abs(fd))) {
                ok = false;
                note = "derivative mismatch";
            }
        }
        const double hh = spectral::entropy_rate(c);
        ldp::EntropyDensity density(c);
        if (std::abs(density.at(-hh).s - hh) > 1e-8) { ok = false; note = "s(-H) != H"; }
        const double eps = 1e-5;
        const double slope =
            (density.at(-hh + eps).s - density.at(-hh - eps).s) / (2.0 * eps);
        if (std::abs(slope + 1.0) > 1e-4) { ok = false; note = "s'(-H) != -1"; }
        spectral::PerronSolver solver(c);
        for (double a = -6.0; a < 6.0; a += 1.0) {
            const double mid = solver.log_lambda(a + 0.5);
            if (mid > 0.5 * (solver.log_lambda(a) + solver.log_lambda(a + 1.0)) + 1e-9) {
                ok = false;
                note = "convexity violated";
            }
        }
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report(7, ok && secs < 10.0, "derivative and duality suite",
           note.empty() ? std::to_string(secs) + " s" : note);
}

void criterion8() {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    Rng rng(808);
    for (int rep = 0; rep < 100; ++rep) {
        const int m = 2 + static_cast<int>(rng.uniform_index(7));
        Eigen::MatrixXd p = oracles::random_chain_matrix(m, rng);
        auto c = spectral::validate_chain(p);
        auto fast = spectral::rho_extremes(c);
        auto slow = oracles::enumerate_cycle_extremes(p);
        if (fast.rho_min != slow.min_mean || fast.rho_max != slow.max_mean) ok = false;
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report(8, ok && secs < 30.0, "mean-cycle oracle, exact on 100 random chains",
           std::to_string(secs) + " s");
}

void criterion9() {
    auto t0 = std::chrono::steady_clock::now();
    auto c = graphs::uniform_walk_chain(graphs::gen_cycle(3));
    const int n = 12;
    const double delta = 0.1;
    auto meas = ldp::enumerate_path_measure(c, n, 909);
    ldp::EntropyDensity density(c);
    const double l0 = density.log_lambda0();
    const double rho = density.range().rho_min;  // single-point domain

    std::map<int, int> bins;
    for (const auto& [r, xi] : meas.points) bins[static_cast<int>(std::floor(xi / delta))]++;
    bool ok = true;
    double worst = 0.0;
    int used = 0;
    for (const auto& [bin, count] : bins) {
        if (count < 100) continue;
        const double xic = (bin + 0.5) * delta;
        const auto rp = density.rate2(rho, xic);
        if (!std::isfinite(rp.s2_value)) continue;
        const double lhs = std::log(static_cast<double>(count)) / n - l0;
        const double err = std::abs(lhs - (rp.s2_value - l0));
        worst = std::max(worst, err);
        ++used;
        if (err > 0.25) ok = false;
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::ostringstream d;
    d << used << " bins, worst gap " << worst << " nats, " << secs << " s";
    report(9, ok && used >= 3 && secs < 30.0, "empirical path-measure LDP on the triangle",
           d.str());
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run(const std::string& cmd) { return std::system(cmd.c_str()); }

void criterion10() {
    const std::string cli = WALKDET_CLI_PATH;
    const fs::path dir = fs::temp_directory_path() / "walkdet_acceptance";
    fs::create_directories(dir);
    bool ok = true;
    std::string note;

    auto check_pair = [&](const std::string& what, const std::string& cmd_a,
                          const fs::path& out_a, const std::string& cmd_b,
                          const fs::path& out_b) {
        if (run(cmd_a) != 0 || run(cmd_b) != 0) {
            ok = false;
            note = what + " exited nonzero";
            return;
        }
        if (slurp(out_a) != slurp(out_b)) {
            ok = false;
            note = what + " not byte-identical";
        }
    };

    const auto a = dir / "a", b = dir / "b";
    check_pair("gen-graph rgg",
               cli + " gen-graph rgg --n 200 --radius 0.12 --seed 5 -o " + a.string() +
                   " > /dev/null",
               a,
               cli + " gen-graph rgg --n 200 --radius 0.12 --seed 5 -o " + b.string() +
                   " > /dev/null",
               b);
    check_pair("analyze", cli + " analyze --gen cycle:101 -o " + a.string(), a,
               cli + " analyze --gen cycle:101 -o " + b.string(), b);
    check_pair("simulate across worker counts",
               "WALKDET_THREADS=1 " + cli +
                   " simulate --gen cycle:11 --beta-min 1 --beta-max 2 --step 0.5 --n 300 "
                   "--trials 24 --seed 3 -o " +
                   a.string(),
               a,
               "WALKDET_THREADS=4 " + cli +
                   " simulate --gen cycle:11 --beta-min 1 --beta-max 2 --step 0.5 --n 300 "
                   "--trials 24 --seed 3 -o " +
                   b.string(),
               b);
    check_pair("roc across worker counts",
               "WALKDET_THREADS=1 " + cli +
                   " roc --gen cycle:11 --beta 1.5 --n 100 --trials 40 --seed 9 -o " +
                   a.string(),
               a,
               "WALKDET_THREADS=3 " + cli +
                   " roc --gen cycle:11 --beta 1.5 --n 100 --trials 40 --seed 9 -o " +
                   b.string(),
               b);
    report(10, ok, "seeded commands byte-identical across runs and workers", note);
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    if (failures) {
        std::cout << failures << " criteria failed" << std::endl;
        return 1;
    }
    std::cout << "all criteria passed" << std::endl;
    return 0;
}
