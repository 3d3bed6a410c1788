// walkdet: graph generation, spectral analysis, error-exponent bounds,
// Monte Carlo exponent estimation, likelihood-ratio detection and ROC
// sweeps for random walks observed in Gaussian noise.
//
// Exit codes: 0 success, 2 usage, 3 domain/convergence failure,
// 4 data mismatch.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "walkdet/bounds.hpp"
#include "walkdet/detector.hpp"
#include "walkdet/errors.hpp"
#include "walkdet/graphs.hpp"
#include "walkdet/io.hpp"
#include "walkdet/ldp.hpp"
#include "walkdet/montecarlo.hpp"
#include "walkdet/spectral.hpp"

using json = nlohmann::ordered_json;
using namespace walkdet;

namespace {

struct ChainArgs {
    std::string chain_file;
    std::string graph_file;
    std::string gen_spec;
    bool no_lazy = false;
};

void add_chain_options(CLI::App* cmd, ChainArgs& args) {
    auto* a = cmd->add_option("--chain", args.chain_file, "Transition matrix file");
    auto* b = cmd->add_option("--graph", args.graph_file, "Edge-list file (uniform walk)");
    auto* c = cmd->add_option("--gen", args.gen_spec,
                              "Generator spec: cycle:N | grid:WxH | rgg:N:RADIUS:SEED | "
                              "ws:N:K:P:SEED");
    a->excludes(b)->excludes(c);
    b->excludes(c);
    cmd->add_flag("--no-lazy", args.no_lazy,
                  "Fail on periodic support instead of adding a 1e-6 lazy self-loop");
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    out.push_back(cur);
    return out;
}

[[noreturn]] void bad_spec(const std::string& spec) {
    throw CLI::ValidationError("--gen", "malformed generator spec: " + spec);
}

// Strict numeric parsing: the whole token must be consumed.
template <typename T>
T parse_num(const std::string& tok, const std::string& spec) {
    std::size_t pos = 0;
    T v{};
    try {
        if constexpr (std::is_same_v<T, int>)
            v = std::stoi(tok, &pos);
        else if constexpr (std::is_same_v<T, std::uint64_t>)
            v = std::stoull(tok, &pos);
        else
            v = std::stod(tok, &pos);
    } catch (const std::exception&) {
        bad_spec(spec);
    }
    if (pos != tok.size()) bad_spec(spec);
    return v;
}

graphs::Graph graph_from_spec(const std::string& spec) {
    auto parts = split(spec, ':');
    const std::string& kind = parts[0];
    if (kind == "cycle" && parts.size() == 2)
        return graphs::gen_cycle(parse_num<int>(parts[1], spec));
    if (kind == "grid" && parts.size() == 2) {
        auto wh = split(parts[1], 'x');
        if (wh.size() != 2) bad_spec(spec);
        return graphs::gen_grid(parse_num<int>(wh[0], spec), parse_num<int>(wh[1], spec),
                                /*self_loops=*/true);
    }
    if (kind == "rgg" && parts.size() == 4)
        return graphs::gen_rgg(parse_num<int>(parts[1], spec), parse_num<double>(parts[2], spec),
                               parse_num<std::uint64_t>(parts[3], spec));
    if (kind == "ws" && parts.size() == 5)
        return graphs::gen_watts_strogatz(parse_num<int>(parts[1], spec),
                                          parse_num<int>(parts[2], spec),
                                          parse_num<double>(parts[3], spec),
                                          parse_num<std::uint64_t>(parts[4], spec));
    bad_spec(spec);
}

MarkovChain chain_from_graph(const graphs::Graph& g, bool no_lazy) {
    try {
        return graphs::uniform_walk_chain(g);
    } catch (const NotAperiodicError&) {
        if (no_lazy) throw;
        std::cerr << "warning: periodic support, adding lazy self-loop weight 1e-6\n";
        return graphs::uniform_walk_chain(g, 1e-6);
    }
}

MarkovChain load_chain(const ChainArgs& args) {
    if (!args.chain_file.empty()) return spectral::validate_chain(io::load_matrix(args.chain_file));
    if (!args.graph_file.empty())
        return chain_from_graph(io::load_edge_list(args.graph_file), args.no_lazy);
    if (!args.gen_spec.empty()) return chain_from_graph(graph_from_spec(args.gen_spec), args.no_lazy);
    throw CLI::ValidationError("chain source", "one of --chain/--graph/--gen is required");
}

int default_threads() {
    if (const char* env = std::getenv("WALKDET_THREADS")) return std::atoi(env);
    return 0;
}

std::vector<double> beta_grid(double lo, double hi, double step) {
    if (step <= 0.0 || hi < lo) throw CLI::ValidationError("beta grid", "need step > 0, max >= min");
    std::vector<double> out;
    for (int i = 0;; ++i) {
        const double b = lo + i * step;
        if (b > hi + 1e-12) break;
        out.push_back(b);
    }
    return out;
}

void emit_json(const json& j, const std::string& out) {
    if (out.empty() || out == "-") {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream f(out);
        if (!f) throw IoError("cannot open " + out + " for writing");
        f << j.dump(2) << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Random-walk detection in Gaussian noise: spectral analysis, "
                 "error-exponent bounds, Monte Carlo estimation"};
    app.require_subcommand(1);

    // gen-graph
    auto* gen = app.add_subcommand("gen-graph", "Generate a benchmark graph edge list");
    std::string gen_type, gen_out;
    int gn = 101, gw = 32, gh = 32, gk = 30;
    double gp = 0.1, gradius = 0.055;
    std::uint64_t gseed = 0;
    bool no_self_loops = false;
    gen->set_help_flag("--help", "Print help");  // frees -h for the grid height
    gen->add_option("type", gen_type, "cycle | grid | rgg | ws")->required();
    gen->add_option("--n", gn, "Node count (cycle, rgg, ws)");
    gen->add_option("--w", gw, "Grid width");
    gen->add_option("--h", gh, "Grid height");
    gen->add_option("--k", gk, "Ring-lattice degree (ws)");
    gen->add_option("--p", gp, "Rewiring probability (ws)");
    gen->add_option("--radius", gradius, "Connection radius (rgg)");
    gen->add_option("--seed", gseed, "Generator seed");
    gen->add_flag("--no-self-loops", no_self_loops, "Plain bipartite lattice (grid)");
    gen->add_option("-o,--out", gen_out, "Output edge-list file")->required();

    // analyze
    auto* an = app.add_subcommand("analyze", "Spectral/entropy report for a chain");
    ChainArgs an_chain;
    add_chain_options(an, an_chain);
    std::string an_out, an_curve;
    an->add_option("-o,--out", an_out, "JSON report file (default stdout)");
    an->add_option("--curve", an_curve, "Also write the entropy density s(rho) CSV here");

    // bounds
    auto* bo = app.add_subcommand("bounds", "Error-exponent bound sweep over beta");
    ChainArgs bo_chain;
    add_chain_options(bo, bo_chain);
    double bo_min = 0.0, bo_max = 4.0, bo_step = 0.05;
    std::string bo_out;
    bo->add_option("--beta-min", bo_min, "Grid start");
    bo->add_option("--beta-max", bo_max, "Grid end (inclusive)");
    bo->add_option("--step", bo_step, "Grid step");
    bo->add_option("-o,--out", bo_out, "Output CSV")->required();

    // simulate
    auto* si = app.add_subcommand("simulate", "Monte Carlo exponent sweep over beta");
    ChainArgs si_chain;
    add_chain_options(si, si_chain);
    double si_min = 0.5, si_max = 3.0, si_step = 0.5;
    int si_n = 2000, si_trials = 200, si_threads = default_threads();
    std::uint64_t si_seed = 0;
    std::string si_out;
    si->add_option("--beta-min", si_min, "Grid start");
    si->add_option("--beta-max", si_max, "Grid end (inclusive)");
    si->add_option("--step", si_step, "Grid step");
    si->add_option("--n", si_n, "Horizon per trial");
    si->add_option("--trials", si_trials, "Trials per beta");
    si->add_option("--seed", si_seed, "RNG seed");
    si->add_option("--threads", si_threads, "Worker cap (0 = hardware)");
    si->add_option("-o,--out", si_out, "Output CSV")->required();

    // detect
    auto* de = app.add_subcommand("detect", "Likelihood-ratio decision on an observation file");
    ChainArgs de_chain;
    add_chain_options(de, de_chain);
    std::string de_obs, de_out;
    double de_beta = 1.0, de_tau = 0.0;
    de->add_option("--obs", de_obs, "Observations CSV (M rows x N columns)")->required();
    de->add_option("--beta", de_beta, "Signal amplitude")->required();
    de->add_option("--tau", de_tau, "Decision threshold on ell");
    de->add_option("-o,--out", de_out, "JSON result file (default stdout)");

    // roc
    auto* ro = app.add_subcommand("roc", "Empirical ROC sweep");
    ChainArgs ro_chain;
    add_chain_options(ro, ro_chain);
    double ro_beta = 1.0;
    int ro_n = 200, ro_trials = 200, ro_threads = default_threads();
    std::uint64_t ro_seed = 0;
    std::string ro_out;
    ro->add_option("--beta", ro_beta, "Signal amplitude")->required();
    ro->add_option("--n", ro_n, "Horizon");
    ro->add_option("--trials", ro_trials, "Trials per hypothesis");
    ro->add_option("--seed", ro_seed, "RNG seed");
    ro->add_option("--threads", ro_threads, "Worker cap (0 = hardware)");
    ro->add_option("-o,--out", ro_out, "Output CSV")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;  // help/version exit clean, usage errors exit 2
    }

    try {
        if (*gen) {
            graphs::Graph g;
            if (gen_type == "cycle") {
                g = graphs::gen_cycle(gn);
            } else if (gen_type == "grid") {
                g = graphs::gen_grid(gw, gh, !no_self_loops);
            } else if (gen_type == "rgg") {
                g = graphs::gen_rgg(gn, gradius, gseed);
            } else if (gen_type == "ws") {
                g = graphs::gen_watts_strogatz(gn, gk, gp, gseed);
            } else {
                std::cerr << "unknown graph type: " << gen_type << "\n";
                return 2;
            }
            io::save_edge_list(gen_out, g);
            std::cout << g.m << " nodes, " << g.edges.size() << " directed edge records\n";
        } else if (*an) {
            auto chain = load_chain(an_chain);
            ldp::EntropyDensity density(chain);
            const double h = spectral::entropy_rate(chain);
            json j;
            j["m"] = chain.m();
            j["entropy_rate"] = h;
            j["log_lambda0"] = density.log_lambda0();
            j["rho_min"] = density.range().rho_min;
            j["rho_max"] = density.range().rho_max;
            j["threshold_beta"] = bounds::threshold_beta(chain);
            j["uniform_regular_k"] =
                chain.uniform_regular_k() ? json(*chain.uniform_regular_k()) : json(nullptr);
            if (!an_curve.empty()) io::save_curve_csv(an_curve, ldp::entropy_curve(chain));
            emit_json(j, an_out);
        } else if (*bo) {
            auto chain = load_chain(bo_chain);
            bounds::PhysicsBound pb(chain);
            std::vector<bounds::ExponentBounds> rows;
            for (double b : beta_grid(bo_min, bo_max, bo_step))
                rows.push_back(bounds::all_bounds(pb, chain, b));
            io::save_bounds_csv(bo_out, rows);
        } else if (*si) {
            auto chain = load_chain(si_chain);
            std::vector<io::SweepRow> rows;
            for (double b : beta_grid(si_min, si_max, si_step)) {
                auto est = montecarlo::estimate_exponent(chain, b, si_n, si_trials, si_seed,
                                                         si_threads, /*keep_trace=*/false);
                rows.push_back({b, est.eta_hat, est.std_err, est.n, est.trials});
            }
            io::save_sweep_csv(si_out, rows);
        } else if (*de) {
            auto chain = load_chain(de_chain);
            auto obs = io::load_observations(de_obs);
            auto llr = detector::log_likelihood_ratio(chain, de_beta, obs);
            json j;
            j["ell"] = llr.ell;
            j["log_l"] = llr.log_l;
            j["n"] = llr.n;
            j["tau"] = de_tau;
            j["decision"] =
                detector::neyman_pearson(llr, de_tau) == detector::Decision::H1 ? "H1" : "H0";
            emit_json(j, de_out);
        } else if (*ro) {
            auto chain = load_chain(ro_chain);
            auto roc = detector::estimate_roc(chain, ro_beta, ro_n, ro_trials, ro_seed, ro_threads);
            io::save_roc_csv(ro_out, roc);
        }
    } catch (const CLI::Error& e) {
        app.exit(e);
        return 2;
    } catch (const DimensionMismatchError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
