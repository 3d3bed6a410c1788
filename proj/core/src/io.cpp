#include "walkdet/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "walkdet/errors.hpp"

namespace walkdet::io {

namespace {

std::ifstream open_in(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw IoError("cannot open " + file.string() + " for reading");
    return in;
}

std::ofstream open_out(const std::filesystem::path& file) {
    std::ofstream out(file);
    if (!out) throw IoError("cannot open " + file.string() + " for writing");
    return out;
}

std::vector<double> parse_row(const std::string& line, char sep) {
    std::vector<double> out;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, sep)) {
        if (cell.empty()) continue;
        out.push_back(std::stod(cell));
    }
    return out;
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

Eigen::MatrixXd load_matrix(const std::filesystem::path& file) {
    auto in = open_in(file);
    int m = 0;
    if (!(in >> m) || m < 1) throw IoError("bad matrix header in " + file.string());
    Eigen::MatrixXd p(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if (!(in >> p(i, j))) throw IoError("truncated matrix in " + file.string());
    return p;
}

void save_matrix(const std::filesystem::path& file, const Eigen::MatrixXd& p) {
    auto out = open_out(file);
    out << p.rows() << "\n";
    for (int i = 0; i < p.rows(); ++i) {
        for (int j = 0; j < p.cols(); ++j) out << (j ? " " : "") << format_double(p(i, j));
        out << "\n";
    }
}

graphs::Graph load_edge_list(const std::filesystem::path& file) {
    auto in = open_in(file);
    std::string tag, kind;
    int m = 0;
    if (!(in >> tag >> m >> kind) || tag != "M" || m < 1 ||
        (kind != "directed" && kind != "undirected"))
        throw IoError("bad edge-list header in " + file.string());
    graphs::Graph g;
    g.m = m;
    g.directed = kind == "directed";
    int a, b;
    while (in >> a >> b) {
        if (a < 1 || a > m || b < 1 || b > m)
            throw StateOutOfRangeError("edge endpoint out of range in " + file.string());
        g.edges.emplace_back(a - 1, b - 1);
        if (!g.directed && a != b) g.edges.emplace_back(b - 1, a - 1);
    }
    return g;
}

void save_edge_list(const std::filesystem::path& file, const graphs::Graph& g) {
    auto out = open_out(file);
    out << "M " << g.m << " " << (g.directed ? "directed" : "undirected") << "\n";
    for (const auto& [a, b] : g.edges) {
        if (!g.directed && a > b) continue;  // store each unordered pair once
        out << (a + 1) << " " << (b + 1) << "\n";
    }
}

detector::Observations load_observations(const std::filesystem::path& csv,
                                         const std::optional<std::filesystem::path>& truth) {
    auto in = open_in(csv);
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        rows.push_back(parse_row(line, ','));
        if (rows.back().size() != rows.front().size())
            throw IoError("ragged observation rows in " + csv.string());
    }
    if (rows.empty()) throw IoError("empty observations file " + csv.string());
    detector::Observations obs;
    obs.n = static_cast<int>(rows.front().size());
    obs.y.resize(static_cast<int>(rows.size()), obs.n);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (int j = 0; j < obs.n; ++j) obs.y(static_cast<int>(i), j) = rows[i][j];
    if (truth) {
        auto tin = open_in(*truth);
        std::vector<int> states;
        int s;
        while (tin >> s) {
            if (s < 1 || s > obs.y.rows())
                throw StateOutOfRangeError("truth state out of range in " + truth->string());
            states.push_back(s - 1);
        }
        if (static_cast<int>(states.size()) != obs.n)
            throw DimensionMismatchError("truth length does not match horizon");
        obs.truth = std::move(states);
    }
    return obs;
}

void save_observations(const std::filesystem::path& csv, const detector::Observations& obs,
                       const std::optional<std::filesystem::path>& truth) {
    auto out = open_out(csv);
    for (int i = 0; i < obs.y.rows(); ++i) {
        for (int j = 0; j < obs.y.cols(); ++j) out << (j ? "," : "") << format_double(obs.y(i, j));
        out << "\n";
    }
    if (truth) {
        if (!obs.truth) throw IoError("no truth path to write");
        auto tout = open_out(*truth);
        for (int s : *obs.truth) tout << (s + 1) << "\n";
    }
}

void save_bounds_csv(const std::filesystem::path& file,
                     const std::vector<bounds::ExponentBounds>& rows) {
    auto out = open_out(file);
    out << "beta,genie_ub,sum_lb,physics_lb,threshold_beta\n";
    for (const auto& r : rows)
        out << format_double(r.beta) << "," << format_double(r.genie_ub) << ","
            << format_double(r.sum_lb) << "," << format_double(r.physics_lb) << ","
            << format_double(r.threshold_beta) << "\n";
}

void save_curve_csv(const std::filesystem::path& file, const ldp::EntropyCurve& curve) {
    auto out = open_out(file);
    out << "rho,s,t_star\n";
    for (std::size_t i = 0; i < curve.rho_grid.size(); ++i)
        out << format_double(curve.rho_grid[i]) << "," << format_double(curve.s_values[i]) << ","
            << format_double(curve.t_values[i]) << "\n";
}

void save_measure_csv(const std::filesystem::path& file, const ldp::EmpiricalMeasure& measure) {
    auto out = open_out(file);
    out << "rho,xi\n";
    for (const auto& [rho, xi] : measure.points)
        out << format_double(rho) << "," << format_double(xi) << "\n";
}

void save_roc_csv(const std::filesystem::path& file, const std::vector<detector::RocPoint>& roc) {
    auto out = open_out(file);
    out << "tau,pf,pm\n";
    for (const auto& pt : roc)
        out << format_double(pt.tau) << "," << format_double(pt.pf) << ","
            << format_double(pt.pm) << "\n";
}

void save_sweep_csv(const std::filesystem::path& file, const std::vector<SweepRow>& rows) {
    auto out = open_out(file);
    out << "beta,eta_hat,stderr,n,trials\n";
    for (const auto& r : rows)
        out << format_double(r.beta) << "," << format_double(r.eta_hat) << ","
            << format_double(r.std_err) << "," << r.n << "," << r.trials << "\n";
}

}  // namespace walkdet::io
