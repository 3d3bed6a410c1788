#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "walkdet/bounds.hpp"
#include "walkdet/chain.hpp"
#include "walkdet/detector.hpp"
#include "walkdet/graphs.hpp"
#include "walkdet/ldp.hpp"

namespace walkdet::io {

// 17 significant digits, '.' decimal, no locale: round-trips exactly.
std::string format_double(double v);

// Transition matrix text format: first line "M", then M rows of M
// space-separated decimals.
Eigen::MatrixXd load_matrix(const std::filesystem::path& file);
void save_matrix(const std::filesystem::path& file, const Eigen::MatrixXd& p);

// Edge list: header "M <m> <directed|undirected>", then 1-based "i j" lines.
// Undirected files carry each unordered pair once; the reader restores both
// orientations.
graphs::Graph load_edge_list(const std::filesystem::path& file);
void save_edge_list(const std::filesystem::path& file, const graphs::Graph& g);

// Observations: CSV of M rows x N columns, optional sidecar truth file with
// one 1-based state per line.
detector::Observations load_observations(const std::filesystem::path& csv,
                                         const std::optional<std::filesystem::path>& truth = {});
void save_observations(const std::filesystem::path& csv, const detector::Observations& obs,
                       const std::optional<std::filesystem::path>& truth = {});

void save_bounds_csv(const std::filesystem::path& file,
                     const std::vector<bounds::ExponentBounds>& rows);
void save_curve_csv(const std::filesystem::path& file, const ldp::EntropyCurve& curve);
void save_measure_csv(const std::filesystem::path& file, const ldp::EmpiricalMeasure& measure);
void save_roc_csv(const std::filesystem::path& file, const std::vector<detector::RocPoint>& roc);

struct SweepRow {
    double beta;
    double eta_hat;
    double std_err;
    int n;
    int trials;
};
void save_sweep_csv(const std::filesystem::path& file, const std::vector<SweepRow>& rows);

}  // namespace walkdet::io
