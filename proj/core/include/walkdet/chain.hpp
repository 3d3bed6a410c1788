#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <optional>

namespace walkdet {

using SpMat = Eigen::SparseMatrix<double, Eigen::RowMajor>;

// Validated row-stochastic transition matrix with cached stationary
// distribution. Immutable after construction; build one with
// spectral::validate_chain().
class MarkovChain {
  public:
    int m() const { return m_; }
    const Eigen::MatrixXd& p() const { return p_; }
    const SpMat& sparse() const { return sp_; }
    const Eigen::VectorXd& pi() const { return pi_; }
    bool support(int i, int j) const { return p_(i, j) > 0.0; }

    // K if every row has exactly K nonzero entries, all equal to 1/K
    // (uniform random walk on a regular graph); the spectral machinery
    // degenerates in that case and several formulas switch branches.
    std::optional<int> uniform_regular_k() const { return regular_k_; }

  private:
    friend class ChainBuilder;
    MarkovChain() = default;

    int m_ = 0;
    Eigen::MatrixXd p_;
    SpMat sp_;
    Eigen::VectorXd pi_;
    std::optional<int> regular_k_;
};

}  // namespace walkdet
