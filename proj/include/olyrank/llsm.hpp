#ifndef OLYRANK_LLSM_HPP
#define OLYRANK_LLSM_HPP

#include <Eigen/Dense>
#include <cmath>
#include <span>
#include <vector>

#include "olyrank/errors.hpp"
#include "olyrank/pcm.hpp"
#include "olyrank/weights.hpp"

namespace olyrank {

/// Sum over known pairs of (log a_ij - y_i + y_j)^2, with y the log-weights.
inline double llsm_objective(const IncompletePCM& m, std::span<const double> log_weights) {
  double total = 0;
  for (const auto& e : m.entries()) {
    const double r = std::log(e.value) - log_weights[e.i] + log_weights[e.j];
    total += r * r;
  }
  return total;
}

/// Solution of the LLSM normal equations together with the log-weights.
struct LlsmSolution {
  WeightVector weights;
  std::vector<double> log_weights;  // gauge y_{n-1} = 0
  double objective = 0;
  double residual = 0;  // max-norm of L y - b
};

/// Logarithmic least squares weights: the normal equations L y = b, where L is the
/// Laplacian of the comparison graph and b_i = sum_j log a_ij over i's neighbours.
/// The last coordinate is pinned to 0 and the leading (n-1) block is factorized.
inline LlsmSolution llsm_solve(const IncompletePCM& m) {
  const auto n = static_cast<Eigen::Index>(m.size());
  if (n < 2) throw DegenerateInputError("LLSM needs at least two alternatives");
  require_connected(m);

  Eigen::MatrixXd laplacian = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
  for (const auto& e : m.entries()) {
    const auto i = static_cast<Eigen::Index>(e.i);
    const auto j = static_cast<Eigen::Index>(e.j);
    laplacian(i, i) += 1;
    laplacian(j, j) += 1;
    laplacian(i, j) -= 1;
    laplacian(j, i) -= 1;
    const double l = std::log(e.value);
    rhs(i) += l;
    rhs(j) -= l;
  }

  const Eigen::Index k = n - 1;
  Eigen::VectorXd y = Eigen::VectorXd::Zero(n);
  const Eigen::LLT<Eigen::MatrixXd> chol(laplacian.topLeftCorner(k, k));
  if (chol.info() != Eigen::Success) throw DegenerateInputError("reduced Laplacian is not positive definite");
  y.head(k) = chol.solve(rhs.head(k));
  // One step of iterative refinement tightens the residual on ill-conditioned graphs.
  y.head(k) += chol.solve(rhs.head(k) - laplacian.topLeftCorner(k, k) * y.head(k));

  LlsmSolution s;
  s.log_weights.assign(y.data(), y.data() + n);
  s.residual = (laplacian * y - rhs).lpNorm<Eigen::Infinity>();
  s.objective = llsm_objective(m, s.log_weights);
  s.weights = WeightVector{normalized_exp(s.log_weights), "llsm", m.scale()};
  return s;
}

inline WeightVector llsm_weights(const IncompletePCM& m) { return llsm_solve(m).weights; }

}  // namespace olyrank

#endif  // OLYRANK_LLSM_HPP
