#ifndef OLYRANK_EM_HPP
#define OLYRANK_EM_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "olyrank/errors.hpp"
#include "olyrank/line_search.hpp"
#include "olyrank/llsm.hpp"
#include "olyrank/pcm.hpp"
#include "olyrank/weights.hpp"

namespace olyrank {

struct PerronOptions {
  double tolerance = 1e-11;  // relative width of the Collatz-Wielandt bracket
  int max_iterations = 200000;
};

struct PerronResult {
  double lambda_max = 0;
  WeightVector weights;
  double residual = 0;  // ||A w - lambda w||_inf / lambda
  int iterations = 0;
};

namespace detail {

/// Power iteration on `v` (positive, summing to 1) until max_i (Av)_i / v_i and
/// min_i (Av)_i / v_i agree to `opt.tolerance` relative to lambda; lambda lies between
/// them. Leaves the normalized last iterate in `v` and returns the eigenvalue estimate.
inline double power_iteration(const Eigen::MatrixXd& a, Eigen::VectorXd& v, Eigen::VectorXd& u,
                              const PerronOptions& opt, int* iterations = nullptr) {
  double spread = std::numeric_limits<double>::infinity();
  double lambda = 0;
  int it = 0;
  for (; it < opt.max_iterations; ++it) {
    u.noalias() = a * v;
    lambda = u.sum();
    spread = ((u.array() / v.array()).maxCoeff() - (u.array() / v.array()).minCoeff()) / lambda;
    v = u / lambda;
    if (spread <= opt.tolerance) break;
  }
  if (it == opt.max_iterations) throw ConvergenceError("power iteration hit its iteration cap", spread);
  if (iterations) *iterations = it + 1;
  return lambda;
}

}  // namespace detail

/// Dominant eigenpair of a positive matrix by power iteration. `start`, when non-empty,
/// warm-starts the iteration and receives the final eigenvector.
inline PerronResult perron(const Eigen::MatrixXd& a, const PerronOptions& opt, Eigen::VectorXd& start) {
  const Eigen::Index n = a.rows();
  if (n == 0 || a.cols() != n) throw DegenerateInputError("perron needs a non-empty square matrix");
  if ((a.array() <= 0).any()) throw ValidationError("perron needs a positive matrix");

  Eigen::VectorXd v = start.size() == n && (start.array() > 0).all() ? start : Eigen::VectorXd::Ones(n);
  v /= v.sum();
  Eigen::VectorXd u(n);
  PerronResult r;
  detail::power_iteration(a, v, u, opt, &r.iterations);

  // v is the normalized last iterate; recompute the eigenvalue estimate for it.
  u.noalias() = a * v;
  r.lambda_max = u.sum();
  r.residual = (u - r.lambda_max * v).lpNorm<Eigen::Infinity>() / r.lambda_max;
  r.weights = WeightVector{std::vector<double>(v.data(), v.data() + n), "em", {}};
  start = v;
  return r;
}

inline PerronResult perron(const Eigen::MatrixXd& a, const PerronOptions& opt = {}) {
  Eigen::VectorXd start;
  return perron(a, opt, start);
}

struct EmOptions {
  double line_tolerance = 1e-8;    // final bracket width, relative, on log x
  double sweep_tolerance = 1e-10;  // stop when a full sweep lowers lambda_max by less
  int max_sweeps = 200;
  double bracket_half_width = 8;   // initial bracket around log x
  PerronOptions eigen{};
};

/// Missing upper-triangle elements with their current values, plus solver diagnostics.
struct CompletionState {
  std::vector<PcmEntry> x;
  double lambda_max = 0;
  int sweeps = 0;
  long evaluations = 0;
  std::vector<double> trace;  // lambda_max after initialization and after each sweep
};

/// Sweep cap reached before the stopping rule fired.
class SweepCapError : public ConvergenceError {
public:
  SweepCapError(CompletionState state, double last_improvement)
      : ConvergenceError("lambda_max-optimal completion hit its sweep cap", last_improvement),
        state_(std::move(state)) {}

  const CompletionState& state() const noexcept { return state_; }

private:
  CompletionState state_;
};

/// Dense matrix with the known elements of `m` and the given values in the missing ones.
inline Eigen::MatrixXd complete_matrix(const IncompletePCM& m, const std::vector<PcmEntry>& x) {
  const auto n = static_cast<Eigen::Index>(m.size());
  Eigen::MatrixXd a = Eigen::MatrixXd::Ones(n, n);
  auto put = [&](const PcmEntry& e) {
    a(static_cast<Eigen::Index>(e.i), static_cast<Eigen::Index>(e.j)) = e.value;
    a(static_cast<Eigen::Index>(e.j), static_cast<Eigen::Index>(e.i)) = 1.0 / e.value;
  };
  for (const auto& e : m.entries()) put(e);
  for (const auto& e : x) put(e);
  return a;
}

/// Chooses the missing elements to minimize the dominant eigenvalue by cyclic coordinates:
/// each sweep visits every missing element and minimizes lambda_max over its logarithm
/// by Brent's method, starting from the consistent completion given by the LLSM weights. A step is kept only when it lowers lambda_max by more than
/// the eigenvalue tolerance, so the trace never increases.
inline CompletionState optimal_completion(const IncompletePCM& m, const EmOptions& opt = {}) {
  const std::size_t n = m.size();
  if (n == 0) throw DegenerateInputError("empty matrix");
  require_connected(m);

  CompletionState state;
  const auto potential = llsm_solve(m).log_weights;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!m.known(i, j)) state.x.push_back({i, j, std::exp(potential[i] - potential[j])});

  Eigen::MatrixXd a = complete_matrix(m, state.x);
  Eigen::VectorXd eigvec;
  state.lambda_max = perron(a, opt.eigen, eigvec).lambda_max;
  state.trace.push_back(state.lambda_max);
  if (state.x.empty()) return state;

  Eigen::VectorXd work(a.rows());
  double improvement = std::numeric_limits<double>::infinity();
  while (state.sweeps < opt.max_sweeps) {
    const double before = state.lambda_max;
    for (auto& e : state.x) {
      const auto i = static_cast<Eigen::Index>(e.i);
      const auto j = static_cast<Eigen::Index>(e.j);
      auto lambda_at = [&](double t) {
        a(i, j) = std::exp(t);
        a(j, i) = std::exp(-t);
        ++state.evaluations;
        return detail::power_iteration(a, eigvec, work, opt.eigen);
      };
      const double t0 = std::log(e.value);
      const LineMinimum best = line_minimum(lambda_at, t0, opt.bracket_half_width, opt.line_tolerance);
      if (best.value < state.lambda_max - opt.eigen.tolerance * state.lambda_max) {
        e.value = std::exp(best.x);
        state.lambda_max = best.value;
      }
      a(i, j) = e.value;
      a(j, i) = 1.0 / e.value;
    }
    ++state.sweeps;
    state.trace.push_back(state.lambda_max);
    improvement = before - state.lambda_max;
    if (improvement < opt.sweep_tolerance) return state;
  }
  throw SweepCapError(std::move(state), improvement);
}

struct EmResult {
  CompletionState completion;
  PerronResult eigen;
};

/// Perron eigenvector of the lambda_max-optimal completion.
inline EmResult em_solve(const IncompletePCM& m, const EmOptions& opt = {}) {
  EmResult r;
  r.completion = optimal_completion(m, opt);
  r.eigen = perron(complete_matrix(m, r.completion.x), opt.eigen);
  r.eigen.weights.scale = m.scale();
  return r;
}

inline WeightVector em_weights(const IncompletePCM& m, const EmOptions& opt = {}) {
  return em_solve(m, opt).eigen.weights;
}

}  // namespace olyrank

#endif  // OLYRANK_EM_HPP
