#ifndef OLYRANK_MDS_HPP
#define OLYRANK_MDS_HPP

#include <Eigen/Dense>
#include <cmath>
#include <string>
#include <vector>

#include "olyrank/compare.hpp"
#include "olyrank/errors.hpp"

namespace olyrank {

struct MdsOptions {
  int dims = 2;
  int max_iterations = 500;
  double tolerance = 1e-9;  // minimum stress improvement per iteration
};

struct MdsEmbedding {
  std::vector<std::string> labels;
  Eigen::MatrixXd coords;  // one row per label, centred columns
  double stress = 0;       // Kruskal stress-1
  double rsq = 0;
  double a = 0;            // disparities a + b d
  double b = 1;
  int iterations = 0;
  std::vector<double> trace;  // stress of the initial and every accepted configuration
};

namespace detail {

struct DisparityFit {
  double a = 0;
  double b = 1;
  Eigen::VectorXd delta;
};

/// Least-squares fit of configuration distances by a + b d with b > 0. If the free fit
/// does not give b > 0 the intercept is dropped (disparities proportional to d).
inline DisparityFit fit_disparities(const Eigen::VectorXd& d, const Eigen::VectorXd& dhat) {
  DisparityFit f;
  const double md = d.mean();
  const double mh = dhat.mean();
  const double var = (d.array() - md).square().sum();
  if (var > 0) {
    f.b = ((d.array() - md) * (dhat.array() - mh)).sum() / var;
    f.a = mh - f.b * md;
  }
  if (!(var > 0) || f.b <= 0) {
    f.a = 0;
    f.b = dhat.dot(d) / d.squaredNorm();
  }
  f.delta = f.a + f.b * d.array();
  return f;
}

inline Eigen::VectorXd pair_distances(const Eigen::MatrixXd& x) {
  const Eigen::Index k = x.rows();
  Eigen::VectorXd out(k * (k - 1) / 2);
  Eigen::Index p = 0;
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = i + 1; j < k; ++j) out(p++) = (x.row(i) - x.row(j)).norm();
  return out;
}

inline Eigen::VectorXd pair_distances_from(const Eigen::MatrixXd& dist) {
  const Eigen::Index k = dist.rows();
  Eigen::VectorXd out(k * (k - 1) / 2);
  Eigen::Index p = 0;
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = i + 1; j < k; ++j) out(p++) = dist(i, j);
  return out;
}

inline double kruskal_stress(const Eigen::VectorXd& dhat, const Eigen::VectorXd& delta) {
  const double denom = dhat.squaredNorm();
  return denom > 0 ? std::sqrt((dhat - delta).squaredNorm() / denom) : 0.0;
}

inline double squared_correlation(const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
  const Eigen::ArrayXd cu = u.array() - u.mean();
  const Eigen::ArrayXd cv = v.array() - v.mean();
  const double den = cu.square().sum() * cv.square().sum();
  if (!(den > 0)) return 1.0;
  const double num = (cu * cv).sum();
  return std::min(num * num / den, 1.0);
}

/// Classical (Torgerson) scaling; each axis is signed so its largest-magnitude entry is positive.
inline Eigen::MatrixXd classical_scaling(const Eigen::MatrixXd& dist, int dims) {
  const Eigen::Index k = dist.rows();
  const Eigen::MatrixXd centering = Eigen::MatrixXd::Identity(k, k) - Eigen::MatrixXd::Constant(k, k, 1.0 / k);
  const Eigen::MatrixXd gram = -0.5 * centering * dist.array().square().matrix() * centering;
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
  Eigen::MatrixXd x(k, dims);
  for (int c = 0; c < dims; ++c) {
    const Eigen::Index col = k - 1 - c;  // eigenvalues ascend
    Eigen::VectorXd v = eig.eigenvectors().col(col) * std::sqrt(std::max(eig.eigenvalues()(col), 0.0));
    Eigen::Index arg = 0;
    v.cwiseAbs().maxCoeff(&arg);
    if (v(arg) < 0) v = -v;
    x.col(c) = v;
  }
  return x;
}

}  // namespace detail

/// Interval MDS: classical scaling start, then alternating linear disparity fits and
/// Guttman transforms. Before every transform the disparities are normalized to the
/// input's sum of squares and the configuration is rescaled optimally against them,
/// which makes the stress-1 trace non-increasing. A step that would raise stress ends
/// the iteration.
inline MdsEmbedding embed(const DistanceMatrix& dm, const MdsOptions& opt = {}) {
  const auto k = static_cast<Eigen::Index>(dm.size());
  if (k < 3) throw DegenerateInputError("MDS needs at least three objects");
  if (opt.dims != 1 && opt.dims != 2) throw ConfigError("MDS supports 1 or 2 dimensions");

  Eigen::MatrixXd dist(k, k);
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < k; ++j) dist(i, j) = dm(i, j);
  if (!(dist.array() >= 0).all() || !(dist - dist.transpose()).isZero(1e-12))
    throw ValidationError("MDS input must be a symmetric non-negative matrix");
  for (Eigen::Index i = 0; i < k; ++i) dist(i, i) = 0;
  const Eigen::VectorXd d = detail::pair_distances_from(dist);
  if (d.maxCoeff() <= 0) throw DegenerateInputError("all distances are zero");
  const double target_norm = d.norm();

  Eigen::MatrixXd x = detail::classical_scaling(dist, opt.dims);
  Eigen::VectorXd dhat = detail::pair_distances(x);

  auto stress_of = [&](const Eigen::VectorXd& h) {
    return detail::kruskal_stress(h, detail::fit_disparities(d, h).delta);
  };

  MdsEmbedding out;
  out.labels = dm.labels;
  double stress = stress_of(dhat);
  out.trace.push_back(stress);

  for (int it = 0; it < opt.max_iterations && stress > 0; ++it) {
    // Normalize disparities and the configuration scale jointly.
    auto fit = detail::fit_disparities(d, dhat);
    Eigen::VectorXd delta = fit.delta * (target_norm / fit.delta.norm());
    const double scale = delta.dot(dhat) / dhat.squaredNorm();
    x *= scale;
    dhat *= scale;

    Eigen::MatrixXd bmat = Eigen::MatrixXd::Zero(k, k);
    Eigen::Index p = 0;
    for (Eigen::Index i = 0; i < k; ++i)
      for (Eigen::Index j = i + 1; j < k; ++j, ++p) {
        const double v = dhat(p) > 0 ? -delta(p) / dhat(p) : 0.0;
        bmat(i, j) = bmat(j, i) = v;
      }
    for (Eigen::Index i = 0; i < k; ++i) bmat(i, i) = -bmat.row(i).sum();
    Eigen::MatrixXd next = bmat * x / static_cast<double>(k);
    Eigen::VectorXd next_dhat = detail::pair_distances(next);
    const double next_stress = stress_of(next_dhat);
    if (!(next_stress <= stress)) break;
    x = std::move(next);
    dhat = std::move(next_dhat);
    out.iterations = it + 1;
    out.trace.push_back(next_stress);
    const double gain = stress - next_stress;
    stress = next_stress;
    if (gain < opt.tolerance) break;
  }

  // Report in the input's units: rescale once more against normalized disparities.
  auto fit = detail::fit_disparities(d, dhat);
  const Eigen::VectorXd delta = fit.delta * (target_norm / fit.delta.norm());
  const double scale = delta.dot(dhat) / dhat.squaredNorm();
  x *= scale;
  x.rowwise() -= x.colwise().mean();
  dhat = detail::pair_distances(x);
  fit = detail::fit_disparities(d, dhat);

  out.coords = x;
  out.a = fit.a;
  out.b = fit.b;
  out.stress = detail::kruskal_stress(dhat, fit.delta);
  out.rsq = detail::squared_correlation(fit.delta, dhat);
  return out;
}

}  // namespace olyrank

#endif  // OLYRANK_MDS_HPP
