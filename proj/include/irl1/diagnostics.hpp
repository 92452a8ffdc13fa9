#pragma once

#include <map>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "irl1/problem_model.hpp"

namespace irl1 {

/// Weights under which a first-order stationary point of the lp problem is
/// a stationary point of min f(x) + lambda * sum w_i |x_i|.
struct EquivalenceCertificate {
  std::vector<Index> support;
  /// p |x_i|^(p-1) for i in the support.
  std::map<Index, double> support_weights;
  /// |grad_i f(x)| / lambda for i off the support.
  std::map<Index, double> inactive_lower_bounds;
  /// Full weight vector: support weights on the support and
  /// margin * max(bound, floor) elsewhere.
  Vector weights;
  double max_kkt_violation = 0.0;
};

/// Laplace prior scales b_i = 1 / w_i of the matching MAP model, with noise
/// variance sigma^2 = lambda.
struct MapScales {
  std::map<Index, double> b;
  double sigma_sq = 0.0;
};

inline constexpr double kDefaultCertificateMargin = 2.0;
inline constexpr double kDefaultCertificateFloor = 1e-8;

/// Builds the weighted-l1 certificate at x_star. `margin` must exceed 1.
EquivalenceCertificate weighted_l1_certificate(
    const LpProblem& problem, const Vector& x_star,
    double margin = kDefaultCertificateMargin,
    double floor = kDefaultCertificateFloor);

MapScales map_laplace_scales(const Vector& x_star,
                             const EquivalenceCertificate& certificate,
                             double lambda);

/// Objective values of a 2-D problem sampled on a resolution x resolution
/// grid. Rows follow y, columns follow x; grid points include both ends of
/// each range.
struct ContourGrid {
  Vector xs;
  Vector ys;
  Matrix f_lp;   // f + lambda * ||x||_p^p
  Matrix f_l1;   // f + lambda * ||x||_1
  Matrix f_wl1;  // f + lambda * sum w_i |x_i|

  /// (row, col) of the smallest entry; ties resolve to the first in
  /// row-major order.
  static std::pair<Index, Index> argmin(const Matrix& values);
};

struct ContourSpec {
  std::shared_ptr<const SmoothObjective> objective;
  /// May be zero, in which case all three grids equal f.
  double lambda = 0.0;
  double p = 0.5;
  /// Weights of the weighted-l1 surface. Required when lambda > 0.
  std::optional<Vector> weights;
};

/// Throws std::invalid_argument unless the objective is 2-D and
/// resolution >= 2. Rows are split across `jobs` threads.
ContourGrid contour_grid(const ContourSpec& spec, std::pair<double, double> x_range,
                         std::pair<double, double> y_range, int resolution,
                         int jobs = 1);

}  // namespace irl1
