#include "irl1/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace irl1 {

EquivalenceCertificate weighted_l1_certificate(const LpProblem& problem,
                                               const Vector& x_star, double margin,
                                               double floor) {
  if (!(margin > 1.0)) {
    throw std::invalid_argument("weighted_l1_certificate: margin must exceed 1");
  }
  if (!(floor > 0.0)) {
    throw std::invalid_argument("weighted_l1_certificate: floor must be positive");
  }
  const double lambda = problem.lambda();
  const double p = problem.p();
  const Vector grad = gradient(problem.objective(), x_star);

  EquivalenceCertificate cert;
  cert.weights.resize(x_star.size());
  for (Index i = 0; i < x_star.size(); ++i) {
    if (x_star[i] != 0.0) {
      const double w = p * std::pow(std::abs(x_star[i]), p - 1.0);
      const double s = x_star[i] > 0.0 ? 1.0 : -1.0;
      cert.support.push_back(i);
      cert.support_weights[i] = w;
      cert.weights[i] = w;
      cert.max_kkt_violation =
          std::max(cert.max_kkt_violation, std::abs(grad[i] + lambda * w * s));
    } else {
      const double bound = std::abs(grad[i]) / lambda;
      const double w = margin * std::max(bound, floor);
      cert.inactive_lower_bounds[i] = bound;
      cert.weights[i] = w;
      cert.max_kkt_violation =
          std::max(cert.max_kkt_violation, std::max(std::abs(grad[i]) - lambda * w, 0.0));
    }
  }
  return cert;
}

MapScales map_laplace_scales(const Vector& x_star,
                             const EquivalenceCertificate& certificate,
                             double lambda) {
  if (certificate.weights.size() != x_star.size()) {
    throw std::invalid_argument("map_laplace_scales: certificate does not match x_star");
  }
  MapScales scales;
  scales.sigma_sq = lambda;
  for (Index i = 0; i < x_star.size(); ++i) {
    scales.b[i] = 1.0 / certificate.weights[i];
  }
  return scales;
}

std::pair<Index, Index> ContourGrid::argmin(const Matrix& values) {
  Index best_r = 0;
  Index best_c = 0;
  for (Index r = 0; r < values.rows(); ++r) {
    for (Index c = 0; c < values.cols(); ++c) {
      if (values(r, c) < values(best_r, best_c)) {
        best_r = r;
        best_c = c;
      }
    }
  }
  return {best_r, best_c};
}

ContourGrid contour_grid(const ContourSpec& spec, std::pair<double, double> x_range,
                         std::pair<double, double> y_range, int resolution, int jobs) {
  if (!spec.objective || spec.objective->dimension() != 2) {
    throw std::invalid_argument("contour_grid: the problem must be two-dimensional");
  }
  if (resolution < 2) {
    throw std::invalid_argument("contour_grid: resolution must be at least 2");
  }
  if (spec.lambda < 0.0) {
    throw std::invalid_argument("contour_grid: lambda must be nonnegative");
  }
  Vector weights = Vector::Zero(2);
  if (spec.weights) {
    if (spec.weights->size() != 2) {
      throw std::invalid_argument("contour_grid: weights must have two entries");
    }
    weights = *spec.weights;
  } else if (spec.lambda > 0.0) {
    throw std::invalid_argument("contour_grid: weighted-l1 weights are required");
  }

  ContourGrid grid;
  grid.xs = Vector::LinSpaced(resolution, x_range.first, x_range.second);
  grid.ys = Vector::LinSpaced(resolution, y_range.first, y_range.second);
  grid.f_lp.resize(resolution, resolution);
  grid.f_l1.resize(resolution, resolution);
  grid.f_wl1.resize(resolution, resolution);

  auto fill_rows = [&](Index begin, Index end) {
    Vector point(2);
    for (Index r = begin; r < end; ++r) {
      for (Index c = 0; c < resolution; ++c) {
        point << grid.xs[c], grid.ys[r];
        const double f = spec.objective->value(point);
        grid.f_lp(r, c) = f + spec.lambda * lp_quasi_norm(point, spec.p);
        grid.f_l1(r, c) = f + spec.lambda * point.lpNorm<1>();
        grid.f_wl1(r, c) = f + spec.lambda * weights.dot(point.cwiseAbs());
      }
    }
  };

  const Index workers = std::clamp<Index>(jobs, 1, resolution);
  if (workers == 1) {
    fill_rows(0, resolution);
    return grid;
  }
  // Each thread owns a contiguous block of rows, so output does not depend on
  // scheduling.
  std::vector<std::thread> threads;
  const Index block = (resolution + workers - 1) / workers;
  for (Index start = 0; start < resolution; start += block) {
    threads.emplace_back(fill_rows, start, std::min<Index>(start + block, resolution));
  }
  for (auto& t : threads) t.join();
  return grid;
}

}  // namespace irl1
