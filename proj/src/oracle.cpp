#include "holo/oracle.hpp"

#include "holo/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace holo {

ContourSpec default_contour(const TaylorPencil& p, int nodes, double same_point_tol) {
  // Search a generous disk around the center for competing roots.
  const double search = std::abs(p.center()) + 4.0;
  double nearest = std::numeric_limits<double>::infinity();
  for (const Root& r : spectrum_in_disk(p, search)) {
    const double d = std::abs(r.value - p.center());
    if (d > same_point_tol) nearest = std::min(nearest, d);
  }
  const double radius = std::clamp(nearest / 2.0, 1e-3, 0.5);
  return {p.center(), radius, nodes};
}

std::vector<Mat> contour_coefficients(const TaylorPencil& p, const ContourSpec& spec, int j_min, int j_max) {
  if (spec.radius <= 0.0 || spec.nodes < 1 || j_max < j_min) {
    throw Error(ErrorKind::InvalidInput, "invalid contour specification");
  }
  const Index n = p.dim();
  const std::size_t count = static_cast<std::size_t>(j_max - j_min + 1);
  std::vector<Mat> out(count, Mat::Zero(n, n));
  for (int q = 0; q < spec.nodes; ++q) {
    const double theta = 2.0 * std::numbers::pi * q / spec.nodes;
    const Complex offset = std::polar(spec.radius, theta);
    const Mat value = evaluate(p, spec.center + offset);
    Eigen::JacobiSVD<Mat> svd(value, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    if (s(s.size() - 1) == 0.0 || s(0) / s(s.size() - 1) >= 1e12) {
      throw Error(ErrorKind::SingularOnContour, "A(z) numerically singular at contour node " + std::to_string(q));
    }
    const Mat inverse = svd.solve(Mat::Identity(n, n));
    // (z - c)^{-j} for j = j_min, then multiply by (z - c)^{-1} each step.
    Complex weight = std::pow(offset, -j_min);
    const Complex step = 1.0 / offset;
    for (std::size_t i = 0; i < count; ++i) {
      out[i] += weight * inverse;
      weight *= step;
    }
  }
  for (Mat& m : out) m /= static_cast<double>(spec.nodes);
  return out;
}

Mat contour_coefficient(const TaylorPencil& p, const ContourSpec& spec, int j) {
  return contour_coefficients(p, spec, j, j).front();
}

std::vector<Mat> contour_coefficients_of(const std::function<Mat(Complex)>& f, Index n, const ContourSpec& spec,
                                         int j_min, int j_max) {
  if (spec.radius <= 0.0 || spec.nodes < 1 || j_max < j_min) {
    throw Error(ErrorKind::InvalidInput, "invalid contour specification");
  }
  const std::size_t count = static_cast<std::size_t>(j_max - j_min + 1);
  std::vector<Mat> out(count, Mat::Zero(n, n));
  for (int q = 0; q < spec.nodes; ++q) {
    const Complex offset = std::polar(spec.radius, 2.0 * std::numbers::pi * q / spec.nodes);
    const Mat value = f(spec.center + offset);
    Complex weight = std::pow(offset, -j_min);
    const Complex step = 1.0 / offset;
    for (std::size_t i = 0; i < count; ++i) {
      out[i] += weight * value;
      weight *= step;
    }
  }
  for (Mat& m : out) m /= static_cast<double>(spec.nodes);
  return out;
}

int detect_order(const TaylorPencil& p, const ContourSpec& spec, int max_m, double tol) {
  const std::vector<Mat> c = contour_coefficients(p, spec, -max_m, 0);
  double biggest = 0.0;
  for (const Mat& m : c) biggest = std::max(biggest, m.norm());
  for (int m = max_m; m >= 1; --m) {
    if (c[static_cast<std::size_t>(max_m - m)].norm() > tol * biggest) return m;
  }
  return 0;
}

}  // namespace holo
