#pragma once

#include "holo/pencil.hpp"

#include <functional>
#include <vector>

namespace holo {

/// Circle on which A(z)^{-1} is sampled for the Cauchy coefficients.
struct ContourSpec {
  Complex center;
  double radius = 0.5;
  int nodes = 256;
};

/// Radius: half the distance from the center to the nearest other root of
/// det A(z), clamped to [1e-3, 0.5]. Roots within `same_point_tol` of the center
/// are treated as the center itself.
ContourSpec default_contour(const TaylorPencil& p, int nodes = 256, double same_point_tol = 1e-3);

/// Trapezoidal approximation of (2 pi i)^{-1} \oint A(z)^{-1} (z - c)^{-j-1} dz
/// for j = j_min .. j_max. Throws SingularOnContour when A is numerically
/// singular (condition number >= 1e12) at a node.
std::vector<Mat> contour_coefficients(const TaylorPencil& p, const ContourSpec& spec, int j_min, int j_max);

Mat contour_coefficient(const TaylorPencil& p, const ContourSpec& spec, int j);

/// Same quadrature for an arbitrary n x n matrix function f, holomorphic on an
/// annulus containing the circle.
std::vector<Mat> contour_coefficients_of(const std::function<Mat(Complex)>& f, Index n, const ContourSpec& spec,
                                         int j_min, int j_max);

/// Largest m <= max_m with ||C_{-m}||_F > tol * max_{-max_m <= j <= 0} ||C_j||_F.
int detect_order(const TaylorPencil& p, const ContourSpec& spec, int max_m = 4, double tol = 1e-8);

}  // namespace holo
