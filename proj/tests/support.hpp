#pragma once

#include "holo/pencil.hpp"

#include <random>
#include <vector>

namespace holo::testing {

inline Mat random_matrix(std::mt19937_64& rng, Index rows, Index cols) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Mat m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = Complex(normal(rng), normal(rng));
  return m;
}

inline double condition(const Mat& m) {
  Eigen::JacobiSVD<Mat> svd(m);
  const auto& s = svd.singularValues();
  return s(0) / s(s.size() - 1);
}

/// Random invertible matrix with condition number below `max_cond`.
inline Mat random_invertible(std::mt19937_64& rng, Index n, double max_cond = 100.0) {
  for (;;) {
    Mat m = random_matrix(rng, n, n);
    if (condition(m) < max_cond) return m;
  }
}

/// Multiplies two polynomial matrices given by coefficient lists.
inline std::vector<Mat> poly_mul(const std::vector<Mat>& a, const std::vector<Mat>& b) {
  std::vector<Mat> out(a.size() + b.size() - 1, Mat::Zero(a.front().rows(), b.front().cols()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

/// diag((z - c)^{e_i}) as a coefficient list around c.
inline std::vector<Mat> diagonal_powers(const std::vector<int>& e) {
  const Index n = static_cast<Index>(e.size());
  int top = 0;
  for (int v : e) top = std::max(top, v);
  std::vector<Mat> out(static_cast<std::size_t>(top + 1), Mat::Zero(n, n));
  for (Index i = 0; i < n; ++i) out[static_cast<std::size_t>(e[static_cast<std::size_t>(i)])](i, i) = 1.0;
  return out;
}

/// A(z) = U(z) diag((z-1)^{e_i}) V(z) around 1 with U(z) = U0 + (z-1) U1 and
/// ||U0^{-1} U1|| = 0.4 (same for V), so det A has no other root within 2.5 of 1
/// and the pole order of A^{-1} at 1 is max e_i.
inline TaylorPencil structured_pencil(std::mt19937_64& rng, const std::vector<int>& e) {
  const Index n = static_cast<Index>(e.size());
  auto factor = [&]() {
    const Mat u0 = random_invertible(rng, n);
    Mat w = random_matrix(rng, n, n);
    Eigen::JacobiSVD<Mat> svd(w);
    w *= 0.4 / svd.singularValues()(0);
    return std::vector<Mat>{u0, u0 * w};
  };
  const std::vector<Mat> u = factor();
  const std::vector<Mat> v = factor();
  std::vector<Mat> coeffs = poly_mul(poly_mul(u, diagonal_powers(e)), v);
  return TaylorPencil(Complex(1.0, 0.0), std::move(coeffs));
}

/// Random exponents for a dim-n pencil whose pole order is exactly `order`.
inline std::vector<int> random_exponents(std::mt19937_64& rng, Index n, int order) {
  std::uniform_int_distribution<int> pick(0, std::max(order, 0));
  std::vector<int> e(static_cast<std::size_t>(n));
  for (int& v : e) v = pick(rng);
  std::uniform_int_distribution<Index> slot(0, n - 1);
  e[static_cast<std::size_t>(slot(rng))] = order;
  return e;
}

inline TaylorPencil scalar_pencil(Complex center, std::vector<Complex> c) {
  std::vector<Mat> coeffs;
  for (Complex v : c) coeffs.push_back(Mat::Constant(1, 1, v));
  return TaylorPencil(center, std::move(coeffs));
}

}  // namespace holo::testing
