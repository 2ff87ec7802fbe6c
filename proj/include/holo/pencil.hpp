#pragma once

#include "holo/linalg.hpp"

#include <vector>

namespace holo {

/// Polynomial matrix pencil A(z) = sum_j A_j (z - center)^j.
class TaylorPencil {
 public:
  TaylorPencil(Complex center, std::vector<Mat> coefficients);

  Complex center() const { return center_; }
  Index dim() const { return coeffs_.front().rows(); }
  /// Highest stored index (coefficients may be zero matrices).
  std::size_t degree() const { return coeffs_.size() - 1; }
  const std::vector<Mat>& coefficients() const { return coeffs_; }

  /// A_j, or the zero matrix when j exceeds the stored degree.
  Mat coefficient(std::size_t j) const;
  /// A_0 ... A_{count-1}, zero-padded.
  std::vector<Mat> padded(std::size_t count) const;

  /// Largest spectral norm among the stored coefficients.
  double scale() const;

 private:
  Complex center_;
  std::vector<Mat> coeffs_;
};

/// Horner evaluation of A(z).
Mat evaluate(const TaylorPencil& p, Complex z);

/// Exact re-expansion around `new_center` (binomial recentering).
TaylorPencil recenter(const TaylorPencil& p, Complex new_center);

/// Pencil in the rescaled variable w, A(center + factor * w); coefficients A_j factor^j.
TaylorPencil rescale(const TaylorPencil& p, Complex factor);

struct Root {
  Complex value;
  int multiplicity = 1;
};

struct SpectrumOptions {
  /// Companion eigenvalues closer than this (relative to max(1,|z|)) are merged
  /// into one root whose value is the cluster mean.
  double cluster_tol = 1e-4;
  /// Roots with |z| <= radius + boundary_tol count as inside.
  double boundary_tol = 1e-8;
};

/// Roots of det A(z) with |z| <= radius, from a companion linearization solved
/// as a generalized eigenvalue problem. Sorted by modulus, then argument.
/// Throws IdenticallySingular when det A(z) vanishes identically.
std::vector<Root> spectrum_in_disk(const TaylorPencil& p, double radius, const SpectrumOptions& opts = {});

struct Assumption2Report {
  bool pass = false;
  /// Roots in the closed unit disk.
  std::vector<Root> roots;
  /// Those not equal to 1 within `unit_tol`.
  std::vector<Root> offending;
};

/// Every root of det A(z) in the closed unit disk must equal 1.
Assumption2Report check_assumption2(const TaylorPencil& p, double unit_tol = 1e-8);

}  // namespace holo
