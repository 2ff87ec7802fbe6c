#include "holo/pencil.hpp"

#include "holo/errors.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace holo {

TaylorPencil::TaylorPencil(Complex center, std::vector<Mat> coefficients)
    : center_(center), coeffs_(std::move(coefficients)) {
  if (coeffs_.empty()) throw Error(ErrorKind::InvalidInput, "pencil needs at least one coefficient");
  if (!std::isfinite(center_.real()) || !std::isfinite(center_.imag())) {
    throw Error(ErrorKind::InvalidInput, "pencil center is not finite");
  }
  const Index n = coeffs_.front().rows();
  if (n < 1) throw Error(ErrorKind::InvalidInput, "pencil dimension must be positive");
  bool any_nonzero = false;
  for (const Mat& a : coeffs_) {
    if (a.rows() != n || a.cols() != n) {
      throw Error(ErrorKind::InvalidInput, "pencil coefficients must be square with identical dimension");
    }
    require_finite(a, "pencil coefficient");
    any_nonzero = any_nonzero || a.norm() > 0.0;
  }
  if (!any_nonzero) throw Error(ErrorKind::InvalidInput, "pencil has only zero coefficients");
}

Mat TaylorPencil::coefficient(std::size_t j) const {
  if (j < coeffs_.size()) return coeffs_[j];
  return Mat::Zero(dim(), dim());
}

std::vector<Mat> TaylorPencil::padded(std::size_t count) const {
  std::vector<Mat> out;
  out.reserve(std::max(count, coeffs_.size()));
  for (std::size_t j = 0; j < std::max(count, coeffs_.size()); ++j) out.push_back(coefficient(j));
  return out;
}

double TaylorPencil::scale() const {
  double s = 0.0;
  for (const Mat& a : coeffs_) {
    Eigen::JacobiSVD<Mat> svd(a);
    s = std::max(s, svd.singularValues()(0));
  }
  return s;
}

Mat evaluate(const TaylorPencil& p, Complex z) {
  const Complex w = z - p.center();
  const auto& c = p.coefficients();
  Mat acc = c.back();
  for (std::size_t j = c.size() - 1; j-- > 0;) acc = acc * w + c[j];
  return acc;
}

TaylorPencil recenter(const TaylorPencil& p, Complex new_center) {
  const Complex delta = new_center - p.center();
  const auto& a = p.coefficients();
  const std::size_t deg = a.size() - 1;
  std::vector<Mat> b(a.size(), Mat::Zero(p.dim(), p.dim()));
  for (std::size_t j = 0; j <= deg; ++j) {
    // B_j = sum_{m >= j} C(m, j) A_m delta^(m - j)
    double binom = 1.0;
    Complex power(1.0, 0.0);
    for (std::size_t m = j; m <= deg; ++m) {
      if (m > j) {
        binom = binom * static_cast<double>(m) / static_cast<double>(m - j);
        power *= delta;
      }
      b[j] += (binom * power) * a[m];
    }
  }
  return TaylorPencil(new_center, std::move(b));
}

TaylorPencil rescale(const TaylorPencil& p, Complex factor) {
  std::vector<Mat> b = p.coefficients();
  Complex power(1.0, 0.0);
  for (Mat& m : b) {
    m *= power;
    power *= factor;
  }
  return TaylorPencil(p.center(), std::move(b));
}

namespace {

bool numerically_singular(const Mat& m) {
  Eigen::JacobiSVD<Mat> svd(m);
  const auto& s = svd.singularValues();
  return s(0) == 0.0 || s(s.size() - 1) <= 1e-13 * s(0);
}

void require_not_identically_singular(const TaylorPencil& p) {
  // Two fixed, irrational-looking probe points; det A(z) = 0 at both is
  // taken as det A identically zero.
  const Complex probes[] = {Complex(0.6180339887, 0.3819660113), Complex(-0.4142135624, 0.7320508076)};
  for (const Complex& offset : probes) {
    if (!numerically_singular(evaluate(p, p.center() + offset))) return;
  }
  throw Error(ErrorKind::IdenticallySingular, "det A(z) vanishes identically");
}

std::vector<Complex> companion_eigenvalues(const std::vector<Mat>& a) {
  const std::size_t deg = a.size() - 1;
  const Index n = a.front().rows();
  const Index size = n * static_cast<Index>(deg);
  Mat c = Mat::Zero(size, size);
  Mat b = Mat::Identity(size, size);
  b.topLeftCorner(n, n) = a[deg];
  for (std::size_t i = 0; i < deg; ++i) {
    c.block(0, static_cast<Index>(i) * n, n, n) = -a[deg - 1 - i];
  }
  for (std::size_t i = 1; i < deg; ++i) {
    c.block(static_cast<Index>(i) * n, static_cast<Index>(i - 1) * n, n, n) = Mat::Identity(n, n);
  }
  std::vector<Complex> alpha(static_cast<std::size_t>(size));
  std::vector<Complex> beta(static_cast<std::size_t>(size));
  const lapack_int info = LAPACKE_zggev(LAPACK_COL_MAJOR, 'N', 'N', static_cast<lapack_int>(size), c.data(),
                                        static_cast<lapack_int>(size), b.data(), static_cast<lapack_int>(size),
                                        alpha.data(), beta.data(), nullptr, 1, nullptr, 1);
  if (info != 0) {
    throw Error(ErrorKind::InvalidInput, "generalized eigenvalue solver failed (info " + std::to_string(info) + ")");
  }
  std::vector<Complex> out;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    // Infinite eigenvalues come from a singular leading coefficient.
    if (std::abs(beta[i]) <= 1e-14 * std::abs(alpha[i]) || std::abs(beta[i]) == 0.0) continue;
    out.push_back(alpha[i] / beta[i]);
  }
  return out;
}

std::vector<Root> cluster(std::vector<Complex> values, double tol) {
  // Single linkage; an eigenvalue joins a cluster if it is within tol of any member.
  const std::size_t count = values.size();
  std::vector<std::size_t> parent(count);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = i + 1; j < count; ++j) {
      const double scale = std::max({1.0, std::abs(values[i]), std::abs(values[j])});
      if (std::abs(values[i] - values[j]) <= tol * scale) parent[find(i)] = find(j);
    }
  }
  std::vector<Root> roots;
  std::vector<std::size_t> owner(count, count);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t r = find(i);
    if (owner[r] == count) {
      owner[r] = roots.size();
      roots.push_back({Complex(0.0, 0.0), 0});
    }
    Root& root = roots[owner[r]];
    root.value += values[i];
    root.multiplicity += 1;
  }
  for (Root& r : roots) r.value /= static_cast<double>(r.multiplicity);
  std::sort(roots.begin(), roots.end(), [](const Root& x, const Root& y) {
    if (std::abs(x.value) != std::abs(y.value)) return std::abs(x.value) < std::abs(y.value);
    return std::arg(x.value) < std::arg(y.value);
  });
  return roots;
}

}  // namespace

std::vector<Root> spectrum_in_disk(const TaylorPencil& p, double radius, const SpectrumOptions& opts) {
  require_not_identically_singular(p);
  std::vector<Mat> a = p.coefficients();
  while (a.size() > 1 && a.back().norm() == 0.0) a.pop_back();
  if (a.size() == 1) return {};

  std::vector<Complex> eig = companion_eigenvalues(a);
  for (Complex& w : eig) w += p.center();
  std::vector<Root> all = cluster(std::move(eig), opts.cluster_tol);
  std::vector<Root> inside;
  for (const Root& r : all) {
    if (std::abs(r.value) <= radius + opts.boundary_tol) inside.push_back(r);
  }
  return inside;
}

Assumption2Report check_assumption2(const TaylorPencil& p, double unit_tol) {
  Assumption2Report report;
  report.roots = spectrum_in_disk(p, 1.0);
  for (const Root& r : report.roots) {
    if (std::abs(r.value - Complex(1.0, 0.0)) > unit_tol) report.offending.push_back(r);
  }
  report.pass = report.offending.empty();
  return report;
}

}  // namespace holo
