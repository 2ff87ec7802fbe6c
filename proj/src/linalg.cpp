#include "holo/linalg.hpp"

#include "holo/errors.hpp"

#include <algorithm>
#include <random>
#include <string>

namespace holo {

namespace {

Mat random_gaussian(Index rows, Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Mat m(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      m(i, j) = Complex(re, im);
    }
  }
  return m;
}

Mat stack(const Subspace& a, const Subspace& b) {
  Mat s(a.ambient_dim(), a.dim() + b.dim());
  if (a.dim() > 0) s.leftCols(a.dim()) = a.basis();
  if (b.dim() > 0) s.rightCols(b.dim()) = b.basis();
  return s;
}

double condition_number(const Mat& m) {
  if (m.cols() == 0) return 1.0;
  Eigen::JacobiSVD<Mat> svd(m);
  const auto& s = svd.singularValues();
  const double smin = s(s.size() - 1);
  return smin > 0.0 ? s(0) / smin : std::numeric_limits<double>::infinity();
}

}  // namespace

double default_rank_tol(const Mat& a) {
  return static_cast<double>(std::max(a.rows(), a.cols())) * kEps;
}

void require_finite(const Mat& a, const char* what) {
  if (!a.allFinite()) {
    throw Error(ErrorKind::InvalidInput, std::string(what) + " has non-finite entries");
  }
}

RankReveal rank_reveal(const Mat& a, double rank_tol, double reference) {
  RankReveal out;
  Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  out.u = svd.matrixU();
  out.v = svd.matrixV();
  out.sigma = svd.singularValues();
  const double smax = out.sigma.size() > 0 ? out.sigma(0) : 0.0;
  out.threshold = rank_tol * (reference < 0.0 ? smax : reference);
  out.rank = 0;
  for (Index i = 0; i < out.sigma.size(); ++i) {
    if (out.sigma(i) > out.threshold) ++out.rank;
  }
  return out;
}

Subspace Subspace::zero(Index ambient) { return Subspace(ambient, Mat(ambient, 0)); }

Subspace Subspace::full(Index ambient) {
  return Subspace(ambient, Mat::Identity(ambient, ambient));
}

Subspace Subspace::span(const Mat& columns, double rank_tol) {
  if (columns.cols() == 0) return zero(columns.rows());
  const RankReveal rr = rank_reveal(columns, rank_tol);
  return Subspace(columns.rows(), rr.u.leftCols(rr.rank));
}

Subspace Subspace::from_orthonormal(Mat basis) {
  const Index d = basis.cols();
  if (d > basis.rows()) {
    throw Error(ErrorKind::InvalidInput, "basis has more columns than rows");
  }
  if (d > 0) {
    const double err = (basis.adjoint() * basis - Mat::Identity(d, d)).norm();
    if (err > 1e-12) {
      throw Error(ErrorKind::InvalidInput, "basis is not orthonormal (error " + std::to_string(err) + ")");
    }
  }
  const Index n = basis.rows();
  return Subspace(n, std::move(basis));
}

Mat Subspace::orthogonal_projector() const {
  if (dim() == 0) return Mat::Zero(ambient_, ambient_);
  return basis_ * basis_.adjoint();
}

double Subspace::containment_residual(const Mat& vectors) const {
  if (vectors.cols() == 0) return 0.0;
  Mat residual = vectors;
  if (dim() > 0) residual -= basis_ * (basis_.adjoint() * vectors);
  return residual.colwise().norm().maxCoeff();
}

Subspace kernel_basis(const Mat& a, double rank_tol) {
  const RankReveal rr = rank_reveal(a, rank_tol);
  return Subspace::from_orthonormal(rr.v.rightCols(a.cols() - rr.rank));
}

Subspace range_basis(const Mat& a, double rank_tol) {
  const RankReveal rr = rank_reveal(a, rank_tol);
  return Subspace::from_orthonormal(rr.u.leftCols(rr.rank));
}

Subspace orthogonal_complement(const Subspace& v) {
  const Index n = v.ambient_dim();
  if (v.dim() == 0) return Subspace::full(n);
  Eigen::JacobiSVD<Mat> svd(v.basis(), Eigen::ComputeFullU);
  return Subspace::from_orthonormal(svd.matrixU().rightCols(n - v.dim()));
}

Subspace complement_within(const Subspace& v, const Subspace& ambient) {
  if (!ambient.contains(v)) {
    throw Error(ErrorKind::NotNested, "subspace is not contained in the ambient subspace");
  }
  if (v.dim() == 0) return ambient;
  if (v.dim() == ambient.dim()) return Subspace::zero(ambient.ambient_dim());
  // Work in the coordinates of `ambient`, where its basis is the identity.
  const Mat coords = ambient.basis().adjoint() * v.basis();
  Eigen::JacobiSVD<Mat> svd(coords, Eigen::ComputeFullU);
  const Mat w = ambient.basis() * svd.matrixU().rightCols(ambient.dim() - v.dim());
  return Subspace::span(w);
}

Subspace random_complement(const Subspace& v, std::uint64_t seed) {
  return random_complement_within(v, Subspace::full(v.ambient_dim()), seed);
}

Subspace random_complement_within(const Subspace& v, const Subspace& ambient, std::uint64_t seed) {
  if (!ambient.contains(v)) {
    throw Error(ErrorKind::NotNested, "subspace is not contained in the ambient subspace");
  }
  const Index n = ambient.ambient_dim();
  const Index want = ambient.dim() - v.dim();
  if (want == 0) return Subspace::zero(n);
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 100; ++attempt) {
    const Mat directions = ambient.basis() * random_gaussian(ambient.dim(), want, rng);
    Subspace w = Subspace::span(directions);
    if (w.dim() != want) continue;
    // Condition is measured in the coordinates of `ambient`.
    Mat coords(ambient.dim(), ambient.dim());
    if (v.dim() > 0) coords.leftCols(v.dim()) = ambient.basis().adjoint() * v.basis();
    coords.rightCols(want) = ambient.basis().adjoint() * w.basis();
    if (condition_number(coords) < 1e6) return w;
  }
  throw Error(ErrorKind::DegenerateComplement, "no well-conditioned random complement after 100 attempts");
}

double stacked_min_singular_value(const Subspace& a, const Subspace& b) {
  const Mat s = stack(a, b);
  if (s.cols() == 0) return 1.0;
  Eigen::JacobiSVD<Mat> svd(s);
  return svd.singularValues()(svd.singularValues().size() - 1);
}

bool is_complementary(const Subspace& a, const Subspace& b, double tol) {
  if (a.ambient_dim() != b.ambient_dim()) return false;
  if (a.dim() + b.dim() != a.ambient_dim()) return false;
  return stacked_min_singular_value(a, b) > tol;
}

Projector projector_onto_along(const Subspace& onto, const Subspace& along) {
  if (!is_complementary(onto, along)) {
    throw Error(ErrorKind::NotComplementary, "subspaces are not complementary (dims " +
                                                 std::to_string(onto.dim()) + " + " +
                                                 std::to_string(along.dim()) + " in " +
                                                 std::to_string(onto.ambient_dim()) + ")");
  }
  const Index n = onto.ambient_dim();
  Projector p{Mat::Zero(n, n), onto, along};
  if (onto.dim() == 0) return p;
  // P = U * (rows of [U | W]^{-1} that pick out the U-coordinates).
  const Mat inv = stack(onto, along).partialPivLu().inverse();
  p.matrix = onto.basis() * inv.topRows(onto.dim());
  return p;
}

GenInverse generalized_inverse(const Mat& a, const Subspace& rc, const Subspace& kc, double rank_tol) {
  return generalized_inverse(a, range_basis(a, rank_tol), kernel_basis(a, rank_tol), rc, kc);
}

GenInverse generalized_inverse(const Mat& a, const Subspace& range, const Subspace& kernel,
                               const Subspace& rc, const Subspace& kc) {
  if (a.rows() != a.cols()) {
    throw Error(ErrorKind::InvalidInput, "generalized inverse requires a square operator");
  }
  const Index n = a.rows();
  const Projector p_rc = projector_onto_along(rc, range);
  const Projector p_kc = projector_onto_along(kc, kernel);

  GenInverse g{Mat::Zero(n, n), a, rc, kc, p_rc.matrix, p_kc.matrix};
  if (range.dim() == 0) return g;

  // A maps Kc bijectively onto R; in the orthonormal basis of R this is the
  // square matrix M = R^H A Kc. The inverse is Kc M^{-1} R^H (I - P_Rc).
  const Mat m = range.basis().adjoint() * a * kc.basis();
  const Mat id = Mat::Identity(n, n);
  g.matrix = kc.basis() * m.partialPivLu().solve(range.basis().adjoint() * (id - p_rc.matrix));
  return g;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace holo
