#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <limits>

namespace holo {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using Index = Eigen::Index;

inline constexpr double kEps = std::numeric_limits<double>::epsilon();

/// Relative rank tolerance used when the caller does not supply one:
/// max(rows, cols) * machine epsilon (multiplied by sigma_max at the point of use).
double default_rank_tol(const Mat& a);

/// Throws InvalidInput unless every entry is finite.
void require_finite(const Mat& a, const char* what);

/// Result of the one rank-revealing factorization every rank decision goes
/// through. `rank` counts singular values strictly above `threshold`.
struct RankReveal {
  Mat u;
  Eigen::VectorXd sigma;
  Mat v;
  Index rank = 0;
  double threshold = 0.0;
};

/// Full SVD of `a`. Singular values at or below rank_tol * reference are
/// treated as zero; a negative reference means sigma_max(a).
RankReveal rank_reveal(const Mat& a, double rank_tol, double reference = -1.0);

/// A subspace of C^n stored through an orthonormal basis (n x dim).
class Subspace {
 public:
  Subspace() = default;

  static Subspace zero(Index ambient);
  static Subspace full(Index ambient);
  /// Orthonormal basis of the column span of `columns`, rank decided relative
  /// to the largest singular value.
  static Subspace span(const Mat& columns, double rank_tol = 1e-12);
  /// Wraps an already-orthonormal basis; throws InvalidInput if it is not.
  static Subspace from_orthonormal(Mat basis);

  Index ambient_dim() const { return ambient_; }
  Index dim() const { return basis_.cols(); }
  const Mat& basis() const { return basis_; }

  /// Orthogonal projector basis * basis^H.
  Mat orthogonal_projector() const;
  /// Largest residual ||x - Q Q^H x|| over the columns of `vectors`.
  double containment_residual(const Mat& vectors) const;
  bool contains(const Mat& vectors, double tol = 1e-10) const {
    return containment_residual(vectors) < tol;
  }
  bool contains(const Subspace& other, double tol = 1e-10) const {
    return contains(other.basis(), tol);
  }

 private:
  Subspace(Index ambient, Mat basis) : ambient_(ambient), basis_(std::move(basis)) {}

  Index ambient_ = 0;
  Mat basis_;
};

/// Idempotent map with declared range (`onto`) and kernel (`along`).
struct Projector {
  Mat matrix;
  Subspace onto;
  Subspace along;
};

/// Generalized inverse of `source` determined by a complement of its range and a
/// complement of its kernel.
struct GenInverse {
  Mat matrix;
  Mat source;
  Subspace range_complement;
  Subspace kernel_complement;
  /// Projection onto range_complement along ran(source).
  Mat range_complement_projector;
  /// Projection onto kernel_complement along ker(source).
  Mat kernel_complement_projector;
};

Subspace kernel_basis(const Mat& a, double rank_tol);
Subspace range_basis(const Mat& a, double rank_tol);

Subspace orthogonal_complement(const Subspace& v);

/// Complement of `v` inside `ambient`; orthogonal to `v` within `ambient`.
/// Throws NotNested if v is not contained in ambient.
Subspace complement_within(const Subspace& v, const Subspace& ambient);

/// Seeded pseudo-random complement of `v` in the full space. Retries until the
/// stacked basis [v | w] has condition number below 1e6 (100 attempts).
Subspace random_complement(const Subspace& v, std::uint64_t seed);

/// Seeded pseudo-random complement of `v` inside `ambient`.
Subspace random_complement_within(const Subspace& v, const Subspace& ambient, std::uint64_t seed);

/// Smallest singular value of [a.basis | b.basis]; zero-dimensional pieces are skipped.
double stacked_min_singular_value(const Subspace& a, const Subspace& b);

/// True when dim(a) + dim(b) = ambient and the stacked basis is nonsingular.
bool is_complementary(const Subspace& a, const Subspace& b, double tol = 1e-10);

/// The projection onto `onto` along `along`. Throws NotComplementary.
Projector projector_onto_along(const Subspace& onto, const Subspace& along);

/// Generalized inverse (A|_{Kc})^{-1}(I - P_{Rc}). Throws NotComplementary if
/// Rc does not complement ran A or Kc does not complement ker A.
GenInverse generalized_inverse(const Mat& a, const Subspace& rc, const Subspace& kc, double rank_tol);

/// Same, with ran A and ker A already decided by the caller.
GenInverse generalized_inverse(const Mat& a, const Subspace& range, const Subspace& kernel,
                               const Subspace& rc, const Subspace& kc);

/// Mixes a base seed with a stream index (splitmix64 finalizer).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

}  // namespace holo
