#pragma once

#include "holo/linalg.hpp"
#include "holo/pencil.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace holo {

/// Explicitly supplied complements. The second-order pieces are only consulted
/// when the analysis reaches the second-order branch.
struct ExplicitComplements {
  Subspace range_complement;    // Rc, complements ran A_0
  Subspace kernel_complement;   // Kc, complements ker A_0
  std::optional<Subspace> range1_complement;   // complements R + A_1 K, must lie in Rc
  std::optional<Subspace> kernel1_complement;  // complements K_1 inside K
};

/// How the complementary subspaces of the classification are chosen.
class ComplementPolicy {
 public:
  enum class Mode { Orthogonal, SeededRandom, Explicit };

  static ComplementPolicy orthogonal() { return ComplementPolicy(Mode::Orthogonal, 0, std::nullopt); }
  static ComplementPolicy seeded_random(std::uint64_t seed) {
    return ComplementPolicy(Mode::SeededRandom, seed, std::nullopt);
  }
  static ComplementPolicy explicit_choice(ExplicitComplements c) {
    return ComplementPolicy(Mode::Explicit, 0, std::move(c));
  }

  Mode mode() const { return mode_; }
  std::uint64_t seed() const { return seed_; }
  const ExplicitComplements& complements() const { return *explicit_; }
  std::string name() const;

 private:
  ComplementPolicy(Mode m, std::uint64_t seed, std::optional<ExplicitComplements> c)
      : mode_(m), seed_(seed), explicit_(std::move(c)) {}

  Mode mode_;
  std::uint64_t seed_;
  std::optional<ExplicitComplements> explicit_;
};

/// Default relative tolerance for every rank and invertibility decision of the
/// classification. Thresholds are rank_tol times a scale taken from the pencil.
inline constexpr double kDefaultPoleRankTol = 1e-9;

/// Classification of the singularity of A(z)^{-1} at the pencil center, with
/// every intermediate operator kept for the expansion and for diagnostics.
/// Maps restricted to subspaces are stored in the orthonormal bases of those
/// subspaces (rows: codomain coordinates, columns: domain coordinates).
struct PoleAnalysis {
  int order = 0;
  Complex center;
  Index dim = 0;
  double rank_tol = kDefaultPoleRankTol;
  std::string policy;
  /// A_0 ... A_3 at the center (zero-padded).
  std::vector<Mat> a;

  Subspace kernel;       // K = ker A_0
  Subspace range;        // R = ran A_0
  Subspace range_complement;   // Rc
  Subspace kernel_complement;  // Kc
  Mat p_rc;              // projection onto Rc along R
  Mat p_kc;              // projection onto Kc along K
  GenInverse a0g;
  Mat s1;                // P_Rc A_1 |_K : K -> Rc, dim(Rc) x dim(K)
  double s1_min_sv = 0.0;
  double s1_threshold = 0.0;
  /// rank[R | A_1 K] == n, decided independently of S_1.
  bool direct_sum_first = false;

  // Second-order branch (order 2, or the failed attempt that raised UnsupportedPoleOrder).
  Subspace kernel1;      // K_1 = {x in K : A_1 x in R}
  Subspace range1;       // R_1 = R + A_1 K
  Subspace range1_complement;   // R1c, contained in Rc
  Subspace kernel1_complement;  // K1c, complement of K_1 in K
  Mat p_r1c;             // projection onto R1c along R_1
  Mat a2dag;             // A_2 - A_1 A0g A_1
  Mat a3dag;             // A_3 - A_1 A0g A_1 A0g A_1
  Mat sdag;              // P_R1c A2dag |_K1 : K_1 -> R1c, dim(R1c) x dim(K_1)
  double sdag_min_sv = 0.0;
  double sdag_threshold = 0.0;
  bool direct_sum_second = false;
  /// S^g P_Rc as an ambient n x n matrix, S^g = (S_1|_K1c)^{-1}(I - P_R1c)|_Rc.
  Mat sg_p_rc;
};

/// Classifies the pole order of A(z)^{-1} at p.center(). Order 0 means A_0 is
/// invertible. Throws UnsupportedPoleOrder when neither S_1 nor S^dagger is
/// invertible.
PoleAnalysis analyze(const TaylorPencil& p, const ComplementPolicy& policy = ComplementPolicy::orthogonal(),
                     double rank_tol = kDefaultPoleRankTol);

/// Same as analyze, but returns the partially filled analysis (order set to 3)
/// instead of throwing when S^dagger is singular. Used by diagnostics that need
/// the failed second-order data.
PoleAnalysis analyze_no_throw(const TaylorPencil& p, const ComplementPolicy& policy = ComplementPolicy::orthogonal(),
                              double rank_tol = kDefaultPoleRankTol);

/// Laurent expansion N(z) = sum_{j >= -m} N_j (z - center)^j truncated at J.
class LaurentExpansion {
 public:
  LaurentExpansion(Complex center, int order, std::vector<Mat> coefficients_from_minus_m);

  Complex center() const { return center_; }
  int order() const { return order_; }
  int truncation() const { return static_cast<int>(coeffs_.size()) - order_ - 1; }
  Index dim() const { return coeffs_.front().rows(); }

  /// N_k for -order <= k <= truncation(). Throws OutOfRange otherwise.
  const Mat& coefficient(int k) const;
  /// N_{-m}, N_{-m+1}, ... in order.
  std::span<const Mat> all() const { return coeffs_; }

 private:
  Complex center_;
  int order_;
  std::vector<Mat> coeffs_;
};

/// G_j(l, m) = sum_{k=-m}^{j-1} N_k A_{j+l-k}.
/// `n_from_minus_m[i]` holds N_{i-m}; `a` is indexed from A_0 and treated as zero
/// past its end.
Mat g_accumulate(std::span<const Mat> n_from_minus_m, std::span<const Mat> a, int j, int l, int m);

/// Coefficients N_{-1}, N_0, ..., N_J for a simple pole. Throws WrongOrder.
LaurentExpansion laurent_simple(const PoleAnalysis& analysis, const TaylorPencil& p, int J);

/// Coefficients N_{-2}, N_{-1}, ..., N_J for a second-order pole. Throws WrongOrder.
LaurentExpansion laurent_second(const PoleAnalysis& analysis, const TaylorPencil& p, int J);

/// Dispatches on analysis.order; order 0 is rejected with WrongOrder.
LaurentExpansion laurent(const PoleAnalysis& analysis, const TaylorPencil& p, int J);

/// N_{-1} for a second-order pole in closed form
/// (Q_R S^g P_Rc - N_{-2} A_1 A0g) Q_L - Q_R A0g A_1 N_{-2} - N_{-2} A3dag N_{-2}.
/// Kept next to the constructive route so the two can be compared.
Mat second_order_n_minus1_closed_form(const PoleAnalysis& analysis, const Mat& n_minus2);

/// N_j (j >= 0) for a simple pole in closed form
/// (ind_j - G_j(0,1)) A0g (I - A_1 S_1^{-1} P_Rc) - G_j(1,1) S_1^{-1} P_Rc.
LaurentExpansion laurent_simple_closed_form(const PoleAnalysis& analysis, const TaylorPencil& p, int J);

/// N_j (j >= 0) for a second-order pole in closed form.
LaurentExpansion laurent_second_closed_form(const PoleAnalysis& analysis, const TaylorPencil& p, int J);

struct IdentityResidual {
  double right = 0.0;  // || sum_j N_{k-j} A_j - delta_{k0} I ||_F
  double left = 0.0;   // || sum_j A_j N_{k-j} - delta_{k0} I ||_F
  double max() const { return right > left ? right : left; }
};

/// Residual of the identity expansion at power k, for -m <= k <= J.
IdentityResidual identity_residual_parts(const LaurentExpansion& e, const TaylorPencil& p, int k);
double identity_residual(const LaurentExpansion& e, const TaylorPencil& p, int k);

}  // namespace holo
