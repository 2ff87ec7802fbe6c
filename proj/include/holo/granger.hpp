#pragma once

#include "holo/laurent.hpp"
#include "holo/pencil.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace holo {

/// X_t = sum_{j=1}^p Phi_j X_{t-j} + eps_t.
struct ARModel {
  std::vector<Mat> phi;

  Index dim() const { return phi.front().rows(); }
  std::size_t order() const { return phi.size(); }
};

/// Validates shapes (p >= 1, square, common size, finite) and returns the model.
ARModel make_ar_model(std::vector<Mat> phi);

struct NoiseSpec {
  Mat covariance;
  std::uint64_t seed = 0;
};

/// Throws InvalidInput unless the covariance is Hermitian PSD at 1e-10.
void validate_noise(const NoiseSpec& noise, Index dim);

/// Centered at 0 with coefficients I, -Phi_1, ..., -Phi_p.
TaylorPencil pencil_from_ar(const ARModel& m);

struct GrangerOptions {
  ComplementPolicy policy = ComplementPolicy::orthogonal();
  double rank_tol = kDefaultPoleRankTol;
  /// Roots of det A(z) in the closed unit disk must equal 1 within this.
  double unit_tol = 1e-8;
  /// Stop the MA series when ||Phi_j||_F < ma_rel_tol * max_k ||Phi_k||_F.
  double ma_rel_tol = 1e-12;
  std::size_t ma_cap = 10000;
  /// Optional hard limit on the number of MA coefficients returned.
  std::optional<std::size_t> max_ma;
};

/// Integration order and I(d) decomposition operators.
struct Representation {
  int d = 0;
  Mat n_minus2;  // zero when d = 1
  Mat n_minus1;
  /// Phi_0 ... Phi_J of the stationary component nu_t = sum_j Phi_j eps_{t-j}.
  std::vector<Mat> ma;
  double tail_bound = 0.0;
  Index dim_kernel = 0;
  Index dim_kernel1 = 0;

  int truncation() const { return static_cast<int>(ma.size()) - 1; }
};

/// Unit-disk root gate, singularity at 1, pole order and principal coefficients.
/// The returned representation has an empty MA list.
/// Throws AssumptionViolated, NotSingularAtOne or UnsupportedPoleOrder.
Representation classify_integration(const ARModel& m, const GrangerOptions& opts = {});

struct MaResult {
  std::vector<Mat> phi;
  double tail_bound = 0.0;
};

/// Taylor coefficients at 0 of the holomorphic part N^H(z) = N(z) - principal
/// part at 1. Computed from the companion matrix C of the model: Phi_j =
/// E (QC)^j Q E^T with Q the spectral projection of C away from eigenvalue 1
/// (along ker (C - I)^d). Stops once ||Phi_j||_F <= ma_rel_tol * max ||Phi_k||_F
/// for max(p, 2) consecutive terms; throws TailNotConverged when that has not
/// happened by ma_cap (unless max_ma truncates first).
MaResult ma_coefficients(const ARModel& m, const Representation& skeleton, const GrangerOptions& opts = {});

enum class MaWeights { Binomial, FallingFactorial };

/// Phi_j = sum_{k >= j} (-1)^{k-j} w_j(k) N_k from Laurent coefficients at 1,
/// with w_j(k) = C(k, j) (Binomial) or k(k-1)...(k-j+1) (FallingFactorial).
/// Only converges when N^H is holomorphic on a disk of radius > 1 around 1;
/// throws TailNotConverged unless the last summand is below tail_tol relative to
/// the largest one.
std::vector<Mat> ma_coefficients_from_laurent(const LaurentExpansion& at_one, int j_max, double tail_tol = 1e-13,
                                              MaWeights weights = MaWeights::Binomial);

/// classify_integration followed by ma_coefficients.
Representation represent(const ARModel& m, const GrangerOptions& opts = {});

/// Sample path X_0 ... X_T. Innovations cover eps_{1-burnin} ... eps_T; the
/// pre-sample values are X_{-burnin-p+1} ... X_{-burnin}.
struct SamplePath {
  std::size_t T = 0;
  std::size_t burnin = 0;
  std::vector<Vec> values;
  std::vector<Vec> innovations;
  std::vector<Vec> initial;

  /// eps_s, zero before the first stored draw.
  Vec innovation(long s) const;
};

/// Seeded Gaussian innovations with the given covariance, eps_{1-burnin}..eps_T.
std::vector<Vec> draw_innovations(const NoiseSpec& noise, Index dim, std::size_t T, std::size_t burnin);

/// Forward AR recursion. `initial` may be empty (zeros) or hold p vectors.
SamplePath simulate_ar(const ARModel& m, const NoiseSpec& noise, std::size_t T, std::size_t burnin,
                       const std::vector<Vec>& initial = {});

/// AR recursion driven by given innovations (same layout as SamplePath::innovations).
SamplePath simulate_ar_with(const ARModel& m, std::vector<Vec> innovations, std::size_t T, std::size_t burnin,
                            const std::vector<Vec>& initial = {});

/// X_t = tau0 + tau1 t + N_{-2} sum_{r<=t} sum_{s<=r} eps_s - N_{-1} sum_{s<=t} eps_s + nu_t,
/// nu_t truncated at the representation's MA length. Throws InsufficientHistory
/// when burnin < J.
SamplePath simulate_representation(const Representation& r, const std::vector<Vec>& innovations, std::size_t T,
                                   std::size_t burnin, const Vec& tau0, const Vec& tau1);

struct CrossValidation {
  int d = 0;
  /// max |X^AR_t - X^rep_t - fit_t| with a constant (d=1) or affine (d=2) least-squares fit.
  double residual = 0.0;
  /// Same, with tau solved from matching t = 0 (and t = 1).
  double matched_residual = 0.0;
  Vec tau0;
  Vec tau1;
  std::size_t ma_length = 0;
  double tail_bound = 0.0;
};

/// Simulates the AR recursion and the representation with shared innovations
/// and measures how far their difference is from the initial-value term.
CrossValidation cross_validate(const ARModel& m, const Representation& r, const NoiseSpec& noise, std::size_t T,
                               std::size_t burnin);

}  // namespace holo
