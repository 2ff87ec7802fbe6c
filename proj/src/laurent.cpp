#include "holo/laurent.hpp"

#include "holo/errors.hpp"

#include <algorithm>
#include <string>

namespace holo {

std::string ComplementPolicy::name() const {
  switch (mode_) {
    case Mode::Orthogonal: return "orthogonal";
    case Mode::SeededRandom: return "random";
    case Mode::Explicit: return "explicit";
  }
  return "unknown";
}

namespace {

double spectral_norm(const Mat& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Mat> svd(m);
  return svd.singularValues()(0);
}

double min_singular_value(const Mat& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Mat> svd(m);
  return svd.singularValues()(svd.singularValues().size() - 1);
}

Mat columns_of(const Subspace& a, const Mat& b) {
  Mat s(a.ambient_dim(), a.dim() + b.cols());
  if (a.dim() > 0) s.leftCols(a.dim()) = a.basis();
  if (b.cols() > 0) s.rightCols(b.cols()) = b;
  return s;
}

/// First-order complements (Rc, Kc) per policy.
std::pair<Subspace, Subspace> first_complements(const PoleAnalysis& an, const ComplementPolicy& policy) {
  switch (policy.mode()) {
    case ComplementPolicy::Mode::Orthogonal:
      return {orthogonal_complement(an.range), orthogonal_complement(an.kernel)};
    case ComplementPolicy::Mode::SeededRandom:
      return {random_complement(an.range, derive_seed(policy.seed(), 0)),
              random_complement(an.kernel, derive_seed(policy.seed(), 1))};
    case ComplementPolicy::Mode::Explicit:
      return {policy.complements().range_complement, policy.complements().kernel_complement};
  }
  return {};
}

void choose_second_complements(PoleAnalysis& an, const ComplementPolicy& policy) {
  const ExplicitComplements* given =
      policy.mode() == ComplementPolicy::Mode::Explicit ? &policy.complements() : nullptr;

  // R1c: start from any complement V1 of R_1 and map it into Rc with P_Rc.
  if (given && given->range1_complement) {
    const Subspace& v1 = *given->range1_complement;
    if (!an.range_complement.contains(v1)) {
      throw Error(ErrorKind::NotNested, "explicit R1 complement is not contained in the R complement");
    }
    an.range1_complement = v1;
  } else {
    const Subspace v1 = policy.mode() == ComplementPolicy::Mode::SeededRandom
                            ? random_complement(an.range1, derive_seed(policy.seed(), 2))
                            : orthogonal_complement(an.range1);
    an.range1_complement = Subspace::span(an.p_rc * v1.basis());
  }
  if (an.range1_complement.dim() != an.kernel1.dim()) {
    throw Error(ErrorKind::DegenerateComplement, "R1 complement dimension differs from dim K1");
  }

  if (given && given->kernel1_complement) {
    const Subspace& w1 = *given->kernel1_complement;
    if (!an.kernel.contains(w1)) {
      throw Error(ErrorKind::NotNested, "explicit K1 complement is not contained in K");
    }
    if (w1.dim() + an.kernel1.dim() != an.kernel.dim() || stacked_min_singular_value(an.kernel1, w1) <= 1e-10) {
      throw Error(ErrorKind::NotComplementary, "explicit K1 complement does not complement K1 in K");
    }
    an.kernel1_complement = w1;
  } else if (policy.mode() == ComplementPolicy::Mode::SeededRandom) {
    an.kernel1_complement = random_complement_within(an.kernel1, an.kernel, derive_seed(policy.seed(), 3));
  } else {
    an.kernel1_complement = complement_within(an.kernel1, an.kernel);
  }
}

PoleAnalysis analyze_impl(const TaylorPencil& p, const ComplementPolicy& policy, double rank_tol, bool throw_on_high) {
  PoleAnalysis an;
  an.center = p.center();
  an.dim = p.dim();
  an.rank_tol = rank_tol;
  an.policy = policy.name();
  an.a = p.padded(4);
  const Index n = an.dim;
  const Mat id = Mat::Identity(n, n);
  const Mat& a0 = an.a[0];
  const Mat& a1 = an.a[1];
  const Mat& a2 = an.a[2];
  const Mat& a3 = an.a[3];
  const double scale = p.scale();

  const RankReveal rr0 = rank_reveal(a0, rank_tol, scale);
  an.range = Subspace::from_orthonormal(rr0.u.leftCols(rr0.rank));
  an.kernel = Subspace::from_orthonormal(rr0.v.rightCols(n - rr0.rank));
  if (rr0.rank == n) {
    an.order = 0;
    return an;
  }

  auto [rc, kc] = first_complements(an, policy);
  an.range_complement = std::move(rc);
  an.kernel_complement = std::move(kc);
  an.a0g = generalized_inverse(a0, an.range, an.kernel, an.range_complement, an.kernel_complement);
  an.p_rc = an.a0g.range_complement_projector;
  an.p_kc = an.a0g.kernel_complement_projector;
  const Mat& g = an.a0g.matrix;
  const Mat& kb = an.kernel.basis();

  // S_1 in the bases of K and Rc. P_Rc maps into Rc, whose basis is orthonormal.
  an.s1 = an.range_complement.basis().adjoint() * an.p_rc * a1 * kb;
  const RankReveal rr1 = rank_reveal(an.s1, rank_tol, scale * std::max(1.0, spectral_norm(an.p_rc)));
  an.s1_min_sv = min_singular_value(an.s1);
  an.s1_threshold = rr1.threshold;
  {
    const RankReveal ds = rank_reveal(columns_of(an.range, a1 * kb), rank_tol, std::max(1.0, scale));
    an.direct_sum_first = ds.rank == n;
  }
  const Index k = an.kernel.dim();
  if (rr1.rank == k) {
    an.order = 1;
    return an;
  }

  // K_1 = ker S_1 mapped back through K's basis; R_1 = R + (range of S_1 in Rc).
  an.kernel1 = Subspace::from_orthonormal(kb * rr1.v.rightCols(k - rr1.rank));
  an.range1 = Subspace::span(columns_of(an.range, an.range_complement.basis() * rr1.u.leftCols(rr1.rank)));
  if (an.range1.dim() != n - an.kernel1.dim()) {
    throw Error(ErrorKind::DegenerateComplement, "dim R_1 inconsistent with dim K_1");
  }
  choose_second_complements(an, policy);
  an.p_r1c = projector_onto_along(an.range1_complement, an.range1).matrix;

  an.a2dag = a2 - a1 * g * a1;
  an.a3dag = a3 - a1 * g * a1 * g * a1;
  const Mat& k1b = an.kernel1.basis();
  an.sdag = an.range1_complement.basis().adjoint() * an.p_r1c * an.a2dag * k1b;
  const double scale2 = std::max({scale, spectral_norm(a1) * spectral_norm(a1) * spectral_norm(g),
                                  spectral_norm(an.a2dag)});
  const RankReveal rr2 = rank_reveal(an.sdag, rank_tol, scale2 * std::max(1.0, spectral_norm(an.p_r1c)));
  an.sdag_min_sv = min_singular_value(an.sdag);
  an.sdag_threshold = rr2.threshold;
  {
    const RankReveal ds = rank_reveal(columns_of(an.range1, an.a2dag * k1b), rank_tol, std::max(1.0, scale2));
    an.direct_sum_second = ds.rank == n;
  }

  // S^g P_Rc: for y, find x in K1c with P_Rc A_1 x = (I - P_R1c) P_Rc y.
  if (an.kernel1_complement.dim() > 0) {
    const Mat t = an.p_rc * a1 * an.kernel1_complement.basis();
    const Mat t_pinv = t.completeOrthogonalDecomposition().pseudoInverse();
    an.sg_p_rc = an.kernel1_complement.basis() * t_pinv * (id - an.p_r1c) * an.p_rc;
  } else {
    an.sg_p_rc = Mat::Zero(n, n);
  }

  if (rr2.rank < an.kernel1.dim()) {
    an.order = 3;
    if (throw_on_high) {
      throw Error(ErrorKind::UnsupportedPoleOrder,
                  "S-dagger is not invertible: pole order >= 3 or A(z) not invertible near the center");
    }
    return an;
  }
  an.order = 2;
  return an;
}

void require_center(const PoleAnalysis& an, const TaylorPencil& p) {
  if (an.center != p.center() || an.dim != p.dim()) {
    throw Error(ErrorKind::InvalidInput, "analysis does not belong to this pencil");
  }
}

Mat indicator(int j, Index n) { return j == 0 ? Mat(Mat::Identity(n, n)) : Mat(Mat::Zero(n, n)); }

}  // namespace

PoleAnalysis analyze(const TaylorPencil& p, const ComplementPolicy& policy, double rank_tol) {
  return analyze_impl(p, policy, rank_tol, true);
}

PoleAnalysis analyze_no_throw(const TaylorPencil& p, const ComplementPolicy& policy, double rank_tol) {
  return analyze_impl(p, policy, rank_tol, false);
}

LaurentExpansion::LaurentExpansion(Complex center, int order, std::vector<Mat> coefficients_from_minus_m)
    : center_(center), order_(order), coeffs_(std::move(coefficients_from_minus_m)) {
  if (order_ < 1 || static_cast<int>(coeffs_.size()) < order_ + 1) {
    throw Error(ErrorKind::InvalidInput, "expansion needs the principal part and N_0");
  }
}

const Mat& LaurentExpansion::coefficient(int k) const {
  if (k < -order_ || k > truncation()) {
    throw Error(ErrorKind::OutOfRange, "coefficient index " + std::to_string(k) + " outside [" +
                                           std::to_string(-order_) + ", " + std::to_string(truncation()) + "]");
  }
  return coeffs_[static_cast<std::size_t>(k + order_)];
}

Mat g_accumulate(std::span<const Mat> n_from_minus_m, std::span<const Mat> a, int j, int l, int m) {
  const Index n = a.front().rows();
  Mat acc = Mat::Zero(n, n);
  if (j - 1 < -m) return acc;
  if (static_cast<int>(n_from_minus_m.size()) < j + m) {
    throw Error(ErrorKind::OutOfRange, "G_j needs N_k up to k = j - 1");
  }
  const int top = static_cast<int>(a.size()) - 1;
  // A_{j+l-k} vanishes once j + l - k exceeds the pencil degree.
  for (int k = std::max(-m, j + l - top); k <= j - 1; ++k) {
    acc += n_from_minus_m[static_cast<std::size_t>(k + m)] * a[static_cast<std::size_t>(j + l - k)];
  }
  return acc;
}

LaurentExpansion laurent_simple(const PoleAnalysis& an, const TaylorPencil& p, int J) {
  if (an.order != 1) throw Error(ErrorKind::WrongOrder, "simple-pole expansion needs order 1");
  require_center(an, p);
  if (J < 0) throw Error(ErrorKind::OutOfRange, "truncation index must be nonnegative");
  const Index n = an.dim;
  const std::vector<Mat> a = p.padded(static_cast<std::size_t>(J) + 3);
  const Mat& g = an.a0g.matrix;
  const Mat& kb = an.kernel.basis();
  const Mat s1_inv = an.s1.inverse();
  // S_1^{-1} P_Rc, with codomain re-embedded into C^n.
  const Mat s1inv_p = kb * s1_inv * an.range_complement.basis().adjoint() * an.p_rc;

  std::vector<Mat> coeffs;
  coeffs.reserve(static_cast<std::size_t>(J) + 2);
  coeffs.push_back(s1inv_p);
  for (int j = 0; j <= J; ++j) {
    const Mat g0 = g_accumulate(coeffs, a, j, 0, 1);
    const Mat g1 = g_accumulate(coeffs, a, j, 1, 1);
    // N_j (I - P_Rc) from the A_0 relation, then N_j P_Rc through S_1.
    const Mat off_rc = (indicator(j, n) - g0) * g;
    const Mat on_rc = (-g1 - off_rc * a[1]) * kb * s1_inv * an.range_complement.basis().adjoint() * an.p_rc;
    coeffs.push_back(off_rc + on_rc);
  }
  return LaurentExpansion(an.center, 1, std::move(coeffs));
}

LaurentExpansion laurent_simple_closed_form(const PoleAnalysis& an, const TaylorPencil& p, int J) {
  if (an.order != 1) throw Error(ErrorKind::WrongOrder, "simple-pole expansion needs order 1");
  require_center(an, p);
  const Index n = an.dim;
  const std::vector<Mat> a = p.padded(static_cast<std::size_t>(J) + 3);
  const Mat& g = an.a0g.matrix;
  const Mat s1inv_p = an.kernel.basis() * an.s1.inverse() * an.range_complement.basis().adjoint() * an.p_rc;
  const Mat right = Mat::Identity(n, n) - a[1] * s1inv_p;
  std::vector<Mat> coeffs{s1inv_p};
  for (int j = 0; j <= J; ++j) {
    const Mat g0 = g_accumulate(coeffs, a, j, 0, 1);
    const Mat g1 = g_accumulate(coeffs, a, j, 1, 1);
    coeffs.push_back((indicator(j, n) - g0) * g * right - g1 * s1inv_p);
  }
  return LaurentExpansion(an.center, 1, std::move(coeffs));
}

namespace {

struct SecondOrderPieces {
  Mat sdag_inv_p;  // (S^dagger)^{-1} P_R1c, embedded
  Mat sdag_inv;
};

SecondOrderPieces second_pieces(const PoleAnalysis& an) {
  SecondOrderPieces s;
  s.sdag_inv = an.sdag.inverse();
  s.sdag_inv_p = an.kernel1.basis() * s.sdag_inv * an.range1_complement.basis().adjoint() * an.p_r1c;
  return s;
}

/// Completes N from its pieces on (I - P_Rc) and (I - P_R1c) P_Rc using the
/// relation N A2dag |_K1 = rhs, which pins down N P_R1c.
Mat assemble_second(const PoleAnalysis& an, const Mat& off_rc, const Mat& mid, const Mat& rhs_on_k1,
                    const Mat& sdag_inv) {
  const Mat& k1b = an.kernel1.basis();
  const Mat rest = rhs_on_k1 - (off_rc + mid) * an.a2dag * k1b;
  const Mat on_r1c = rest * sdag_inv * an.range1_complement.basis().adjoint() * an.p_r1c;
  return off_rc + mid + on_r1c;
}

}  // namespace

LaurentExpansion laurent_second(const PoleAnalysis& an, const TaylorPencil& p, int J) {
  if (an.order != 2) throw Error(ErrorKind::WrongOrder, "second-order expansion needs order 2");
  require_center(an, p);
  if (J < 0) throw Error(ErrorKind::OutOfRange, "truncation index must be nonnegative");
  const Index n = an.dim;
  const Mat id = Mat::Identity(n, n);
  const std::vector<Mat> a = p.padded(static_cast<std::size_t>(J) + 4);
  const Mat& g = an.a0g.matrix;
  const Mat& k1b = an.kernel1.basis();
  const SecondOrderPieces sp = second_pieces(an);

  std::vector<Mat> coeffs;
  coeffs.reserve(static_cast<std::size_t>(J) + 3);
  const Mat n_m2 = sp.sdag_inv_p;
  coeffs.push_back(n_m2);

  {
    const Mat off_rc = -n_m2 * a[1] * g;
    const Mat mid = (id - n_m2 * an.a2dag) * an.sg_p_rc;
    const Mat rhs = (-n_m2 * (an.a3dag - an.a2dag * g * a[1]) - g * a[1]) * k1b;
    coeffs.push_back(assemble_second(an, off_rc, mid, rhs, sp.sdag_inv));
  }

  for (int j = 0; j <= J; ++j) {
    const Mat g0 = g_accumulate(coeffs, a, j, 0, 2);
    const Mat g1 = g_accumulate(coeffs, a, j, 1, 2);
    const Mat g2 = g_accumulate(coeffs, a, j, 2, 2);
    const Mat off_rc = (indicator(j, n) - g0) * g;
    const Mat mid = (-g1 - off_rc * a[1]) * an.sg_p_rc;
    const Mat rhs = (-g2 + g1 * g * a[1]) * k1b;
    coeffs.push_back(assemble_second(an, off_rc, mid, rhs, sp.sdag_inv));
  }
  return LaurentExpansion(an.center, 2, std::move(coeffs));
}

Mat second_order_n_minus1_closed_form(const PoleAnalysis& an, const Mat& n_m2) {
  const Index n = an.dim;
  const Mat id = Mat::Identity(n, n);
  const Mat& g = an.a0g.matrix;
  const Mat& a1 = an.a[1];
  const Mat q_l = id - an.a2dag * n_m2;
  const Mat q_r = id - n_m2 * an.a2dag;
  return (q_r * an.sg_p_rc - n_m2 * a1 * g) * q_l - q_r * g * a1 * n_m2 - n_m2 * an.a3dag * n_m2;
}

LaurentExpansion laurent_second_closed_form(const PoleAnalysis& an, const TaylorPencil& p, int J) {
  if (an.order != 2) throw Error(ErrorKind::WrongOrder, "second-order expansion needs order 2");
  require_center(an, p);
  const Index n = an.dim;
  const Mat id = Mat::Identity(n, n);
  const std::vector<Mat> a = p.padded(static_cast<std::size_t>(J) + 4);
  const Mat& g = an.a0g.matrix;
  const SecondOrderPieces sp = second_pieces(an);
  const Mat n_m2 = sp.sdag_inv_p;
  const Mat q_l = id - an.a2dag * n_m2;
  std::vector<Mat> coeffs{n_m2, second_order_n_minus1_closed_form(an, n_m2)};
  for (int j = 0; j <= J; ++j) {
    const Mat g0 = g_accumulate(coeffs, a, j, 0, 2);
    const Mat g1 = g_accumulate(coeffs, a, j, 1, 2);
    const Mat g2 = g_accumulate(coeffs, a, j, 2, 2);
    coeffs.push_back((g1 * g * a[1] - g2) * n_m2 + (indicator(j, n) - g0) * g * (id - a[1] * an.sg_p_rc) * q_l -
                     g1 * an.sg_p_rc * q_l);
  }
  return LaurentExpansion(an.center, 2, std::move(coeffs));
}

LaurentExpansion laurent(const PoleAnalysis& an, const TaylorPencil& p, int J) {
  switch (an.order) {
    case 1: return laurent_simple(an, p, J);
    case 2: return laurent_second(an, p, J);
    case 0: throw Error(ErrorKind::WrongOrder, "A(z) is invertible at the center; no Laurent principal part");
    default: throw Error(ErrorKind::UnsupportedPoleOrder, "pole order >= 3 is not supported");
  }
}

IdentityResidual identity_residual_parts(const LaurentExpansion& e, const TaylorPencil& p, int k) {
  const int m = e.order();
  if (k < -m || k > e.truncation()) {
    throw Error(ErrorKind::OutOfRange, "identity residual index " + std::to_string(k) + " outside [" +
                                           std::to_string(-m) + ", " + std::to_string(e.truncation()) + "]");
  }
  const Index n = e.dim();
  Mat right = k == 0 ? Mat(-Mat::Identity(n, n)) : Mat(Mat::Zero(n, n));
  Mat left = right;
  for (int j = 0; j <= m + k; ++j) {
    const Mat aj = p.coefficient(static_cast<std::size_t>(j));
    right += e.coefficient(k - j) * aj;
    left += aj * e.coefficient(k - j);
  }
  return {right.norm(), left.norm()};
}

double identity_residual(const LaurentExpansion& e, const TaylorPencil& p, int k) {
  return identity_residual_parts(e, p, k).max();
}

}  // namespace holo
