#include "holo/granger.hpp"

#include "holo/errors.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace holo {

ARModel make_ar_model(std::vector<Mat> phi) {
  if (phi.empty()) throw Error(ErrorKind::InvalidInput, "AR model needs at least one lag");
  const Index n = phi.front().rows();
  if (n < 1) throw Error(ErrorKind::InvalidInput, "AR dimension must be positive");
  for (const Mat& m : phi) {
    if (m.rows() != n || m.cols() != n) {
      throw Error(ErrorKind::InvalidInput, "AR coefficients must be square with identical dimension");
    }
    require_finite(m, "AR coefficient");
  }
  return ARModel{std::move(phi)};
}

void validate_noise(const NoiseSpec& noise, Index dim) {
  const Mat& c = noise.covariance;
  if (c.rows() != dim || c.cols() != dim) {
    throw Error(ErrorKind::InvalidInput, "noise covariance must be " + std::to_string(dim) + "x" + std::to_string(dim));
  }
  require_finite(c, "noise covariance");
  const double scale = std::max(1.0, c.norm());
  if ((c - c.adjoint()).norm() > 1e-10 * scale) {
    throw Error(ErrorKind::InvalidInput, "noise covariance is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Mat> eig(c);
  if (eig.eigenvalues().minCoeff() < -1e-10 * scale) {
    throw Error(ErrorKind::InvalidInput, "noise covariance is not positive semidefinite");
  }
}

TaylorPencil pencil_from_ar(const ARModel& m) {
  std::vector<Mat> coeffs;
  coeffs.reserve(m.order() + 1);
  coeffs.push_back(Mat::Identity(m.dim(), m.dim()));
  for (const Mat& phi : m.phi) coeffs.push_back(-phi);
  return TaylorPencil(Complex(0.0, 0.0), std::move(coeffs));
}

Representation classify_integration(const ARModel& m, const GrangerOptions& opts) {
  const TaylorPencil p = pencil_from_ar(m);
  const Assumption2Report gate = check_assumption2(p, opts.unit_tol);
  if (!gate.pass) {
    std::ostringstream msg;
    msg.precision(12);
    msg << "det A(z) has roots in the closed unit disk other than 1:";
    for (const Root& r : gate.offending) msg << " (" << r.value.real() << ", " << r.value.imag() << ")";
    throw Error(ErrorKind::AssumptionViolated, msg.str());
  }
  const TaylorPencil at_one = recenter(p, Complex(1.0, 0.0));
  const PoleAnalysis an = analyze(at_one, opts.policy, opts.rank_tol);
  if (an.order == 0) {
    throw Error(ErrorKind::NotSingularAtOne, "A(1) is invertible; no unit-root singularity to represent");
  }
  const LaurentExpansion e = laurent(an, at_one, 0);
  Representation r;
  r.d = an.order;
  r.n_minus1 = e.coefficient(-1);
  r.n_minus2 = r.d == 2 ? e.coefficient(-2) : Mat::Zero(m.dim(), m.dim());
  r.dim_kernel = an.kernel.dim();
  r.dim_kernel1 = an.kernel1.dim();
  return r;
}

MaResult ma_coefficients(const ARModel& m, const Representation& skeleton, const GrangerOptions& opts) {
  const Index n = m.dim();
  const std::size_t p = m.order();
  const Index np = n * static_cast<Index>(p);
  const std::size_t window = std::max<std::size_t>(p, 2);
  const std::size_t limit = opts.max_ma ? std::min(*opts.max_ma + 1, opts.ma_cap) : opts.ma_cap;

  // Companion form Y_t = C Y_{t-1} + E^T eps_t, so A(z)^{-1} = E (I - zC)^{-1} E^T.
  Mat c = Mat::Zero(np, np);
  for (std::size_t i = 0; i < p; ++i) c.block(0, static_cast<Index>(i) * n, n, n) = m.phi[i];
  if (p > 1) c.bottomLeftCorner(np - n, np - n).setIdentity();

  // The part of the resolvent living on the generalized eigenspace of C for
  // eigenvalue 1 is exactly the principal part at z = 1, so N^H(z) =
  // E (I - zC)^{-1} Q E^T with Q the spectral projection onto the other
  // eigenvalues, which all lie strictly inside the unit disk.
  Mat shifted = Mat::Identity(np, np);
  for (int k = 0; k < skeleton.d; ++k) shifted = (c - Mat::Identity(np, np)) * shifted;
  const Subspace unit = kernel_basis(shifted, opts.rank_tol);
  const Subspace stable = range_basis(shifted, opts.rank_tol);
  const Mat q = projector_onto_along(stable, unit).matrix;
  const Mat qc = q * c;

  Mat w = q.leftCols(n);  // Q E^T
  MaResult out;
  double biggest = 0.0;
  std::size_t quiet = 0;
  bool converged = false;
  for (std::size_t j = 0; j < limit; ++j) {
    if (j > 0) w = qc * w;
    Mat phi_j = w.topRows(n);
    const double norm = phi_j.norm();
    out.phi.push_back(std::move(phi_j));
    biggest = std::max(biggest, norm);
    quiet = norm <= opts.ma_rel_tol * biggest ? quiet + 1 : 0;
    if (quiet >= window && j + 1 >= window) {
      converged = true;
      break;
    }
  }
  if (!converged && !opts.max_ma) {
    throw Error(ErrorKind::TailNotConverged,
                "MA coefficients did not decay below tolerance within " + std::to_string(limit) + " terms");
  }
  // Drop the negligible tail except for the first quiet coefficient.
  if (converged) {
    while (out.phi.size() > 1 && out.phi[out.phi.size() - 2].norm() <= opts.ma_rel_tol * biggest) out.phi.pop_back();
  }
  const std::size_t last = out.phi.size() - 1;
  const double tail_norm = out.phi[last].norm();
  if (last > 0 && out.phi[last - 1].norm() > 0.0) {
    const double ratio = tail_norm / out.phi[last - 1].norm();
    out.tail_bound = ratio < 1.0 ? tail_norm * ratio / (1.0 - ratio) : std::numeric_limits<double>::infinity();
  } else {
    out.tail_bound = tail_norm;
  }
  return out;
}

std::vector<Mat> ma_coefficients_from_laurent(const LaurentExpansion& at_one, int j_max, double tail_tol,
                                              MaWeights weights) {
  const int top = at_one.truncation();
  if (j_max > top) throw Error(ErrorKind::OutOfRange, "expansion too short for requested MA coefficients");
  std::vector<Mat> out;
  for (int j = 0; j <= j_max; ++j) {
    Mat acc = Mat::Zero(at_one.dim(), at_one.dim());
    double biggest = 0.0;
    double last = 0.0;
    double w = 1.0;  // weight for k = j
    if (weights == MaWeights::FallingFactorial) {
      for (int i = 0; i < j; ++i) w *= static_cast<double>(j - i);
    }
    for (int k = j; k <= top; ++k) {
      if (k > j) {
        // C(k, j) = C(k-1, j) k / (k - j); falling factorial k!/(k-j)! = prev * k / (k - j)
        w *= static_cast<double>(k) / static_cast<double>(k - j);
      }
      const double sign = ((k - j) % 2 == 0) ? 1.0 : -1.0;
      const Mat term = (sign * w) * at_one.coefficient(k);
      last = term.norm();
      biggest = std::max(biggest, last);
      acc += term;
    }
    if (last > tail_tol * std::max(biggest, 1e-300) && last > 0.0) {
      throw Error(ErrorKind::TailNotConverged,
                  "binomial series for Phi_" + std::to_string(j) + " has not converged (last term " +
                      std::to_string(last) + ")");
    }
    out.push_back(std::move(acc));
  }
  return out;
}

Representation represent(const ARModel& m, const GrangerOptions& opts) {
  Representation r = classify_integration(m, opts);
  MaResult ma = ma_coefficients(m, r, opts);
  r.ma = std::move(ma.phi);
  r.tail_bound = ma.tail_bound;
  return r;
}

Vec SamplePath::innovation(long s) const {
  const long first = 1 - static_cast<long>(burnin);
  if (s < first) return Vec::Zero(innovations.front().size());
  return innovations.at(static_cast<std::size_t>(s - first));
}

namespace {

Mat hermitian_sqrt(const Mat& c) {
  Eigen::SelfAdjointEigenSolver<Mat> eig(c);
  const Eigen::VectorXd lambda = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return eig.eigenvectors() * lambda.asDiagonal() * eig.eigenvectors().adjoint();
}

}  // namespace

std::vector<Vec> draw_innovations(const NoiseSpec& noise, Index dim, std::size_t T, std::size_t burnin) {
  validate_noise(noise, dim);
  const Mat root = hermitian_sqrt(noise.covariance);
  std::mt19937_64 rng(noise.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Vec> eps;
  eps.reserve(T + burnin);
  for (std::size_t s = 0; s < T + burnin; ++s) {
    Vec z(dim);
    for (Index i = 0; i < dim; ++i) z(i) = Complex(normal(rng), 0.0);
    eps.push_back(root * z);
  }
  return eps;
}

SamplePath simulate_ar(const ARModel& m, const NoiseSpec& noise, std::size_t T, std::size_t burnin,
                       const std::vector<Vec>& initial) {
  return simulate_ar_with(m, draw_innovations(noise, m.dim(), T, burnin), T, burnin, initial);
}

SamplePath simulate_ar_with(const ARModel& m, std::vector<Vec> innovations, std::size_t T, std::size_t burnin,
                            const std::vector<Vec>& initial) {
  const Index n = m.dim();
  const std::size_t p = m.order();
  if (innovations.size() != T + burnin) {
    throw Error(ErrorKind::InvalidInput, "expected " + std::to_string(T + burnin) + " innovations");
  }
  if (!initial.empty() && initial.size() != p) {
    throw Error(ErrorKind::InvalidInput, "initial values must hold exactly p vectors");
  }
  SamplePath path;
  path.T = T;
  path.burnin = burnin;
  path.initial = initial.empty() ? std::vector<Vec>(p, Vec::Zero(n)) : initial;
  for (const Vec& v : path.initial) {
    if (v.size() != n || !v.allFinite()) throw Error(ErrorKind::InvalidInput, "bad initial value");
  }

  // history[i] is X at time i - burnin - p + 1.
  std::vector<Vec> history = path.initial;
  history.reserve(p + burnin + T);
  for (std::size_t s = 0; s < burnin + T; ++s) {
    Vec x = innovations[s];
    for (std::size_t i = 1; i <= p; ++i) x += m.phi[i - 1] * history[history.size() - i];
    history.push_back(std::move(x));
  }
  path.values.assign(history.end() - static_cast<long>(T + 1), history.end());
  path.innovations = std::move(innovations);
  return path;
}

SamplePath simulate_representation(const Representation& r, const std::vector<Vec>& innovations, std::size_t T,
                                   std::size_t burnin, const Vec& tau0, const Vec& tau1) {
  if (r.ma.empty()) throw Error(ErrorKind::InvalidInput, "representation has no MA coefficients");
  const std::size_t J = r.ma.size() - 1;
  if (burnin < J) {
    throw Error(ErrorKind::InsufficientHistory, "burn-in " + std::to_string(burnin) + " shorter than MA length " +
                                                    std::to_string(J));
  }
  if (innovations.size() != T + burnin) {
    throw Error(ErrorKind::InvalidInput, "expected " + std::to_string(T + burnin) + " innovations");
  }
  const Index n = r.n_minus1.rows();
  SamplePath path;
  path.T = T;
  path.burnin = burnin;
  path.innovations = innovations;
  Vec level = Vec::Zero(n);   // sum_{s=1}^t eps_s
  Vec cumul = Vec::Zero(n);   // sum_{r=1}^t sum_{s=1}^r eps_s
  for (std::size_t t = 0; t <= T; ++t) {
    if (t > 0) {
      level += path.innovation(static_cast<long>(t));
      cumul += level;
    }
    Vec nu = Vec::Zero(n);
    for (std::size_t j = 0; j <= J; ++j) nu += r.ma[j] * path.innovation(static_cast<long>(t) - static_cast<long>(j));
    Vec x = tau0 + static_cast<double>(t) * tau1 - r.n_minus1 * level + nu;
    if (r.d == 2) x += r.n_minus2 * cumul;
    path.values.push_back(std::move(x));
  }
  return path;
}

CrossValidation cross_validate(const ARModel& m, const Representation& r, const NoiseSpec& noise, std::size_t T,
                               std::size_t burnin) {
  const Index n = m.dim();
  const SamplePath ar = simulate_ar(m, noise, T, burnin);
  const SamplePath rep = simulate_representation(r, ar.innovations, T, burnin, Vec::Zero(n), Vec::Zero(n));

  CrossValidation cv;
  cv.d = r.d;
  cv.ma_length = r.ma.size();
  cv.tail_bound = r.tail_bound;
  const Index rows = static_cast<Index>(T + 1);
  Mat diff(rows, n);
  for (Index t = 0; t < rows; ++t) diff.row(t) = (ar.values[t] - rep.values[t]).transpose();

  // Matched initial conditions: tau0 from t = 0, tau1 from t = 1.
  cv.tau0 = diff.row(0).transpose();
  cv.tau1 = (r.d == 2 && rows > 1) ? Vec((diff.row(1) - diff.row(0)).transpose()) : Vec(Vec::Zero(n));

  const Index basis = r.d == 2 ? 2 : 1;
  Mat design(rows, basis);
  for (Index t = 0; t < rows; ++t) {
    design(t, 0) = 1.0;
    if (basis == 2) design(t, 1) = static_cast<double>(t);
  }
  const Mat coef = design.colPivHouseholderQr().solve(diff);
  const Mat fitted = design * coef;
  cv.residual = (diff - fitted).cwiseAbs().maxCoeff();

  double matched = 0.0;
  for (Index t = 0; t < rows; ++t) {
    const Vec predicted = cv.tau0 + static_cast<double>(t) * cv.tau1;
    matched = std::max(matched, (diff.row(t).transpose() - predicted).cwiseAbs().maxCoeff());
  }
  cv.matched_residual = matched;
  return cv;
}

}  // namespace holo
