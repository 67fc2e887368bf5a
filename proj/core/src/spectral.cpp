#include "hodgelab/spectral.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "hodgelab/error.hpp"

namespace hodgelab {

namespace {

double max_abs(const Eigen::MatrixXcd& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

// Spectral 2-norm of a Hermitian matrix.
double herm_norm(const Eigen::MatrixXcd& m) {
  if (m.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m,
                                                     Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace

SpectralData::SpectralData(const DhOperator& dh, int k, double rel_tol) {
  if (k < 0 || k > dh.max_degree())
    fail(ErrorCode::ConfigError, "degree out of range");
  h_ = dh.h();
  degree_ = k;
  init(dh.laplacian(k), rel_tol);
}

SpectralData::SpectralData(const Eigen::MatrixXcd& hermitian_psd, double h,
                           int k, double rel_tol) {
  h_ = h;
  degree_ = k;
  init(hermitian_psd, rel_tol);
}

void SpectralData::init(const Eigen::MatrixXcd& m, double rel_tol) {
  if (m.rows() != m.cols())
    fail(ErrorCode::ShapeMismatch, "spectral data needs a square matrix");
  double mscale = std::max(1.0, max_abs(m));
  if (max_abs(m - m.adjoint()) > 1e-12 * mscale)
    fail(ErrorCode::ShapeMismatch, "spectral data needs a Hermitian matrix");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
  if (m.rows() > 0 && es.info() != Eigen::Success)
    fail(ErrorCode::ConfigError, "eigensolver failed");
  eigenvalues_ = es.eigenvalues();
  vectors_ = es.eigenvectors();
  scale_ = eigenvalues_.size() ? eigenvalues_.cwiseAbs().maxCoeff() : 0.0;
  rank_tol_ = rel_tol * scale_;

  if (eigenvalues_.size() && eigenvalues_[0] < -1e-10 * scale_)
    fail(ErrorCode::NotPositiveDefinite,
         "spectrum reaches significantly below zero");
  double recon =
      max_abs(vectors_ * eigenvalues_.asDiagonal() * vectors_.adjoint() - m);
  double ortho = max_abs(vectors_.adjoint() * vectors_ -
                         Eigen::MatrixXcd::Identity(dim(), dim()));
  if (recon > 1e-10 * std::max(1.0, scale_) || ortho > 1e-10)
    fail(ErrorCode::ConfigError, "eigendecomposition failed its residual audit");
}

double SpectralData::snapped(int i) const {
  double v = eigenvalues_[i];
  return std::abs(v) <= rank_tol_ ? 0.0 : v;
}

int SpectralData::rank_at(double lambda) const {
  double near_tol = kLambdaNearRel * scale_;
  int count = 0;
  for (int i = 0; i < dim(); ++i) {
    double s = snapped(i);
    double d = std::abs(s - lambda);
    if (d > 0 && d < near_tol)
      fail(ErrorCode::LambdaNearEigenvalue,
           "lambda = " + std::to_string(lambda) +
               " is unresolvably close to eigenvalue " + std::to_string(s));
    if (s <= lambda) ++count;
  }
  return count;
}

Eigen::MatrixXcd SpectralData::basis_at(double lambda) const {
  return vectors_.leftCols(rank_at(lambda));
}

Eigen::MatrixXcd spectral_projector(const SpectralData& s, double lambda) {
  Eigen::MatrixXcd b = s.basis_at(lambda);
  return b * b.adjoint();
}

mpq_class spectral_density(const SpectralData& s, double lambda,
                           long gamma_order) {
  if (gamma_order < 1)
    fail(ErrorCode::ConfigError, "gamma order must be positive");
  mpq_class q(s.rank_at(lambda), gamma_order);
  q.canonicalize();
  return q;
}

InjectivityCertificate projector_injectivity(const SpectralData& s_h,
                                             double sigma,
                                             const SpectralData& s_0,
                                             double tau, double cert_tol) {
  if (!(sigma >= 0 && sigma < tau))
    fail(ErrorCode::ConfigError, "need 0 <= sigma < tau");
  if (s_h.dim() != s_0.dim())
    fail(ErrorCode::ShapeMismatch, "spectral data live on different spaces");

  InjectivityCertificate cert;
  cert.h = s_h.h();
  cert.sigma = sigma;
  cert.tau = tau;
  cert.dim_h_sigma = s_h.rank_at(sigma);
  cert.dim_0_tau = s_0.rank_at(tau);

  if (cert.dim_h_sigma == 0) {
    cert.dim_zero = true;
    cert.sigma_min = std::numeric_limits<double>::infinity();
    cert.injective = true;
    return cert;
  }
  // E_{0,tau} B has the same singular values as B0^dagger B, because B0 is
  // an isometry onto the range of the projector.
  Eigen::MatrixXcd b = s_h.basis_at(sigma);
  Eigen::MatrixXcd b0 = s_0.basis_at(tau);
  if (b0.cols() < b.cols()) {
    cert.sigma_min = 0.0;
    cert.injective = false;
    return cert;
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(b0.adjoint() * b);
  cert.sigma_min = svd.singularValues().size()
                       ? svd.singularValues().minCoeff()
                       : 0.0;
  cert.injective =
      cert.sigma_min > cert_tol && cert.dim_h_sigma <= cert.dim_0_tau;
  return cert;
}

namespace {

Eigen::MatrixXcd shifted_inverse(const DhOperator& d, int k) {
  SpectralData s(d, k);
  Eigen::VectorXd inv =
      (s.eigenvalues().array() + 1.0).inverse().matrix();
  return s.vectors() * inv.asDiagonal() * s.vectors().adjoint();
}

// (D^2 + I)^{-1} over the full direct sum, through the factored pair
// (D + i)^{-1}(D - i)^{-1}, then restricted to the degree-k block.
Eigen::MatrixXcd factored_block(const DhOperator& d, int k) {
  int top = d.max_degree();
  std::vector<int> offset(top + 2, 0);
  for (int j = 0; j <= top; ++j) offset[j + 1] = offset[j] + d.dim(j);
  int total = offset[top + 1];
  Eigen::MatrixXcd big = Eigen::MatrixXcd::Zero(total, total);
  for (int j = 0; j < top; ++j) {
    const Eigen::MatrixXcd& blk = d.d_block(j);
    if (blk.size() == 0) continue;
    big.block(offset[j + 1], offset[j], d.dim(j + 1), d.dim(j)) = blk;
    big.block(offset[j], offset[j + 1], d.dim(j), d.dim(j + 1)) =
        blk.adjoint();
  }
  std::complex<double> iu(0.0, 1.0);
  Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(total, total);
  Eigen::MatrixXcd r1 = (big - iu * id).partialPivLu().solve(id);
  Eigen::MatrixXcd r = (big + iu * id).partialPivLu().solve(r1);
  return r.block(offset[k], offset[k], d.dim(k), d.dim(k));
}

}  // namespace

double resolvent_distance(const DhOperator& a, const DhOperator& b, int k,
                          ResolventRoute route) {
  if (k < 0 || k > a.max_degree() || a.max_degree() != b.max_degree() ||
      a.dim(k) != b.dim(k))
    fail(ErrorCode::ShapeMismatch, "operators live on different complexes");
  if (route == ResolventRoute::ShiftedSquare)
    return herm_norm(shifted_inverse(a, k) - shifted_inverse(b, k));
  return herm_norm(factored_block(a, k) - factored_block(b, k));
}

GraphNormBound reed_simon_criterion(const DhOperator& dh,
                                    const DhOperator& d0, int k) {
  if (k < 0 || k > dh.max_degree() || dh.max_degree() != d0.max_degree() ||
      dh.dim(k) != d0.dim(k))
    fail(ErrorCode::ShapeMismatch, "operators live on different complexes");

  int m = dh.dim(k);
  Eigen::MatrixXcd up = dh.d_block(k) - d0.d_block(k);
  Eigen::MatrixXcd dn(0, m);
  if (k > 0) dn = (dh.d_block(k - 1) - d0.d_block(k - 1)).adjoint();
  Eigen::MatrixXcd diff(up.rows() + dn.rows(), m);
  diff << up, dn;

  SpectralData s0(d0, k);
  Eigen::VectorXd w =
      (s0.eigenvalues().array() + 1.0).sqrt().inverse().matrix();
  Eigen::MatrixXcd soft =
      diff * (s0.vectors() * w.asDiagonal() * s0.vectors().adjoint());

  GraphNormBound out;
  out.equivalence_factor = std::sqrt(2.0);
  if (soft.size() == 0) return out;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(soft);
  out.value = svd.singularValues().size() ? svd.singularValues().maxCoeff()
                                          : 0.0;
  return out;
}

std::optional<double> spectral_gap(const SpectralData& s) {
  for (int i = 0; i < s.dim(); ++i)
    if (s.snapped(i) > 0) return s.snapped(i);
  return std::nullopt;
}

SweepRecord h_sweep(const BigradedComplex& c, const HermitianMetric& g, int k,
                    const std::vector<double>& grid, double sigma, double tau,
                    double cert_tol) {
  if (grid.empty()) fail(ErrorCode::ConfigError, "empty h grid");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0 && grid[i] <= 1))
      fail(ErrorCode::ConfigError, "grid values must lie in (0,1]");
    if (i && !(grid[i] < grid[i - 1]))
      fail(ErrorCode::ConfigError, "grid must be strictly decreasing");
  }
  if (!(sigma >= 0 && sigma < tau))
    fail(ErrorCode::ConfigError, "need 0 <= sigma < tau");

  auto frame = std::make_shared<const OrthoFrame>(c, g);
  DhOperator d0 = build_dh(frame, 0.0);
  SpectralData s0(d0, k);

  SweepRecord rec;
  rec.k = k;
  rec.sigma = sigma;
  rec.tau = tau;
  rec.density_ok = true;
  int n0 = s0.rank_at(tau);

  for (double h : grid) {
    DhOperator dh = build_dh(frame, h);
    SpectralData sh(dh, k);
    InjectivityCertificate cert =
        projector_injectivity(sh, sigma, s0, tau, cert_tol);
    SweepPoint pt;
    pt.h = h;
    pt.n_h_sigma = cert.dim_h_sigma;
    pt.n_0_tau = n0;
    pt.sigma_min = cert.sigma_min;
    pt.injective = cert.injective;
    pt.dim_zero = cert.dim_zero;
    pt.resolvent_dist = resolvent_distance(dh, d0, k);
    pt.rs_criterion = reed_simon_criterion(dh, d0, k).value;
    if (pt.n_h_sigma > pt.n_0_tau) rec.density_ok = false;
    rec.points.push_back(pt);
  }

  // h_star: the first grid point from which the verdicts stay injective.
  for (std::size_t i = 0; i < rec.points.size(); ++i) {
    bool stable = true;
    for (std::size_t j = i; j < rec.points.size(); ++j)
      stable = stable && rec.points[j].injective;
    if (stable) {
      rec.h_star = rec.points[i].h;
      break;
    }
  }
  bool seen = false;
  for (const SweepPoint& pt : rec.points) {
    if (pt.injective) seen = true;
    if (seen && !pt.injective) rec.nonmonotone = true;
  }
  return rec;
}

}  // namespace hodgelab
