#include "hodgelab/dh_operator.hpp"

#include <cmath>
#include <string>

#include "hodgelab/error.hpp"

namespace hodgelab {

struct DhOperator::Data {
  std::shared_ptr<const OrthoFrame> frame;
  double h = 0;
  // d_blocks[k]: degree k -> k+1; the top entry has zero rows.
  std::vector<Eigen::MatrixXcd> d_blocks;
  std::vector<Eigen::MatrixXcd> laplacians;
};

double DhOperator::h() const { return data_->h; }
int DhOperator::max_degree() const { return data_->frame->max_degree(); }
int DhOperator::dim(int k) const { return data_->frame->dim(k); }

const Eigen::MatrixXcd& DhOperator::d_block(int k) const {
  return data_->d_blocks.at(k);
}

const Eigen::MatrixXcd& DhOperator::laplacian(int k) const {
  return data_->laplacians.at(k);
}

std::shared_ptr<const OrthoFrame> DhOperator::frame() const {
  return data_->frame;
}

namespace {

double max_abs(const Eigen::MatrixXcd& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

}  // namespace

DhOperator build_dh(std::shared_ptr<const OrthoFrame> frame, double h) {
  if (!frame) fail(ErrorCode::ConfigError, "build_dh needs a frame");
  if (!(h >= 0.0 && h <= 1.0))
    fail(ErrorCode::ConfigError, "h must lie in [0,1]");

  auto d = std::make_shared<DhOperator::Data>();
  d->frame = frame;
  d->h = h;
  int top = frame->max_degree();
  d->d_blocks.reserve(top + 1);
  for (int k = 0; k <= top; ++k) d->d_blocks.push_back(frame->d_h_block(k, h));

  // D_h^2 must preserve the degree: consecutive blocks compose to zero.
  for (int k = 0; k + 1 <= top; ++k) {
    const Eigen::MatrixXcd& a = d->d_blocks[k + 1];
    const Eigen::MatrixXcd& b = d->d_blocks[k];
    if (a.rows() == 0 || b.cols() == 0) continue;
    double scale = std::max(1.0, max_abs(a) * max_abs(b));
    if (max_abs(a * b) > 1e-12 * scale)
      fail(ErrorCode::RelationViolation,
           "d_h.d_h != 0 at degree " + std::to_string(k));
  }

  d->laplacians.reserve(top + 1);
  for (int k = 0; k <= top; ++k) {
    int m = frame->dim(k);
    Eigen::MatrixXcd lap = Eigen::MatrixXcd::Zero(m, m);
    lap += d->d_blocks[k].adjoint() * d->d_blocks[k];
    if (k > 0) lap += d->d_blocks[k - 1] * d->d_blocks[k - 1].adjoint();
    double scale = std::max(1.0, max_abs(lap));
    if (max_abs(lap - lap.adjoint()) > 1e-12 * scale)
      fail(ErrorCode::RelationViolation,
           "laplacian lost Hermitian symmetry at degree " + std::to_string(k));
    d->laplacians.push_back(((lap + lap.adjoint()) / 2.0).eval());
  }

  DhOperator out;
  out.data_ = std::move(d);
  return out;
}

DhOperator build_dh(const BigradedComplex& c, const HermitianMetric& g,
                    double h) {
  return build_dh(std::make_shared<const OrthoFrame>(c, g), h);
}

namespace {

struct KernelCut {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXcd vectors;
  double cut = 0;
  int kernel_dim = 0;
};

// Shared eigen-kernel logic; the ambiguity band [cut/10, 10 cut] flags
// kernel cuts whose answer would move with the tolerance.
KernelCut kernel_cut(const Eigen::MatrixXcd& lap, double rel_tol,
                     const std::string& what) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(lap);
  if (lap.rows() > 0 && es.info() != Eigen::Success)
    fail(ErrorCode::ConfigError, "eigensolver failed on " + what);
  KernelCut r;
  r.eigenvalues = es.eigenvalues();
  r.vectors = es.eigenvectors();
  double scale = 0;
  for (int i = 0; i < r.eigenvalues.size(); ++i)
    scale = std::max(scale, std::abs(r.eigenvalues[i]));
  if (r.eigenvalues.size() && r.eigenvalues[0] < -1e-10 * scale)
    fail(ErrorCode::NotPositiveDefinite,
         what + " has a significantly negative eigenvalue");
  r.cut = rel_tol * scale;
  for (int i = 0; i < r.eigenvalues.size(); ++i) {
    double lam = std::abs(r.eigenvalues[i]);
    if (r.cut > 0 && lam >= r.cut / 10 && lam <= 10 * r.cut)
      fail(ErrorCode::TolAmbiguous,
           "eigenvalue " + std::to_string(lam) + " of " + what +
               " sits inside the kernel-cut band");
  }
  for (int i = 0; i < r.eigenvalues.size(); ++i)
    if (std::abs(r.eigenvalues[i]) <= r.cut) ++r.kernel_dim;
  return r;
}

Eigen::MatrixXcd image_basis(const Eigen::MatrixXcd& m) {
  if (m.rows() == 0 || m.cols() == 0) return Eigen::MatrixXcd(m.rows(), 0);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeThinU);
  double cut = 1e-12 * std::max(m.rows(), m.cols()) *
               (svd.singularValues().size() ? svd.singularValues()[0] : 0.0);
  int rank = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()[i] > cut) ++rank;
  return svd.matrixU().leftCols(rank);
}

}  // namespace

Eigen::MatrixXcd harmonic_basis(const DhOperator& dh, int k, double rel_tol) {
  if (k < 0 || k > dh.max_degree())
    fail(ErrorCode::ConfigError, "degree out of range");
  KernelCut kc = kernel_cut(dh.laplacian(k),
                            rel_tol, "laplacian at degree " + std::to_string(k));
  Eigen::MatrixXcd basis = kc.vectors.leftCols(kc.kernel_dim);

  // Harmonic vectors are killed by both d_h and the previous adjoint; the
  // eigenvalue bound forces the residual below sqrt(cut).
  double bound = std::sqrt(kc.cut) * (1 + 1e-6) + 1e-12;
  for (int j = 0; j < basis.cols(); ++j) {
    double r1 = (dh.d_block(k) * basis.col(j)).norm();
    double r2 =
        k > 0 ? (dh.d_block(k - 1).adjoint() * basis.col(j)).norm() : 0.0;
    if (r1 > bound || r2 > bound)
      fail(ErrorCode::RelationViolation,
           "harmonic candidate escapes ker d_h at degree " + std::to_string(k));
  }
  return basis;
}

HodgeDecomposition hodge_decomposition(const BigradedComplex& c,
                                       const HermitianMetric& g,
                                       DecompOperator op, int k_or_p, int q,
                                       double h, double rel_tol) {
  OrthoFrame frame(c, g);
  Eigen::MatrixXcd prev, next;
  std::string what;
  switch (op) {
    case DecompOperator::TotalD:
    case DecompOperator::Dh: {
      double hh = op == DecompOperator::TotalD ? 1.0 : h;
      int k = k_or_p;
      if (k < 0 || k > frame.max_degree())
        fail(ErrorCode::ConfigError, "degree out of range");
      prev = k > 0 ? frame.d_h_block(k - 1, hh)
                   : Eigen::MatrixXcd(frame.dim(0), 0);
      next = frame.d_h_block(k, hh);
      what = "degree " + std::to_string(k);
      break;
    }
    case DecompOperator::Dbar: {
      int p = k_or_p;
      if (p < 0 || q < 0 || p > c.n() || q > c.n())
        fail(ErrorCode::ConfigError, "bidegree out of range");
      prev = q > 0 ? frame.dbar(p, q - 1)
                   : Eigen::MatrixXcd(c.dim(p, q), 0);
      next = frame.dbar(p, q);
      what = "bidegree (" + std::to_string(p) + "," + std::to_string(q) + ")";
      break;
    }
  }

  Eigen::MatrixXcd lap = next.adjoint() * next + prev * prev.adjoint();
  lap = ((lap + lap.adjoint()) / 2.0).eval();
  KernelCut kc = kernel_cut(lap, rel_tol, "laplacian at " + what);

  HodgeDecomposition out;
  out.harmonic = kc.vectors.leftCols(kc.kernel_dim);
  out.p_ker = out.harmonic * out.harmonic.adjoint();
  Eigen::MatrixXcd bi = image_basis(prev);
  Eigen::MatrixXcd bo = image_basis(next.adjoint());
  out.p_im_prev = bi * bi.adjoint();
  out.p_im_adj = bo * bo.adjoint();

  long m = lap.rows();
  Eigen::MatrixXcd sum = out.p_ker + out.p_im_prev + out.p_im_adj;
  if (m > 0 &&
      (sum - Eigen::MatrixXcd::Identity(m, m)).cwiseAbs().maxCoeff() >
          kProjectorTol)
    fail(ErrorCode::RelationViolation,
         "Hodge projectors do not resolve the identity at " + what);
  return out;
}

}  // namespace hodgelab
