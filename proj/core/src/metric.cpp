#include "hodgelab/metric.hpp"

#include <string>

#include "hodgelab/error.hpp"

namespace hodgelab {

struct HermitianMetric::Data {
  int n = 0;
  bool identity = true;
  std::vector<Eigen::MatrixXcd> gram, chol;

  int index(int p, int q) const { return p * (n + 1) + q; }
};

HermitianMetric HermitianMetric::identity(const BigradedComplex& c) {
  auto d = std::make_shared<Data>();
  d->n = c.n();
  d->identity = true;
  std::size_t cells = std::size_t(d->n + 1) * (d->n + 1);
  d->gram.reserve(cells);
  for (int p = 0; p <= d->n; ++p)
    for (int q = 0; q <= d->n; ++q)
      d->gram.push_back(Eigen::MatrixXcd::Identity(c.dim(p, q), c.dim(p, q)));
  d->chol = d->gram;
  HermitianMetric g;
  g.data_ = std::move(d);
  return g;
}

HermitianMetric HermitianMetric::from_grams(const BigradedComplex& c,
                                            std::vector<Eigen::MatrixXcd> grams) {
  int n = c.n();
  std::size_t cells = std::size_t(n + 1) * (n + 1);
  if (grams.size() != cells)
    fail(ErrorCode::ShapeMismatch, "gram table has wrong size");

  auto d = std::make_shared<Data>();
  d->n = n;
  d->identity = true;
  d->gram = std::move(grams);
  d->chol.resize(cells);
  for (int p = 0; p <= n; ++p)
    for (int q = 0; q <= n; ++q) {
      Eigen::MatrixXcd& g = d->gram[d->index(p, q)];
      int m = c.dim(p, q);
      if (g.rows() != m || g.cols() != m)
        fail(ErrorCode::ShapeMismatch,
             "gram at (" + std::to_string(p) + "," + std::to_string(q) +
                 ") has wrong shape");
      if (m == 0) {
        d->chol[d->index(p, q)] = g;
        continue;
      }
      double scale = std::max(1.0, g.cwiseAbs().maxCoeff());
      if ((g - g.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol * scale)
        fail(ErrorCode::NotPositiveDefinite,
             "gram at (" + std::to_string(p) + "," + std::to_string(q) +
                 ") is not Hermitian");
      g = ((g + g.adjoint()) / 2.0).eval();
      Eigen::LLT<Eigen::MatrixXcd> llt(g);
      if (llt.info() != Eigen::Success)
        fail(ErrorCode::NotPositiveDefinite,
             "gram at (" + std::to_string(p) + "," + std::to_string(q) +
                 ") is not positive definite");
      d->chol[d->index(p, q)] = llt.matrixL();
      if (d->identity &&
          (g - Eigen::MatrixXcd::Identity(m, m)).cwiseAbs().maxCoeff() != 0.0)
        d->identity = false;
    }

  HermitianMetric g;
  g.data_ = std::move(d);
  return g;
}

int HermitianMetric::n() const { return data_->n; }
bool HermitianMetric::is_identity() const { return data_->identity; }

const Eigen::MatrixXcd& HermitianMetric::gram(int p, int q) const {
  return data_->gram[data_->index(p, q)];
}

const Eigen::MatrixXcd& HermitianMetric::chol(int p, int q) const {
  return data_->chol[data_->index(p, q)];
}

Eigen::MatrixXcd adjoint(const Eigen::MatrixXcd& a,
                         const Eigen::MatrixXcd& g_src,
                         const Eigen::MatrixXcd& g_tgt) {
  if (a.cols() != g_src.rows() || a.rows() != g_tgt.rows() ||
      g_src.rows() != g_src.cols() || g_tgt.rows() != g_tgt.cols())
    fail(ErrorCode::ShapeMismatch, "adjoint shapes are inconsistent");
  if (a.cols() == 0) return Eigen::MatrixXcd(a.cols(), a.rows());
  if (g_tgt.rows() > 0) {
    Eigen::LLT<Eigen::MatrixXcd> tgt(g_tgt);
    if (tgt.info() != Eigen::Success)
      fail(ErrorCode::NotPositiveDefinite,
           "target gram is not positive definite");
  }
  Eigen::LLT<Eigen::MatrixXcd> llt(g_src);
  if (llt.info() != Eigen::Success)
    fail(ErrorCode::NotPositiveDefinite, "source gram is not positive definite");
  return llt.solve(a.adjoint() * g_tgt);
}

}  // namespace hodgelab
