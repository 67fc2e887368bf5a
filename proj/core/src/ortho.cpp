#include "hodgelab/ortho.hpp"

#include "hodgelab/error.hpp"

namespace hodgelab {

struct OrthoFrame::Data {
  BigradedComplex c;
  HermitianMetric g;
  TotalComplexView view;
  std::vector<Eigen::MatrixXcd> del, dbar;  // orthonormal coordinates

  int index(int p, int q) const { return p * (c.n() + 1) + q; }
};

namespace {

// A L^{-dagger} computed as (L^{-1} A^dagger)^dagger with one triangular solve.
Eigen::MatrixXcd right_solve(const Eigen::MatrixXcd& a,
                             const Eigen::MatrixXcd& chol_src) {
  if (a.cols() == 0 || a.rows() == 0) return a;
  return chol_src.triangularView<Eigen::Lower>()
      .solve(a.adjoint())
      .adjoint();
}

}  // namespace

OrthoFrame::OrthoFrame(const BigradedComplex& c, const HermitianMetric& g) {
  if (!c.valid() || !g.valid())
    fail(ErrorCode::ConfigError, "orthonormal frame needs a complex and metric");
  if (g.n() != c.n())
    fail(ErrorCode::ShapeMismatch, "metric and complex disagree on n");

  auto d = std::make_shared<Data>();
  d->c = c;
  d->g = g;
  d->view = TotalComplexView(c);
  int n = c.n();
  std::size_t cells = std::size_t(n + 1) * (n + 1);
  d->del.resize(cells);
  d->dbar.resize(cells);
  for (int p = 0; p <= n; ++p)
    for (int q = 0; q <= n; ++q) {
      const Eigen::MatrixXcd& src = g.chol(p, q);
      Eigen::MatrixXcd del_on = right_solve(c.del_f(p, q), src);
      Eigen::MatrixXcd dbar_on = right_solve(c.dbar_f(p, q), src);
      if (p + 1 <= n)
        del_on = (g.chol(p + 1, q).adjoint() * del_on).eval();
      if (q + 1 <= n)
        dbar_on = (g.chol(p, q + 1).adjoint() * dbar_on).eval();
      d->del[d->index(p, q)] = std::move(del_on);
      d->dbar[d->index(p, q)] = std::move(dbar_on);
    }
  data_ = std::move(d);
}

const BigradedComplex& OrthoFrame::underlying() const { return data_->c; }
const HermitianMetric& OrthoFrame::metric() const { return data_->g; }
const TotalComplexView& OrthoFrame::view() const { return data_->view; }
int OrthoFrame::n() const { return data_->c.n(); }
int OrthoFrame::max_degree() const { return 2 * n(); }
int OrthoFrame::dim(int k) const { return data_->view.dim(k); }

const std::vector<BidegreeSlot>& OrthoFrame::slots(int k) const {
  return data_->view.slots(k);
}

const Eigen::MatrixXcd& OrthoFrame::del(int p, int q) const {
  return data_->del[data_->index(p, q)];
}

const Eigen::MatrixXcd& OrthoFrame::dbar(int p, int q) const {
  return data_->dbar[data_->index(p, q)];
}

Eigen::MatrixXcd OrthoFrame::d_h_block(int k, double h) const {
  const TotalComplexView& v = data_->view;
  int rows = v.dim(k + 1), cols = v.dim(k);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(rows, cols);
  if (k < 0 || k > max_degree()) return m;
  for (const BidegreeSlot& src : v.slots(k)) {
    if (!src.dim) continue;
    const BidegreeSlot* up = v.slot(k + 1, src.p + 1);
    const BidegreeSlot* rt = v.slot(k + 1, src.p);
    if (up && up->dim)
      m.block(up->offset, src.offset, up->dim, src.dim) =
          h * del(src.p, src.q);
    if (rt && rt->dim)
      m.block(rt->offset, src.offset, rt->dim, src.dim) = dbar(src.p, src.q);
  }
  return m;
}

Eigen::MatrixXcd OrthoFrame::to_ortho(int k) const {
  const TotalComplexView& v = data_->view;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(v.dim(k), v.dim(k));
  for (const BidegreeSlot& s : v.slots(k)) {
    if (!s.dim) continue;
    m.block(s.offset, s.offset, s.dim, s.dim) =
        data_->g.chol(s.p, s.q).adjoint();
  }
  return m;
}

Eigen::MatrixXcd OrthoFrame::from_ortho(int k) const {
  const TotalComplexView& v = data_->view;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(v.dim(k), v.dim(k));
  for (const BidegreeSlot& s : v.slots(k)) {
    if (!s.dim) continue;
    m.block(s.offset, s.offset, s.dim, s.dim) =
        data_->g.chol(s.p, s.q)
            .adjoint()
            .triangularView<Eigen::Upper>()
            .solve(Eigen::MatrixXcd::Identity(s.dim, s.dim));
  }
  return m;
}

}  // namespace hodgelab
