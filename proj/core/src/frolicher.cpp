#include "hodgelab/frolicher.hpp"

#include <cmath>
#include <limits>

#include "hodgelab/cohomology.hpp"
#include "hodgelab/error.hpp"
#include "inequality_detail.hpp"

namespace hodgelab {

namespace {

void need_degree(const TotalComplexView& v, int k) {
  if (k < 0 || k > v.max_degree())
    fail(ErrorCode::ConfigError, "degree out of range");
}

}  // namespace

Eigen::MatrixXcd theta_h_matrix(const TotalComplexView& v, double h, int k) {
  if (h == 0) fail(ErrorCode::HZero, "theta_h is singular at h = 0");
  need_degree(v, k);
  int m = v.dim(k);
  Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(m, m);
  for (const BidegreeSlot& s : v.slots(k)) {
    double f = std::pow(h, s.p);
    for (int i = 0; i < s.dim; ++i) t(s.offset + i, s.offset + i) = f;
  }
  return t;
}

RatMat theta_h_matrix_exact(const TotalComplexView& v, const mpq_class& h,
                            int k) {
  if (h == 0) fail(ErrorCode::HZero, "theta_h is singular at h = 0");
  need_degree(v, k);
  RatMat t(v.dim(k), v.dim(k));
  for (const BidegreeSlot& s : v.slots(k)) {
    mpq_class f(1);
    for (int e = 0; e < s.p; ++e) f *= h;
    for (int i = 0; i < s.dim; ++i)
      t.at(s.offset + i, s.offset + i) = CRat(f, mpq_class(0));
  }
  return t;
}

Eigen::VectorXcd theta_h(const TotalComplexView& v, double h, int k,
                         const Eigen::VectorXcd& form) {
  if (h == 0) fail(ErrorCode::HZero, "theta_h is singular at h = 0");
  need_degree(v, k);
  if (form.size() != v.dim(k))
    fail(ErrorCode::ShapeMismatch, "form has the wrong degree-k dimension");
  Eigen::VectorXcd out = form;
  for (const BidegreeSlot& s : v.slots(k)) {
    double f = std::pow(h, s.p);
    out.segment(s.offset, s.dim) *= f;
  }
  return out;
}

RatMat d_h_total_exact(const TotalComplexView& v, const mpq_class& h, int k) {
  need_degree(v, k);
  const BigradedComplex& c = v.underlying();
  if (c.mode() != ScalarMode::Exact)
    fail(ErrorCode::ModeMismatch, "exact d_h needs exact coefficients");
  RatMat m(v.dim(k + 1), v.dim(k));
  CRat hc(h, mpq_class(0));
  auto paste = [&](const RatMat& b, int roff, int coff) {
    for (int i = 0; i < b.rows(); ++i)
      for (int j = 0; j < b.cols(); ++j) m.at(roff + i, coff + j) = b.at(i, j);
  };
  for (const BidegreeSlot& src : v.slots(k)) {
    const BidegreeSlot* up = v.slot(k + 1, src.p + 1);
    const BidegreeSlot* rt = v.slot(k + 1, src.p);
    if (up && up->dim && src.dim)
      paste(c.del(src.p, src.q).scaled(hc), up->offset, src.offset);
    if (rt && rt->dim && src.dim)
      paste(c.dbar(src.p, src.q), rt->offset, src.offset);
  }
  return m;
}

InjectionWitness q_injection(const BigradedComplex& c,
                             const HermitianMetric& g, double h, int k,
                             double rel_tol, double cert_tol) {
  if (h == 0) fail(ErrorCode::HZero, "q_injection needs h > 0");
  auto frame = std::make_shared<const OrthoFrame>(c, g);
  if (k < 0 || k > frame->max_degree())
    fail(ErrorCode::ConfigError, "degree out of range");

  DhOperator d_full = build_dh(frame, 1.0);
  DhOperator d_h = build_dh(frame, h);
  Eigen::MatrixXcd h1 = harmonic_basis(d_full, k, rel_tol);
  Eigen::MatrixXcd hh = harmonic_basis(d_h, k, rel_tol);

  // theta_h is slot-diagonal scalar, hence the same matrix in orthonormal
  // coordinates.
  int m = frame->dim(k);
  Eigen::MatrixXcd theta = Eigen::MatrixXcd::Zero(m, m);
  for (const BidegreeSlot& s : frame->slots(k))
    for (int i = 0; i < s.dim; ++i)
      theta(s.offset + i, s.offset + i) = std::pow(h, s.p);

  // Per-bidegree dbar-harmonic bases; the dbar Laplacian is block diagonal
  // across the slots, so stacking the blocks spans ker Delta_0^k.
  InjectionWitness w;
  w.h = h;
  w.k = k;
  std::vector<Eigen::MatrixXcd> blocks;
  int rows = 0;
  for (const BidegreeSlot& s : frame->slots(k)) {
    const Eigen::MatrixXcd& out = frame->dbar(s.p, s.q);
    Eigen::MatrixXcd lap = out.adjoint() * out;
    if (s.q > 0) {
      const Eigen::MatrixXcd& in = frame->dbar(s.p, s.q - 1);
      lap += in * in.adjoint();
    }
    SpectralData sd(lap, 0.0, k, rel_tol);
    Eigen::MatrixXcd b = sd.basis_at(0.0);
    w.row_slots.push_back({s.p, s.q, rows, int(b.cols())});
    rows += int(b.cols());
    blocks.push_back(std::move(b));
  }
  Eigen::MatrixXcd b0 = Eigen::MatrixXcd::Zero(m, rows);
  for (std::size_t i = 0; i < blocks.size(); ++i)
    b0.block(frame->slots(k)[i].offset, w.row_slots[i].offset,
             frame->slots(k)[i].dim, w.row_slots[i].dim) = blocks[i];

  w.b_k = int(h1.cols());
  w.q = b0.adjoint() * (hh * (hh.adjoint() * (theta * h1)));
  if (w.b_k == 0) {
    w.sigma_min = std::numeric_limits<double>::infinity();
    w.rank = 0;
    return w;
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(w.q);
  const Eigen::VectorXd& sv = svd.singularValues();
  w.sigma_min = sv.size() == w.b_k ? sv.minCoeff() : 0.0;
  w.rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv[i] > cert_tol) ++w.rank;
  return w;
}

//------------------------------------------------------------------------------
// Inequality chain reports
//------------------------------------------------------------------------------

namespace detail {

KsCounts ks_counts(const BigradedComplex& c) {
  TotalComplexView v(c);
  KsCounts out;
  const RatMat& d1 = v.d(1);
  const RatMat& d2 = v.d(2);
  long rank_d1 = d1.rank();
  out.b2 = d2.nullity() - rank_d1;
  out.h02 = hodge_dbar(c, 0, 2);
  out.h11bc = bott_chern(c, 1, 1);

  auto rows_at = [&](const RatMat& mat, int p) {
    const BidegreeSlot* s = v.slot(2, p);
    if (!s || !s->dim) return RatMat(0, mat.cols());
    return mat.row_block(s->offset, s->dim);
  };

  // H^{1,1} n im d, modulo im(del dbar): the (1,1)-part of the image of d^1
  // has dimension rank d^1 minus the rank of the outer-row restriction.
  RatMat d1_outer = RatMat::vstack(rows_at(d1, 2), rows_at(d1, 0));
  long f0 = rank_d1 - d1_outer.rank() -
            (c.del(0, 1) * c.dbar(0, 0)).rank();
  out.five[0] = f0;
  out.five[1] = out.h11bc;
  out.five[2] = out.b2;
  out.five[3] = hodge_del(c, 2, 0) + out.h02;

  // rank of H^2_dR -> H^{2,0}_del + H^{0,2}_dbar on closed representatives,
  // computed modulo the del/dbar images downstairs.
  RatMat closed2 = d2.nullspace();
  RatMat proj = RatMat::vstack(rows_at(closed2, 2), rows_at(closed2, 0));
  const RatMat& a = c.del(1, 0);
  const RatMat& b = c.dbar(0, 1);
  RatMat bd(a.rows() + b.rows(), a.cols() + b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) bd.at(i, j) = a.at(i, j);
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j)
      bd.at(a.rows() + i, a.cols() + j) = b.at(i, j);
  long rank_s = RatMat::hstack(proj, bd).rank() - a.rank() - b.rank();
  out.five[4] = out.five[3] - rank_s;
  return out;
}

InequalityReport assemble_inequality_report(
    const std::vector<const BigradedComplex*>& pieces,
    const std::string& model, long gamma_order) {
  if (pieces.empty() || gamma_order < 1)
    fail(ErrorCode::ConfigError, "report needs pieces and a positive order");
  int n = pieces[0]->n();
  int top = 2 * n;
  for (const BigradedComplex* c : pieces) {
    if (!c->valid() || c->n() != n)
      fail(ErrorCode::ShapeMismatch, "pieces disagree in dimension");
    if (c->mode() != ScalarMode::Exact)
      fail(ErrorCode::ModeMismatch, "inequality report needs exact pieces");
  }

  std::vector<long> b_sum(top + 1, 0);
  std::size_t cells = std::size_t(n + 1) * (n + 1);
  std::vector<long> hdbar(cells, 0), hdel(cells, 0), hbc(cells, 0),
      ha(cells, 0);
  KsCounts ks_sum;
  long ks_b2 = 0, ks_h02 = 0, ks_h11 = 0;

  for (const BigradedComplex* c : pieces) {
    TotalComplexView v(*c);
    std::vector<int> rk(top + 1, 0);
    for (int k = 0; k <= top; ++k) rk[k] = v.d(k).rank();
    for (int k = 0; k <= top; ++k)
      b_sum[k] += v.dim(k) - rk[k] - (k > 0 ? rk[k - 1] : 0);
    for (int p = 0; p <= n; ++p)
      for (int q = 0; q <= n; ++q) {
        std::size_t i = std::size_t(p) * (n + 1) + q;
        hdbar[i] += hodge_dbar(*c, p, q);
        hdel[i] += hodge_del(*c, p, q);
        hbc[i] += bott_chern(*c, p, q);
        ha[i] += aeppli(*c, p, q);
      }
    KsCounts kc = ks_counts(*c);
    for (int i = 0; i < 5; ++i) ks_sum.five[i] += kc.five[i];
    ks_b2 += kc.b2;
    ks_h02 += kc.h02;
    ks_h11 += kc.h11bc;
  }

  auto norm = [&](long v) -> mpq_class { return mpq_class(v) / gamma_order; };

  InequalityReport r;
  r.model = model;
  r.gamma_order = gamma_order;
  r.n = n;
  r.frolicher_all_ok = true;
  r.at_all_ok = true;
  r.lemma_holds = true;

  mpq_class euler(0);
  for (int k = 0; k <= top; ++k) {
    DegreeLine line;
    line.k = k;
    line.b = norm(b_sum[k]);
    line.h_dbar_sum = 0;
    line.ba_sum = 0;
    for (int p = std::max(0, k - n); p <= std::min(n, k); ++p) {
      std::size_t i = std::size_t(p) * (n + 1) + (k - p);
      line.h_dbar_sum += norm(hdbar[i]);
      line.ba_sum += norm(ha[i]) + norm(hbc[i]);
    }
    line.frolicher_ok = line.b <= line.h_dbar_sum;
    line.slack = line.h_dbar_sum - line.b;
    line.ddbar_equal = 2 * line.b == line.ba_sum;
    if (!line.frolicher_ok) r.frolicher_all_ok = false;
    if (!line.ddbar_equal) {
      r.lemma_holds = false;
      if (r.first_strict_k < 0) r.first_strict_k = k;
    }
    euler += (k % 2 == 0 ? line.b : -line.b);
    r.degrees.push_back(std::move(line));
  }

  for (int p = 0; p <= n; ++p)
    for (int q = 0; q <= n; ++q) {
      std::size_t i = std::size_t(p) * (n + 1) + q;
      BidegreeLine line;
      line.p = p;
      line.q = q;
      line.h_dbar = norm(hdbar[i]);
      line.h_del = norm(hdel[i]);
      line.h_bc = norm(hbc[i]);
      line.h_a = norm(ha[i]);
      line.at_ok = line.h_dbar + line.h_del <= line.h_a + line.h_bc;
      if (!line.at_ok) r.at_all_ok = false;
      euler -= ((p + q) % 2 == 0 ? line.h_dbar : -line.h_dbar);
      r.bidegrees.push_back(std::move(line));
    }
  r.euler_residual = euler;

  r.ks.b2 = norm(ks_b2);
  r.ks.h02_dbar = norm(ks_h02);
  r.ks.h11_bc = norm(ks_h11);
  r.ks.alternating_sum = 0;
  for (int i = 0; i < 5; ++i) {
    r.ks.five_term[i] = norm(ks_sum.five[i]);
    r.ks.alternating_sum +=
        (i % 2 == 0 ? r.ks.five_term[i] : -r.ks.five_term[i]);
  }
  r.ks.holds = r.ks.b2 <= 2 * r.ks.h02_dbar + r.ks.h11_bc;
  r.ks.equality = r.ks.b2 == 2 * r.ks.h02_dbar + r.ks.h11_bc;
  return r;
}

}  // namespace detail

bool InequalityReport::all_pass() const {
  return frolicher_all_ok && at_all_ok && euler_residual == 0 && ks.holds &&
         ks.alternating_sum == 0;
}

InequalityReport frolicher_check(const BigradedComplex& c) {
  return detail::assemble_inequality_report({&c}, "", 1);
}

long euler_relation_check(const BigradedComplex& c) {
  long acc = 0;
  int n = c.n();
  for (int k = 0; k <= 2 * n; ++k)
    acc += (k % 2 == 0 ? 1 : -1) * betti(c, k);
  for (int p = 0; p <= n; ++p)
    for (int q = 0; q <= n; ++q)
      acc -= ((p + q) % 2 == 0 ? 1 : -1) * hodge_dbar(c, p, q);
  return acc;
}

DdbarReport ddbar_detect(const BigradedComplex& c) {
  InequalityReport full = frolicher_check(c);
  DdbarReport r;
  r.lemma_holds = full.lemma_holds;
  r.first_strict_k = full.first_strict_k;
  r.degrees = std::move(full.degrees);
  return r;
}

KodairaSpencerReport kodaira_spencer_check(const BigradedComplex& c) {
  return detail::assemble_inequality_report({&c}, "", 1).ks;
}

}  // namespace hodgelab
