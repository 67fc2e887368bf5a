#include "hodgelab/cohomology.hpp"

#include <Eigen/Dense>

#include "hodgelab/error.hpp"

namespace hodgelab {

namespace {

int float_rank(const Eigen::MatrixXcd& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const Eigen::VectorXd& sv = svd.singularValues();
  double cut = 1e-9 * sv[0];
  int r = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv[i] > cut) ++r;
  return r;
}

void need_valid(const BigradedComplex& c) {
  if (!c.valid()) fail(ErrorCode::ConfigError, "complex not validated");
}

void need_exact(const BigradedComplex& c, const char* what) {
  if (c.mode() != ScalarMode::Exact)
    fail(ErrorCode::ModeMismatch,
         std::string(what) + " needs exact coefficients");
}

bool in_range(const BigradedComplex& c, int p, int q) {
  return p >= 0 && q >= 0 && p <= c.n() && q <= c.n();
}

}  // namespace

int betti(const BigradedComplex& c, int k) {
  need_valid(c);
  if (k < 0 || k > 2 * c.n()) return 0;
  TotalComplexView v(c);
  if (c.mode() == ScalarMode::Exact) {
    int ker = v.d(k).nullity();
    int im = k > 0 ? v.d(k - 1).rank() : 0;
    return ker - im;
  }
  int ker = v.dim(k) - float_rank(v.d_f(k));
  int im = k > 0 ? float_rank(v.d_f(k - 1)) : 0;
  return ker - im;
}

int hodge_dbar(const BigradedComplex& c, int p, int q) {
  need_valid(c);
  if (!in_range(c, p, q)) return 0;
  if (c.mode() == ScalarMode::Exact) {
    int ker = c.dbar(p, q).nullity();
    int im = q > 0 ? c.dbar(p, q - 1).rank() : 0;
    return ker - im;
  }
  int ker = c.dim(p, q) - float_rank(c.dbar_f(p, q));
  int im = q > 0 ? float_rank(c.dbar_f(p, q - 1)) : 0;
  return ker - im;
}

int hodge_del(const BigradedComplex& c, int p, int q) {
  need_valid(c);
  if (!in_range(c, p, q)) return 0;
  if (c.mode() == ScalarMode::Exact) {
    int ker = c.del(p, q).nullity();
    int im = p > 0 ? c.del(p - 1, q).rank() : 0;
    return ker - im;
  }
  int ker = c.dim(p, q) - float_rank(c.del_f(p, q));
  int im = p > 0 ? float_rank(c.del_f(p - 1, q)) : 0;
  return ker - im;
}

int bott_chern(const BigradedComplex& c, int p, int q) {
  need_valid(c);
  need_exact(c, "Bott-Chern dimension");
  if (!in_range(c, p, q)) return 0;
  int ker = RatMat::vstack(c.del(p, q), c.dbar(p, q)).nullity();
  int im = 0;
  if (p >= 1 && q >= 1) im = (c.del(p - 1, q) * c.dbar(p - 1, q - 1)).rank();
  return ker - im;
}

int aeppli(const BigradedComplex& c, int p, int q) {
  need_valid(c);
  need_exact(c, "Aeppli dimension");
  if (!in_range(c, p, q)) return 0;
  int n = c.n();
  int ker = c.dim(p, q);
  if (p < n && q < n) ker = (c.del(p, q + 1) * c.dbar(p, q)).nullity();
  RatMat in_del = p >= 1 ? c.del(p - 1, q) : RatMat(c.dim(p, q), 0);
  RatMat in_dbar = q >= 1 ? c.dbar(p, q - 1) : RatMat(c.dim(p, q), 0);
  int im = RatMat::hstack(in_del, in_dbar).rank();
  return ker - im;
}

BigradedComplex conjugate_complex(const BigradedComplex& c) {
  need_valid(c);
  int n = c.n();
  ComplexBuildData d = ComplexBuildData::zeros(n, c.mode());
  for (int p = 0; p <= n; ++p)
    for (int q = 0; q <= n; ++q) {
      int i = d.index(p, q);
      d.dims[i] = c.dim(q, p);
      if (c.mode() == ScalarMode::Exact) {
        d.del[i] = c.dbar(q, p).conjugate();
        d.dbar[i] = c.del(q, p).conjugate();
      } else {
        d.fdel[i] = c.dbar_f(q, p).conjugate();
        d.fdbar[i] = c.del_f(q, p).conjugate();
      }
    }
  return validate_complex(std::move(d));
}

}  // namespace hodgelab
