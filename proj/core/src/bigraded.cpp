#include "hodgelab/bigraded.hpp"

#include <algorithm>
#include <cmath>

#include "hodgelab/error.hpp"

namespace hodgelab {

const char* to_string(ScalarMode mode) {
  return mode == ScalarMode::Exact ? "exact" : "float";
}

ComplexBuildData ComplexBuildData::zeros(int n, ScalarMode mode) {
  if (n < 1) fail(ErrorCode::ConfigError, "complex dimension n must be >= 1");
  ComplexBuildData d;
  d.n = n;
  d.mode = mode;
  std::size_t cells = std::size_t(n + 1) * (n + 1);
  d.dims.assign(cells, 0);
  d.del.resize(cells);
  d.dbar.resize(cells);
  d.fdel.resize(cells);
  d.fdbar.resize(cells);
  d.labels.resize(cells);
  return d;
}

int ComplexBuildData::dim(int p, int q) const {
  if (p < 0 || q < 0 || p > n || q > n) return 0;
  return dims[index(p, q)];
}

const RelationCheck* ValidationReport::worst() const {
  const RelationCheck* w = nullptr;
  for (const auto& c : checks)
    if (!w || c.residual > w->residual) w = &c;
  return w;
}

struct BigradedComplex::Data {
  int n = 0;
  ScalarMode mode = ScalarMode::Exact;
  std::vector<int> dims;
  std::vector<RatMat> del, dbar;
  std::vector<Eigen::MatrixXcd> fdel, fdbar;
  std::vector<std::vector<std::string>> labels;
  std::shared_ptr<const ExteriorBasis> exterior;
  ValidationReport report;

  int index(int p, int q) const { return p * (n + 1) + q; }
};

int BigradedComplex::n() const { return data_->n; }
ScalarMode BigradedComplex::mode() const { return data_->mode; }

int BigradedComplex::dim(int p, int q) const {
  if (p < 0 || q < 0 || p > data_->n || q > data_->n) return 0;
  return data_->dims[data_->index(p, q)];
}

int BigradedComplex::total_dim(int k) const {
  int s = 0;
  for (int p = 0; p <= data_->n; ++p) s += dim(p, k - p);
  return s;
}

const RatMat& BigradedComplex::del(int p, int q) const {
  if (data_->mode != ScalarMode::Exact)
    fail(ErrorCode::ModeMismatch, "exact matrices unavailable in float mode");
  return data_->del[data_->index(p, q)];
}

const RatMat& BigradedComplex::dbar(int p, int q) const {
  if (data_->mode != ScalarMode::Exact)
    fail(ErrorCode::ModeMismatch, "exact matrices unavailable in float mode");
  return data_->dbar[data_->index(p, q)];
}

const Eigen::MatrixXcd& BigradedComplex::del_f(int p, int q) const {
  return data_->fdel[data_->index(p, q)];
}

const Eigen::MatrixXcd& BigradedComplex::dbar_f(int p, int q) const {
  return data_->fdbar[data_->index(p, q)];
}

const std::vector<std::string>& BigradedComplex::labels(int p, int q) const {
  return data_->labels[data_->index(p, q)];
}

const ExteriorBasis* BigradedComplex::exterior() const {
  return data_->exterior.get();
}

const ValidationReport& BigradedComplex::validation() const {
  return data_->report;
}

namespace {

double max_abs(const Eigen::MatrixXcd& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

void check_shapes(const ComplexBuildData& d) {
  int n = d.n;
  std::size_t cells = std::size_t(n + 1) * (n + 1);
  if (d.dims.size() != cells)
    fail(ErrorCode::ShapeMismatch, "dims table has wrong size");
  bool exact = d.mode == ScalarMode::Exact;
  if ((exact ? d.del.size() : d.fdel.size()) != cells ||
      (exact ? d.dbar.size() : d.fdbar.size()) != cells)
    fail(ErrorCode::ShapeMismatch, "differential tables have wrong size");

  auto expect = [&](long rows, long cols, int p, int q, const char* name,
                    long er, long ec) {
    if (rows != er || cols != ec)
      fail(ErrorCode::ShapeMismatch,
           std::string(name) + " at (" + std::to_string(p) + "," +
               std::to_string(q) + ") is " + std::to_string(rows) + "x" +
               std::to_string(cols) + ", expected " + std::to_string(er) +
               "x" + std::to_string(ec));
  };
  for (int p = 0; p <= n; ++p)
    for (int q = 0; q <= n; ++q) {
      int i = d.index(p, q);
      if (d.dims[i] < 0)
        fail(ErrorCode::ShapeMismatch, "negative dimension in dims table");
      long dp = p < n ? d.dims[d.index(p + 1, q)] : 0;
      long dq = q < n ? d.dims[d.index(p, q + 1)] : 0;
      if (exact) {
        expect(d.del[i].rows(), d.del[i].cols(), p, q, "del", dp, d.dims[i]);
        expect(d.dbar[i].rows(), d.dbar[i].cols(), p, q, "dbar", dq,
               d.dims[i]);
      } else {
        expect(d.fdel[i].rows(), d.fdel[i].cols(), p, q, "del", dp,
               d.dims[i]);
        expect(d.fdbar[i].rows(), d.fdbar[i].cols(), p, q, "dbar", dq,
               d.dims[i]);
      }
      if (!d.labels[i].empty() && int(d.labels[i].size()) != d.dims[i])
        fail(ErrorCode::ShapeMismatch, "label count differs from dimension");
    }
}

}  // namespace

ValidationReport check_relations(const ComplexBuildData& d, double rel_tol) {
  check_shapes(d);
  ValidationReport rep;
  rep.rel_tol = rel_tol;
  rep.passed = true;
  bool exact = d.mode == ScalarMode::Exact;
  int n = d.n;

  // Residual of A*B against the product scale; exact products short-circuit
  // to a yes/no with the float magnitude kept for the report.
  auto record = [&](const std::string& rel, int p, int q,
                    const RatMat* ea, const RatMat* eb,
                    const Eigen::MatrixXcd& fa, const Eigen::MatrixXcd& fb,
                    const RatMat* ec = nullptr, const RatMat* ed = nullptr,
                    const Eigen::MatrixXcd* fc = nullptr,
                    const Eigen::MatrixXcd* fd = nullptr) {
    RelationCheck chk;
    chk.relation = rel;
    chk.p = p;
    chk.q = q;
    if (exact) {
      RatMat prod = (*ea) * (*eb);
      if (ec) prod = prod + (*ec) * (*ed);
      chk.ok = prod.is_zero();
      chk.residual = chk.ok ? 0.0 : max_abs(prod.to_float());
    } else {
      Eigen::MatrixXcd prod = fa * fb;
      double scale = std::max(1.0, max_abs(fa) * max_abs(fb));
      if (fc) {
        prod += (*fc) * (*fd);
        scale = std::max(scale, std::max(1.0, max_abs(*fc) * max_abs(*fd)));
      }
      chk.residual = max_abs(prod);
      chk.ok = chk.residual <= rel_tol * scale;
    }
    if (!chk.ok) rep.passed = false;
    rep.checks.push_back(std::move(chk));
  };

  for (int p = 0; p <= n; ++p)
    for (int q = 0; q <= n; ++q) {
      int i = d.index(p, q);
      if (p + 1 <= n) {
        int up = d.index(p + 1, q);
        record("del.del", p, q, &d.del[up], &d.del[i], d.fdel[up], d.fdel[i]);
      }
      if (q + 1 <= n) {
        int rq = d.index(p, q + 1);
        record("dbar.dbar", p, q, &d.dbar[rq], &d.dbar[i], d.fdbar[rq],
               d.fdbar[i]);
      }
      if (p + 1 <= n && q + 1 <= n) {
        int up = d.index(p + 1, q), rq = d.index(p, q + 1);
        record("del.dbar+dbar.del", p, q, &d.del[rq], &d.dbar[i], d.fdel[rq],
               d.fdbar[i], &d.dbar[up], &d.del[i], &d.fdbar[up], &d.fdel[i]);
      }
    }
  return rep;
}

BigradedComplex validate_complex(ComplexBuildData data, double rel_tol) {
  ValidationReport rep = check_relations(data, rel_tol);
  if (!rep.passed) {
    for (const auto& c : rep.checks)
      if (!c.ok)
        fail(ErrorCode::RelationViolation,
             c.relation + " fails at bidegree (" + std::to_string(c.p) + "," +
                 std::to_string(c.q) + "), residual " +
                 std::to_string(c.residual));
  }

  auto d = std::make_shared<BigradedComplex::Data>();
  d->n = data.n;
  d->mode = data.mode;
  d->dims = std::move(data.dims);
  d->labels = std::move(data.labels);
  d->exterior = std::move(data.exterior);
  d->report = std::move(rep);
  if (data.mode == ScalarMode::Exact) {
    d->del = std::move(data.del);
    d->dbar = std::move(data.dbar);
    d->fdel.reserve(d->del.size());
    d->fdbar.reserve(d->dbar.size());
    for (const auto& m : d->del) d->fdel.push_back(m.to_float());
    for (const auto& m : d->dbar) d->fdbar.push_back(m.to_float());
  } else {
    d->fdel = std::move(data.fdel);
    d->fdbar = std::move(data.fdbar);
  }

  BigradedComplex c;
  c.data_ = std::move(d);
  return c;
}

//------------------------------------------------------------------------------
// TotalComplexView
//------------------------------------------------------------------------------

TotalComplexView::TotalComplexView(const BigradedComplex& c) : c_(c) {
  int n = c.n();
  int degrees = 2 * n + 1;
  slots_.resize(degrees);
  d_f_.resize(degrees);
  bool exact = c.mode() == ScalarMode::Exact;
  if (exact) d_.resize(degrees);

  for (int k = 0; k < degrees; ++k) {
    int off = 0;
    for (int p = std::max(0, k - n); p <= std::min(n, k); ++p) {
      BidegreeSlot s{p, k - p, off, c.dim(p, k - p)};
      off += s.dim;
      slots_[k].push_back(s);
    }
  }

  for (int k = 0; k < degrees; ++k) {
    int rows = dim(k + 1), cols = dim(k);
    Eigen::MatrixXcd f = Eigen::MatrixXcd::Zero(rows, cols);
    RatMat e(rows, cols);
    for (const BidegreeSlot& src : slots_[k]) {
      const BidegreeSlot* up = k + 1 <= 2 * n ? slot(k + 1, src.p + 1) : nullptr;
      const BidegreeSlot* rt = k + 1 <= 2 * n ? slot(k + 1, src.p) : nullptr;
      if (up && up->dim && src.dim) {
        f.block(up->offset, src.offset, up->dim, src.dim) =
            c.del_f(src.p, src.q);
        if (exact) {
          const RatMat& b = c.del(src.p, src.q);
          for (int i = 0; i < b.rows(); ++i)
            for (int j = 0; j < b.cols(); ++j)
              e.at(up->offset + i, src.offset + j) = b.at(i, j);
        }
      }
      if (rt && rt->dim && src.dim) {
        f.block(rt->offset, src.offset, rt->dim, src.dim) =
            c.dbar_f(src.p, src.q);
        if (exact) {
          const RatMat& b = c.dbar(src.p, src.q);
          for (int i = 0; i < b.rows(); ++i)
            for (int j = 0; j < b.cols(); ++j)
              e.at(rt->offset + i, src.offset + j) = b.at(i, j);
        }
      }
    }
    d_f_[k] = std::move(f);
    if (exact) d_[k] = std::move(e);
  }

  // d.d = 0 is forced by the bigraded relations; re-checked here since the
  // assembly itself could be wrong.
  double tol = c.validation().rel_tol;
  for (int k = 0; k + 1 < degrees; ++k) {
    if (exact) {
      if (!(d_[k + 1] * d_[k]).is_zero())
        fail(ErrorCode::RelationViolation,
             "total d.d != 0 at degree " + std::to_string(k));
    } else {
      Eigen::MatrixXcd prod = d_f_[k + 1] * d_f_[k];
      double scale =
          std::max(1.0, prod.size() == 0
                            ? 0.0
                            : d_f_[k + 1].cwiseAbs().maxCoeff() *
                                  (d_f_[k].size() ? d_f_[k].cwiseAbs().maxCoeff()
                                                  : 0.0));
      if (prod.size() && prod.cwiseAbs().maxCoeff() > tol * scale)
        fail(ErrorCode::RelationViolation,
             "total d.d exceeds tolerance at degree " + std::to_string(k));
    }
  }
}

int TotalComplexView::n() const { return c_.n(); }
ScalarMode TotalComplexView::mode() const { return c_.mode(); }

int TotalComplexView::dim(int k) const {
  if (k < 0 || k > max_degree()) return 0;
  int s = 0;
  for (const auto& sl : slots_[k]) s += sl.dim;
  return s;
}

const std::vector<BidegreeSlot>& TotalComplexView::slots(int k) const {
  return slots_.at(k);
}

const BidegreeSlot* TotalComplexView::slot(int k, int p) const {
  if (k < 0 || k > max_degree()) return nullptr;
  for (const auto& s : slots_[k])
    if (s.p == p) return &s;
  return nullptr;
}

const RatMat& TotalComplexView::d(int k) const {
  if (mode() != ScalarMode::Exact)
    fail(ErrorCode::ModeMismatch, "exact total differential in float mode");
  return d_.at(k);
}

const Eigen::MatrixXcd& TotalComplexView::d_f(int k) const { return d_f_.at(k); }

TotalComplexView total_view(const BigradedComplex& c) {
  return TotalComplexView(c);
}

//------------------------------------------------------------------------------
// Derivation extension over the exterior basis
//------------------------------------------------------------------------------

namespace {

std::pair<int, int> term_bidegree(int n, int g1, int g2) {
  int p = (g1 < n ? 1 : 0) + (g2 < n ? 1 : 0);
  return {p, 2 - p};
}

// One derivation table: d(m) = sum_j (-1)^j m0^..^d(m_j)^..; each generator
// image is a two-form of uniform bidegree, so every contribution lands in
// the single target cell.
void extend_derivation(const ExteriorBasis& basis,
                       const std::vector<TwoForm>& gen_d, int dp, int dq,
                       std::vector<RatMat>& out) {
  int n = basis.n();
  for (int p = 0; p <= n; ++p)
    for (int q = 0; q <= n; ++q) {
      int tp = p + dp, tq = q + dq;
      RatMat m(basis.dim(tp, tq), basis.dim(p, q));
      const auto& cell = basis.monomials(p, q);
      for (int col = 0; col < int(cell.size()); ++col) {
        const Monomial& mono = cell[col];
        for (std::size_t j = 0; j < mono.size(); ++j) {
          int leib = (j % 2 == 0) ? 1 : -1;
          for (const auto& [a, b, coef] : gen_d[mono[j]].terms) {
            Monomial seq;
            seq.reserve(mono.size() + 1);
            seq.insert(seq.end(), mono.begin(), mono.begin() + j);
            seq.push_back(a);
            seq.push_back(b);
            seq.insert(seq.end(), mono.begin() + j + 1, mono.end());
            auto [sign, sorted] = ExteriorBasis::wedge(seq, {});
            if (sign == 0) continue;
            int row = basis.index_of(tp, tq, sorted);
            m.at(row, col) += coef * CRat(sign * leib);
          }
        }
      }
      out[std::size_t(p) * (n + 1) + q] = std::move(m);
    }
}

}  // namespace

ComplexBuildData build_exterior_complex(int n,
                                        const GeneratorDifferentials& gens) {
  if (int(gens.del.size()) != 2 * n || int(gens.dbar.size()) != 2 * n)
    fail(ErrorCode::ShapeMismatch,
         "generator differential tables must have 2n entries");
  auto basis = std::make_shared<const ExteriorBasis>(n);

  for (int g = 0; g < 2 * n; ++g) {
    int gp = g < n ? 1 : 0, gq = 1 - gp;
    for (const auto& [a, b, c] : gens.del[g].terms)
      if (term_bidegree(n, a, b) != std::make_pair(gp + 1, gq))
        fail(ErrorCode::ConfigError,
             "del of generator " + basis->generator_name(g) +
                 " is not of bidegree (+1,0)");
    for (const auto& [a, b, c] : gens.dbar[g].terms)
      if (term_bidegree(n, a, b) != std::make_pair(gp, gq + 1))
        fail(ErrorCode::ConfigError,
             "dbar of generator " + basis->generator_name(g) +
                 " is not of bidegree (0,+1)");
  }

  ComplexBuildData d = ComplexBuildData::zeros(n, ScalarMode::Exact);
  std::vector<TwoForm> del_terms(2 * n), dbar_terms(2 * n);
  for (int g = 0; g < 2 * n; ++g) {
    del_terms[g] = gens.del[g];
    dbar_terms[g] = gens.dbar[g];
  }
  for (int p = 0; p <= n; ++p)
    for (int q = 0; q <= n; ++q) {
      int i = d.index(p, q);
      d.dims[i] = basis->dim(p, q);
      d.labels[i].reserve(d.dims[i]);
      for (int b = 0; b < d.dims[i]; ++b)
        d.labels[i].push_back(basis->label(p, q, b));
    }
  extend_derivation(*basis, del_terms, 1, 0, d.del);
  extend_derivation(*basis, dbar_terms, 0, 1, d.dbar);
  d.exterior = std::move(basis);
  return d;
}

}  // namespace hodgelab
