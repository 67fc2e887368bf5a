#include "hodgelab/covering.hpp"

#include "hodgelab/error.hpp"
#include "inequality_detail.hpp"

namespace hodgelab {

bool TwistData::trivial() const {
  for (const CRat& c : theta10)
    if (!c.is_zero()) return false;
  for (const CRat& c : theta01)
    if (!c.is_zero()) return false;
  return true;
}

CoveringComplex::CoveringComplex(BigradedComplex base, long gamma_order,
                                 std::vector<TwistData> sectors)
    : base_(std::move(base)),
      gamma_order_(gamma_order),
      sectors_(std::move(sectors)) {}

namespace {

bool spec_trivial(const TwistSpec& t) {
  for (const CRat& c : t.theta10)
    if (!c.is_zero()) return false;
  for (const CRat& c : t.theta01)
    if (!c.is_zero()) return false;
  return true;
}

BigradedComplex twist_sector(const BigradedComplex& base,
                             const TwistSpec& spec) {
  const ExteriorBasis& ext = *base.exterior();
  int n = base.n();
  std::vector<std::pair<int, CRat>> t10, t01;
  for (int j = 0; j < n; ++j) {
    t10.emplace_back(j, spec.theta10[j]);
    t01.emplace_back(n + j, spec.theta01[j]);
  }

  ComplexBuildData d = ComplexBuildData::zeros(n, ScalarMode::Exact);
  for (int p = 0; p <= n; ++p)
    for (int q = 0; q <= n; ++q) {
      int i = d.index(p, q);
      d.dims[i] = base.dim(p, q);
      d.labels[i] = base.labels(p, q);
      d.del[i] = base.del(p, q) + ext.wedge_matrix(t10, p, q);
      d.dbar[i] = base.dbar(p, q) + ext.wedge_matrix(t01, p, q);
    }
  d.exterior = std::make_shared<const ExteriorBasis>(n);

  ValidationReport rep = check_relations(d);
  if (!rep.passed) {
    const RelationCheck* w = rep.worst();
    fail(ErrorCode::SectorInvalid,
         "sector '" + spec.character + "' breaks " +
             (w ? w->relation : std::string("a relation")) +
             " after twisting");
  }
  return validate_complex(std::move(d));
}

}  // namespace

CoveringComplex build_cover(const BigradedComplex& base, long gamma_order,
                            const std::vector<TwistSpec>& twists) {
  if (!base.valid()) fail(ErrorCode::ConfigError, "cover needs a valid base");
  if (base.mode() != ScalarMode::Exact)
    fail(ErrorCode::ModeMismatch, "cover sectors need exact coefficients");
  if (!base.exterior())
    fail(ErrorCode::ConfigError,
         "cover needs a base with exterior generator labels");
  if (gamma_order < 1 || long(twists.size()) != gamma_order)
    fail(ErrorCode::ConfigError,
         "sector count must equal the covering order");

  int n = base.n();
  bool has_trivial = false;
  for (const TwistSpec& t : twists) {
    if (int(t.theta10.size()) != n || int(t.theta01.size()) != n)
      fail(ErrorCode::SectorInvalid,
           "sector '" + t.character + "' needs one coefficient per generator");
    has_trivial = has_trivial || spec_trivial(t);
  }
  if (!has_trivial)
    fail(ErrorCode::MissingTrivial, "no sector carries the zero twist");

  std::vector<TwistData> sectors;
  sectors.reserve(twists.size());
  for (const TwistSpec& t : twists) {
    TwistData td;
    td.character = t.character;
    td.theta10 = t.theta10;
    td.theta01 = t.theta01;
    td.sector = twist_sector(base, t);
    sectors.push_back(std::move(td));
  }
  return CoveringComplex(base, gamma_order, std::move(sectors));
}

mpq_class gamma_dim(long v_dim, long gamma_order) {
  if (gamma_order < 1)
    fail(ErrorCode::ConfigError, "gamma order must be positive");
  return mpq_class(v_dim) / gamma_order;
}

InequalityReport l2_report(const CoveringComplex& cov) {
  if (!cov.valid()) fail(ErrorCode::ConfigError, "cover not built");
  std::vector<const BigradedComplex*> pieces;
  for (const TwistData& s : cov.sectors()) pieces.push_back(&s.sector);
  return detail::assemble_inequality_report(pieces, "", cov.gamma_order());
}

SectorInjectivity sector_injectivity(const CoveringComplex& cov,
                                     const HermitianMetric& g, int k,
                                     double sigma, double tau, double h,
                                     double cert_tol) {
  if (!cov.valid()) fail(ErrorCode::ConfigError, "cover not built");
  SectorInjectivity out;
  long sum_h = 0, sum_0 = 0;
  out.all_injective = true;
  for (const TwistData& s : cov.sectors()) {
    auto frame = std::make_shared<const OrthoFrame>(s.sector, g);
    SpectralData sh(build_dh(frame, h), k);
    SpectralData s0(build_dh(frame, 0.0), k);
    InjectivityCertificate cert =
        projector_injectivity(sh, sigma, s0, tau, cert_tol);
    sum_h += cert.dim_h_sigma;
    sum_0 += cert.dim_0_tau;
    out.all_injective = out.all_injective && cert.injective;
    out.certificates.push_back(cert);
  }
  out.n_h_sigma = gamma_dim(sum_h, cov.gamma_order());
  out.n_0_tau = gamma_dim(sum_0, cov.gamma_order());
  out.gamma_inequality_ok = out.n_h_sigma <= out.n_0_tau;
  return out;
}

}  // namespace hodgelab
