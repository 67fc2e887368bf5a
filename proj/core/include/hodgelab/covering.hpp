#pragma once

#include <string>
#include <vector>

#include "hodgelab/frolicher.hpp"
#include "hodgelab/spectral.hpp"

namespace hodgelab {

// One character sector of a finite normal covering: the base complex with
// differentials shifted by wedging constant one-forms,
// del_chi = del + theta10 ^ .  and  dbar_chi = dbar + theta01 ^ . , stored
// as a full validated complex. Coefficients are per generator of the base
// coframe.
struct TwistData {
  std::string character;
  std::vector<CRat> theta10, theta01;
  BigradedComplex sector;

  bool trivial() const;
};

struct TwistSpec {
  std::string character;
  std::vector<CRat> theta10, theta01;
};

// Finite cover of order m as the direct sum of m character sectors; the
// trivial sector equals the base exactly. Gamma-dimensions divide by m.
class CoveringComplex {
 public:
  CoveringComplex() = default;
  CoveringComplex(BigradedComplex base, long gamma_order,
                  std::vector<TwistData> sectors);

  bool valid() const { return gamma_order_ > 0; }
  const BigradedComplex& base() const { return base_; }
  long gamma_order() const { return gamma_order_; }
  const std::vector<TwistData>& sectors() const { return sectors_; }

 private:
  BigradedComplex base_;
  long gamma_order_ = 0;
  std::vector<TwistData> sectors_;
};

// Builds and validates every sector. Throws MissingTrivial when no twist
// is zero, SectorInvalid when a twisted differential breaks the bigraded
// relations, ConfigError when the sector count differs from gamma_order.
CoveringComplex build_cover(const BigradedComplex& base, long gamma_order,
                            const std::vector<TwistSpec>& twists);

mpq_class gamma_dim(long v_dim, long gamma_order);

// Gamma-normalized inequality chain: every dimension is the sector sum
// divided by gamma_order, exact.
InequalityReport l2_report(const CoveringComplex& cov);

struct SectorInjectivity {
  std::vector<InjectivityCertificate> certificates;  // sector order
  mpq_class n_h_sigma, n_0_tau;  // Gamma-normalized densities
  bool all_injective = false;
  // N_h(sigma) <= N_0(tau) at the Gamma level; asserted whenever every
  // sector certificate is injective.
  bool gamma_inequality_ok = false;
};

// The metric is pulled back to every sector unchanged.
SectorInjectivity sector_injectivity(const CoveringComplex& cov,
                                     const HermitianMetric& g, int k,
                                     double sigma, double tau, double h,
                                     double cert_tol = kCertTol);

}  // namespace hodgelab
