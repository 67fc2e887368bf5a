#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "hodgelab/dh_operator.hpp"
#include "hodgelab/scalar.hpp"
#include "hodgelab/spectral.hpp"

namespace hodgelab {

// theta_h scales the (p,q)-slot of a degree-k vector by h^p. It is
// invertible for h > 0 and intertwines d with d_h = dbar + h*del:
// d_h . theta_h = theta_h . d, exactly over rationals.
Eigen::MatrixXcd theta_h_matrix(const TotalComplexView& v, double h, int k);
RatMat theta_h_matrix_exact(const TotalComplexView& v, const mpq_class& h,
                            int k);
Eigen::VectorXcd theta_h(const TotalComplexView& v, double h, int k,
                         const Eigen::VectorXcd& form);

// d_h on total degree k with exact rational h (EXACT mode).
RatMat d_h_total_exact(const TotalComplexView& v, const mpq_class& h, int k);

// The composed map from the harmonic de Rham basis of degree k to the sum
// of Dolbeault-harmonic spaces: theta_h, then the harmonic representative
// of the d_h-class, then projection onto ker Delta_0, read in the
// per-bidegree dbar-harmonic bases.
struct InjectionWitness {
  double h = 0;
  int k = 0;
  Eigen::MatrixXcd q;  // rows: stacked dbar-harmonic coords, cols: b^k
  double sigma_min = 0;
  int rank = 0;
  int b_k = 0;
  std::vector<BidegreeSlot> row_slots;  // (p,q) blocks of the rows
};

InjectionWitness q_injection(const BigradedComplex& c,
                             const HermitianMetric& g, double h, int k,
                             double rel_tol = kKernelRelTol,
                             double cert_tol = kCertTol);

// All report dimensions are exact rationals so that Gamma-normalized
// covers (gamma_order > 1) reuse the same structures; base complexes carry
// integers with denominator 1.
struct DegreeLine {
  int k = 0;
  mpq_class b;             // dim H^k_dR
  mpq_class h_dbar_sum;    // sum of h^{p,q}_dbar over p+q = k
  mpq_class ba_sum;        // sum of h^{p,q}_A + h^{p,q}_BC
  bool frolicher_ok = false;  // b <= h_dbar_sum
  mpq_class slack;            // h_dbar_sum - b
  bool ddbar_equal = false;   // 2b == ba_sum
};

struct BidegreeLine {
  int p = 0, q = 0;
  mpq_class h_dbar, h_del, h_bc, h_a;
  bool at_ok = false;  // h_dbar + h_del <= h_a + h_bc
};

// Five-term sequence at degree 2, left to right:
//   0 -> H^{1,1}_{im d} -> H^{1,1}_BC -> H^2_dR -> H^{2,0}_del + H^{0,2}_dbar
//     -> coker -> 0
// where H^{1,1}_{im d} = (A^{1,1} n im d) / im(del dbar). Exactness forces
// the alternating sum of dimensions to vanish.
struct KodairaSpencerReport {
  mpq_class b2, h02_dbar, h11_bc;
  bool holds = false;     // b2 <= 2 h02_dbar + h11_bc
  bool equality = false;
  mpq_class five_term[5];
  mpq_class alternating_sum;
};

struct InequalityReport {
  std::string model;
  long gamma_order = 1;
  int n = 0;
  std::vector<DegreeLine> degrees;
  std::vector<BidegreeLine> bidegrees;
  bool frolicher_all_ok = false;
  bool at_all_ok = false;
  bool lemma_holds = false;
  int first_strict_k = -1;  // first k with 2b < ba_sum, -1 when none
  mpq_class euler_residual;
  KodairaSpencerReport ks;

  // The lemma verdict is informational; everything else must hold on a
  // valid complex.
  bool all_pass() const;
};

InequalityReport frolicher_check(const BigradedComplex& c);
long euler_relation_check(const BigradedComplex& c);

struct DdbarReport {
  bool lemma_holds = false;
  int first_strict_k = -1;
  std::vector<DegreeLine> degrees;
};

DdbarReport ddbar_detect(const BigradedComplex& c);
KodairaSpencerReport kodaira_spencer_check(const BigradedComplex& c);

}  // namespace hodgelab
