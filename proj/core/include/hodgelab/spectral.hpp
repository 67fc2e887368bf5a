#pragma once

#include <Eigen/Dense>
#include <memory>
#include <optional>
#include <vector>

#include "hodgelab/dh_operator.hpp"
#include "hodgelab/scalar.hpp"

namespace hodgelab {

inline constexpr double kLambdaNearRel = 1e-9;
inline constexpr double kCertTol = 1e-8;

// Eigendecomposition of one Hermitian PSD degree block. Eigenvalues are
// ascending; those with magnitude at most rank_tol = rel_tol * lambda_max
// are snapped to 0, so the kernel reads off exactly.
class SpectralData {
 public:
  SpectralData() = default;
  SpectralData(const DhOperator& dh, int k, double rel_tol = kKernelRelTol);
  // Synthetic spectra (tests, oracles): any Hermitian PSD matrix.
  SpectralData(const Eigen::MatrixXcd& hermitian_psd, double h, int k,
               double rel_tol = kKernelRelTol);

  int dim() const { return int(eigenvalues_.size()); }
  const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }
  const Eigen::MatrixXcd& vectors() const { return vectors_; }
  double h() const { return h_; }
  int degree() const { return degree_; }
  double scale() const { return scale_; }        // max |eigenvalue|
  double rank_tol() const { return rank_tol_; }
  double snapped(int i) const;

  // #{i : snapped_i <= lambda}. Throws LambdaNearEigenvalue when lambda is
  // within 1e-9 * scale of an eigenvalue it does not hit exactly.
  int rank_at(double lambda) const;
  // First rank_at(lambda) eigenvector columns (orthonormal).
  Eigen::MatrixXcd basis_at(double lambda) const;

 private:
  void init(const Eigen::MatrixXcd& m, double rel_tol);
  Eigen::VectorXd eigenvalues_;
  Eigen::MatrixXcd vectors_;
  double h_ = 0, scale_ = 0, rank_tol_ = 0;
  int degree_ = 0;
};

// E_lambda = sum of eigenprojections with eigenvalue <= lambda.
Eigen::MatrixXcd spectral_projector(const SpectralData& s, double lambda);

// rank(E_lambda) / gamma_order as an exact rational.
mpq_class spectral_density(const SpectralData& s, double lambda,
                           long gamma_order);

struct InjectivityCertificate {
  double h = 0, sigma = 0, tau = 0;
  int dim_h_sigma = 0, dim_0_tau = 0;
  // Smallest singular value of E_{0,tau} restricted to im E_{h,sigma};
  // +infinity sentinel when that image is trivial.
  double sigma_min = 0;
  bool dim_zero = false;
  bool injective = false;
};

// Certifies that E_{0,tau} is injective on im E_{h,sigma}: sigma_min above
// cert_tol together with dim im E_{h,sigma} <= dim im E_{0,tau}.
InjectivityCertificate projector_injectivity(const SpectralData& s_h,
                                             double sigma,
                                             const SpectralData& s_0,
                                             double tau,
                                             double cert_tol = kCertTol);

// ShiftedSquare: ||(Delta_a + I)^{-1} - (Delta_b + I)^{-1}||_2 on degree k.
// FactoredPair cross-check: the same block extracted from
// (D + i)^{-1}(D - i)^{-1} = (D^2 + I)^{-1} assembled over all degrees.
enum class ResolventRoute { ShiftedSquare, FactoredPair };

double resolvent_distance(const DhOperator& a, const DhOperator& b, int k,
                          ResolventRoute route = ResolventRoute::ShiftedSquare);

// Largest singular value of (D_h - D_0)(I + Delta_0)^{-1/2} on degree k.
// This quadratic graph norm is equivalent to the norm ||phi|| + ||D_0 phi||
// up to the recorded factor sqrt(2).
struct GraphNormBound {
  double value = 0;
  double equivalence_factor = 0;
};

GraphNormBound reed_simon_criterion(const DhOperator& dh, const DhOperator& d0,
                                    int k);

// Smallest eigenvalue above the kernel snap; nullopt for the zero operator.
// At finite dimension a positive gap is equivalent to closed image.
std::optional<double> spectral_gap(const SpectralData& s);

struct SweepPoint {
  double h = 0;
  int n_h_sigma = 0, n_0_tau = 0;
  double sigma_min = 0;
  double resolvent_dist = 0, rs_criterion = 0;
  bool injective = false, dim_zero = false;
};

struct SweepRecord {
  int k = 0;
  double sigma = 0, tau = 0;
  std::vector<SweepPoint> points;  // h strictly decreasing
  // First grid h from which every later point stays injective.
  std::optional<double> h_star;
  bool nonmonotone = false;   // verdicts flipped back after turning injective
  bool density_ok = false;    // N_h(sigma) <= N_0(tau) at every point
};

SweepRecord h_sweep(const BigradedComplex& c, const HermitianMetric& g, int k,
                    const std::vector<double>& grid, double sigma, double tau,
                    double cert_tol = kCertTol);

}  // namespace hodgelab
