#pragma once

#include <Eigen/Dense>
#include <memory>

#include "hodgelab/ortho.hpp"

namespace hodgelab {

// Default kernel cut, relative to the top eigenvalue.
inline constexpr double kKernelRelTol = 1e-9;
inline constexpr double kProjectorTol = 1e-10;

// D_h = d_h + d_h* with d_h = dbar + h*del, in orthonormal coordinates.
// Stored per total degree: the block d_h^k (degree k -> k+1) and the
// Hermitian PSD square Delta_h^k = d_h^{k*} d_h^k + d_h^{k-1} d_h^{k-1*}.
// D_h^2 preserves degree; the mixed-degree blocks d_h^{k+1} d_h^k vanish
// and are checked at build time.
class DhOperator {
 public:
  DhOperator() = default;

  bool valid() const { return data_ != nullptr; }
  double h() const;
  int max_degree() const;
  int dim(int k) const;
  const Eigen::MatrixXcd& d_block(int k) const;
  const Eigen::MatrixXcd& laplacian(int k) const;
  std::shared_ptr<const OrthoFrame> frame() const;

 private:
  struct Data;
  std::shared_ptr<const Data> data_;
  friend DhOperator build_dh(std::shared_ptr<const OrthoFrame>, double);
};

DhOperator build_dh(const BigradedComplex& c, const HermitianMetric& g,
                    double h);
// Shares one frame across an h-grid.
DhOperator build_dh(std::shared_ptr<const OrthoFrame> frame, double h);

// Orthonormal basis of the eigenspaces of Delta_h^k below rel_tol * lambda_max.
// Throws TolAmbiguous when an eigenvalue falls inside [cut/10, 10*cut],
// making the kernel dimension tolerance-dependent. Each returned column is
// verified to be annihilated by d_h and d_h* within sqrt(cut).
Eigen::MatrixXcd harmonic_basis(const DhOperator& dh, int k,
                                double rel_tol = kKernelRelTol);

struct HodgeDecomposition {
  Eigen::MatrixXcd p_ker, p_im_prev, p_im_adj;
  Eigen::MatrixXcd harmonic;  // orthonormal columns spanning range(p_ker)
};

enum class DecompOperator { TotalD, Dh, Dbar };

// Three orthogonal projectors summing to the identity: kernel of the
// Laplacian, image of the incoming block, image of the outgoing adjoint.
// TotalD and Dh act on total degree k (pass q = -1); Dbar acts on bidegree
// (p,q) with k_or_p = p.
HodgeDecomposition hodge_decomposition(const BigradedComplex& c,
                                       const HermitianMetric& g,
                                       DecompOperator op, int k_or_p,
                                       int q = -1, double h = 1.0,
                                       double rel_tol = kKernelRelTol);

}  // namespace hodgelab
