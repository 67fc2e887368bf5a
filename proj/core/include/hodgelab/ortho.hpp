#pragma once

#include <Eigen/Dense>
#include <memory>

#include "hodgelab/bigraded.hpp"
#include "hodgelab/metric.hpp"

namespace hodgelab {

// Cholesky-orthonormal coordinates: with G = L L^dagger per bidegree, a
// vector x becomes L^dagger x, so every Gram is the identity and adjoints
// are plain conjugate transposes. An operator block transforms as
// L_tgt^dagger A L_src^{-dagger}. Bidegree slots are preserved, so any
// slot-diagonal scaling (such as theta_h) has the same matrix in either
// coordinate system.
class OrthoFrame {
 public:
  OrthoFrame() = default;
  OrthoFrame(const BigradedComplex& c, const HermitianMetric& g);

  const BigradedComplex& underlying() const;
  const HermitianMetric& metric() const;
  const TotalComplexView& view() const;
  int n() const;
  int max_degree() const;
  int dim(int k) const;
  const std::vector<BidegreeSlot>& slots(int k) const;

  const Eigen::MatrixXcd& del(int p, int q) const;
  const Eigen::MatrixXcd& dbar(int p, int q) const;
  // d_h = dbar + h*del assembled on degree k -> k+1.
  Eigen::MatrixXcd d_h_block(int k, double h) const;

  // Change of coordinates on degree k: to_ortho = blockdiag(L^dagger),
  // from_ortho its inverse.
  Eigen::MatrixXcd to_ortho(int k) const;
  Eigen::MatrixXcd from_ortho(int k) const;

 private:
  struct Data;
  std::shared_ptr<const Data> data_;
};

}  // namespace hodgelab
