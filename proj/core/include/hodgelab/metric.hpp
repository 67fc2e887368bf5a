#pragma once

#include <Eigen/Dense>
#include <memory>
#include <vector>

#include "hodgelab/bigraded.hpp"

namespace hodgelab {

inline constexpr double kHermitianTol = 1e-12;

// Per-bidegree Gram matrices with cached Cholesky factors. The inner
// product on A^{p,q} is <x,y> = y^dagger G x; the identity metric declares
// the stored basis orthonormal.
class HermitianMetric {
 public:
  HermitianMetric() = default;
  static HermitianMetric identity(const BigradedComplex& c);
  // Table indexed p*(n+1)+q; throws NotPositiveDefinite on a failed
  // factorization, ShapeMismatch on wrong sizes.
  static HermitianMetric from_grams(const BigradedComplex& c,
                                    std::vector<Eigen::MatrixXcd> grams);

  bool valid() const { return data_ != nullptr; }
  int n() const;
  bool is_identity() const;
  const Eigen::MatrixXcd& gram(int p, int q) const;
  // Lower factor L with G = L L^dagger.
  const Eigen::MatrixXcd& chol(int p, int q) const;

 private:
  struct Data;
  std::shared_ptr<const Data> data_;
};

// A* = G_src^{-1} A^dagger G_tgt, the adjoint for the Gram inner products.
Eigen::MatrixXcd adjoint(const Eigen::MatrixXcd& a,
                         const Eigen::MatrixXcd& g_src,
                         const Eigen::MatrixXcd& g_tgt);

}  // namespace hodgelab
