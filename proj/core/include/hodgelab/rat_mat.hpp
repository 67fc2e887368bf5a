#pragma once

#include <Eigen/Dense>
#include <vector>

#include "hodgelab/scalar.hpp"

namespace hodgelab {

// Dense matrix over complex rationals. Operators act on column vectors, so
// a map A -> B has dim(B) rows and dim(A) columns. Rank and nullspace are
// tolerance-free; rank runs fraction-free over Gaussian integers.
class RatMat {
 public:
  RatMat() = default;
  RatMat(int rows, int cols);
  static RatMat identity(int m);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  CRat& at(int r, int c) { return a_[std::size_t(r) * cols_ + c]; }
  const CRat& at(int r, int c) const { return a_[std::size_t(r) * cols_ + c]; }

  bool is_zero() const;
  bool operator==(const RatMat& o) const;

  RatMat operator+(const RatMat& o) const;
  RatMat operator-(const RatMat& o) const;
  RatMat operator*(const RatMat& o) const;
  RatMat scaled(const CRat& c) const;
  RatMat conjugate() const;
  RatMat transpose() const;
  RatMat adjoint() const { return conjugate().transpose(); }

  static RatMat hstack(const RatMat& a, const RatMat& b);
  static RatMat vstack(const RatMat& a, const RatMat& b);
  RatMat row_block(int first, int count) const;

  int rank() const;
  int nullity() const { return cols_ - rank(); }
  // Columns form a basis of the kernel (echelon construction, deterministic).
  RatMat nullspace() const;

  Eigen::MatrixXcd to_float() const;

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<CRat> a_;
};

}  // namespace hodgelab
