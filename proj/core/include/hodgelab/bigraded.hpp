#pragma once

#include <Eigen/Dense>
#include <memory>
#include <string>
#include <vector>

#include "hodgelab/exterior.hpp"
#include "hodgelab/rat_mat.hpp"

namespace hodgelab {

enum class ScalarMode { Exact, Float };

const char* to_string(ScalarMode mode);

// Residual tolerance for FLOAT-mode relation checks, relative to the
// product scale of the factor matrices.
inline constexpr double kRelationTol = 1e-12;

// Mutable staging area for a complex; validate_complex seals it. Tables are
// (n+1)^2 with index p*(n+1)+q. del(p,q) maps A^{p,q} -> A^{p+1,q} and has
// 0 rows when p = n; dbar analogous in q.
struct ComplexBuildData {
  int n = 0;
  ScalarMode mode = ScalarMode::Exact;
  std::vector<int> dims;
  std::vector<RatMat> del, dbar;
  std::vector<Eigen::MatrixXcd> fdel, fdbar;
  std::vector<std::vector<std::string>> labels;
  std::shared_ptr<const ExteriorBasis> exterior;

  static ComplexBuildData zeros(int n, ScalarMode mode);
  int index(int p, int q) const { return p * (n + 1) + q; }
  int dim(int p, int q) const;
};

struct RelationCheck {
  std::string relation;  // "shape", "del.del", "dbar.dbar", "del.dbar+dbar.del"
  int p = 0, q = 0;
  double residual = 0;
  bool ok = true;
};

struct ValidationReport {
  std::vector<RelationCheck> checks;
  double rel_tol = 0;
  bool passed = false;
  const RelationCheck* worst() const;
};

// Immutable after validation; cheap to copy and safe to share across
// threads.
class BigradedComplex {
 public:
  BigradedComplex() = default;

  bool valid() const { return data_ != nullptr; }
  int n() const;
  ScalarMode mode() const;
  int dim(int p, int q) const;  // 0 outside [0,n]^2
  int total_dim(int k) const;

  const RatMat& del(int p, int q) const;   // EXACT mode only
  const RatMat& dbar(int p, int q) const;  // EXACT mode only
  const Eigen::MatrixXcd& del_f(int p, int q) const;
  const Eigen::MatrixXcd& dbar_f(int p, int q) const;

  const std::vector<std::string>& labels(int p, int q) const;
  const ExteriorBasis* exterior() const;
  const ValidationReport& validation() const;

 private:
  struct Data;
  std::shared_ptr<const Data> data_;
  friend BigradedComplex validate_complex(ComplexBuildData, double);
};

// Checks shapes and the three bigraded relations; throws ShapeMismatch or
// RelationViolation naming the offending bidegree.
BigradedComplex validate_complex(ComplexBuildData data,
                                 double rel_tol = kRelationTol);

// Runs validate_complex but returns the report instead of throwing on a
// relation failure (shape errors still throw).
ValidationReport check_relations(const ComplexBuildData& data,
                                 double rel_tol = kRelationTol);

struct BidegreeSlot {
  int p = 0, q = 0;
  int offset = 0, dim = 0;
};

// Degree-graded view of the same complex: V_k = direct sum of A^{p,q} over
// p+q = k with slots ordered by ascending p, and d = del + dbar assembled
// blockwise.
class TotalComplexView {
 public:
  TotalComplexView() = default;
  explicit TotalComplexView(const BigradedComplex& c);

  const BigradedComplex& underlying() const { return c_; }
  int n() const;
  int max_degree() const { return 2 * n(); }
  ScalarMode mode() const;
  int dim(int k) const;
  const std::vector<BidegreeSlot>& slots(int k) const;
  const BidegreeSlot* slot(int k, int p) const;  // nullptr when absent

  const RatMat& d(int k) const;  // EXACT mode only
  const Eigen::MatrixXcd& d_f(int k) const;

 private:
  BigradedComplex c_;
  std::vector<std::vector<BidegreeSlot>> slots_;
  std::vector<RatMat> d_;
  std::vector<Eigen::MatrixXcd> d_f_;
};

TotalComplexView total_view(const BigradedComplex& c);

// Per-generator differentials for derivation extension: del[g] must have
// bidegree(g) + (1,0), dbar[g] bidegree(g) + (0,1). Size 2n each.
struct GeneratorDifferentials {
  std::vector<TwoForm> del, dbar;
};

// Extends the generator differentials as derivations across all wedge
// degrees and returns the staged complex, labels and basis attached.
ComplexBuildData build_exterior_complex(int n,
                                        const GeneratorDifferentials& gens);

}  // namespace hodgelab
