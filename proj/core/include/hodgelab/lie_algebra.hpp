#pragma once

#include <vector>

#include "hodgelab/bigraded.hpp"

namespace hodgelab {

// One structure constant c^k_{ij} of a real 2n-dimensional Lie algebra:
// [e_i, e_j] = sum_k c^k_{ij} e_k, with 1-based indices and i < j stored.
struct StructureConstant {
  int i = 0, j = 0, k = 0;
  mpq_class c;
};

// Declares the (1,0)-coframe: row r holds the coefficients of omega^{r+1}
// on the real dual basis e^1..e^{2n}, complex rational entries. The rows
// together with their conjugates must span the complexified dual.
struct ComplexStructure {
  int n = 0;
  std::vector<std::vector<CRat>> coframe;  // n rows, 2n entries each
};

// Invariant-form complex of the algebra: d on the dual is extended as a
// derivation and split into bidegrees. Throws JacobiViolation when d*d != 0
// on the real dual, NonIntegrable when d of a (1,0)-form has a (0,2) part.
BigradedComplex from_lie_algebra(const std::vector<StructureConstant>& structure,
                                 const ComplexStructure& j);

}  // namespace hodgelab
