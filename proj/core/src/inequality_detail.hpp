#pragma once

#include <string>
#include <vector>

#include "hodgelab/frolicher.hpp"

namespace hodgelab::detail {

struct KsCounts {
  long five[5] = {0, 0, 0, 0, 0};
  long b2 = 0, h02 = 0, h11bc = 0;
};

KsCounts ks_counts(const BigradedComplex& c);

// Sums every dimension over the pieces and divides by gamma_order; a base
// complex is the single-piece case with gamma_order 1.
InequalityReport assemble_inequality_report(
    const std::vector<const BigradedComplex*>& pieces, const std::string& model,
    long gamma_order);

}  // namespace hodgelab::detail
