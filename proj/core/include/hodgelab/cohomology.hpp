#pragma once

#include "hodgelab/bigraded.hpp"

namespace hodgelab {

// Exact cohomology dimensions by rank-nullity. EXACT mode is tolerance
// free; FLOAT complexes fall back to a rank with relative singular value
// cut 1e-9 where the contract allows it (betti, hodge_*), and are rejected
// for the quotient theories.

int betti(const BigradedComplex& c, int k);
int hodge_dbar(const BigradedComplex& c, int p, int q);
int hodge_del(const BigradedComplex& c, int p, int q);
int bott_chern(const BigradedComplex& c, int p, int q);  // EXACT mode
int aeppli(const BigradedComplex& c, int p, int q);      // EXACT mode

// Entrywise conjugated complex with del and dbar exchanged; realizes the
// symmetries h^{p,q}_dbar(C) = h^{q,p}_del(C) and h_BC(p,q) = h_BC(q,p).
BigradedComplex conjugate_complex(const BigradedComplex& c);

}  // namespace hodgelab
