#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "hodgelab/covering.hpp"
#include "hodgelab/metric.hpp"

namespace hodgelab {

// All differentials zero; exterior algebra on n generator pairs.
BigradedComplex torus(int n);

// n = 3, structure equation del w3 = -w1^w2 (and the conjugate on dbar);
// the standard strict-Frolicher example.
BigradedComplex iwasawa();

// n = 2, d w2 = w1^cw1 split as dbar w2 = w1^cw1, del cw2 = -w1^cw1;
// non-Kahler surface.
BigradedComplex kodaira_thurston();

// Z/m cover of torus(1): sector j twisted by theta10 = (j*i) w1,
// theta01 = (j*i) cw1, j = 0..m-1. Nontrivial sectors are exact Koszul
// complexes with vanishing cohomology in all four theories.
CoveringComplex torus_cover(long m);

// Deterministic SPD Grams G = I + (1/2) B B^dagger with B drawn from
// splitmix64 streams; identical across platforms for a fixed seed.
HermitianMetric random_metric(const BigradedComplex& c, std::uint64_t seed);

struct CatalogEntry {
  std::string name;
  std::string kind;  // "complex" or "cover"
  std::string note;
  std::function<BigradedComplex()> make;
  std::function<CoveringComplex()> make_cover;
};

const std::vector<CatalogEntry>& catalog();
const CatalogEntry* find_entry(const std::string& name);

}  // namespace hodgelab
