#pragma once

#include <optional>
#include <string>

#include "hodgelab/covering.hpp"
#include "hodgelab/metric.hpp"

namespace hodgelab {

// File schema, canonical field order:
//   { "n": int, "mode": "exact"|"float",
//     "spaces": [{"p","q","dim","labels"?}],
//     "del":  [{"p","q","entries": [[row, col, "re", "im"], ...]}],
//     "dbar": [same],
//     "metric": [{"p","q","gram": [[row, col, re, im], ...]}]? }
// Entries are sparse triplets with rational strings "a/b"; omitted
// matrices are zero. Float complexes store their entries as exact dyadic
// rationals so save -> load -> save is byte-identical in both modes.
// Metric entries are plain numbers; an absent block means the identity.

struct ComplexFile {
  BigradedComplex complex_data;
  std::optional<HermitianMetric> metric;
};

ComplexFile load_complex_file(const std::string& path,
                              double rel_tol = kRelationTol);
BigradedComplex load_complex(const std::string& path,
                             double rel_tol = kRelationTol);

std::string serialize_complex(const BigradedComplex& c,
                              const HermitianMetric* metric = nullptr);
void save_complex(const std::string& path, const BigradedComplex& c,
                  const HermitianMetric* metric = nullptr);

// Cover schema:
//   { "base": <path>|<inline complex object>, "gammaOrder": m,
//     "sectors": [{"character", "theta10": [ ["re","im"], ...],
//                  "theta01": [...]}] }
// Theta arrays hold one coefficient pair per base coframe generator.
CoveringComplex load_cover_file(const std::string& path,
                                double rel_tol = kRelationTol);
std::string serialize_cover(const CoveringComplex& cov);
void save_cover(const std::string& path, const CoveringComplex& cov);

}  // namespace hodgelab
