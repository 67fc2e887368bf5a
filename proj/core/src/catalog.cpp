#include "hodgelab/catalog.hpp"

#include "hodgelab/error.hpp"

namespace hodgelab {

BigradedComplex torus(int n) {
  GeneratorDifferentials gens;
  gens.del.resize(2 * n);
  gens.dbar.resize(2 * n);
  return validate_complex(build_exterior_complex(n, gens));
}

BigradedComplex iwasawa() {
  int n = 3;
  GeneratorDifferentials gens;
  gens.del.resize(2 * n);
  gens.dbar.resize(2 * n);
  // del w3 = -w1^w2, dbar cw3 = -cw1^cw2; everything else closed.
  gens.del[2].add(0, 1, CRat(-1));
  gens.dbar[5].add(3, 4, CRat(-1));
  return validate_complex(build_exterior_complex(n, gens));
}

BigradedComplex kodaira_thurston() {
  int n = 2;
  GeneratorDifferentials gens;
  gens.del.resize(2 * n);
  gens.dbar.resize(2 * n);
  // d w2 = w1^cw1 lands entirely in (1,1): dbar w2 = w1^cw1, and the
  // conjugate relation del cw2 = -w1^cw1.
  gens.dbar[1].add(0, 2, CRat(1));
  gens.del[3].add(0, 2, CRat(-1));
  return validate_complex(build_exterior_complex(n, gens));
}

CoveringComplex torus_cover(long m) {
  if (m < 1) fail(ErrorCode::ConfigError, "cover order must be positive");
  BigradedComplex base = torus(1);
  std::vector<TwistSpec> twists;
  for (long j = 0; j < m; ++j) {
    TwistSpec t;
    t.character = "chi" + std::to_string(j);
    t.theta10 = {CRat::imag_unit(j)};
    t.theta01 = {CRat::imag_unit(j)};
    twists.push_back(std::move(t));
  }
  return build_cover(base, m, twists);
}

namespace {

struct SplitMix {
  std::uint64_t state;
  std::uint64_t next() {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  // [-1, 1), uniform over 2^53 dyadics.
  double unit() { return double(next() >> 11) * 0x1.0p-52 - 1.0; }
};

}  // namespace

HermitianMetric random_metric(const BigradedComplex& c, std::uint64_t seed) {
  if (!c.valid()) fail(ErrorCode::ConfigError, "complex not validated");
  SplitMix rng{seed};
  int n = c.n();
  std::vector<Eigen::MatrixXcd> grams(std::size_t(n + 1) * (n + 1));
  for (int p = 0; p <= n; ++p)
    for (int q = 0; q <= n; ++q) {
      int m = c.dim(p, q);
      Eigen::MatrixXcd b(m, m);
      for (int r = 0; r < m; ++r)
        for (int col = 0; col < m; ++col) {
          double re = rng.unit();
          double im = rng.unit();
          b(r, col) = std::complex<double>(re, im);
        }
      Eigen::MatrixXcd g =
          Eigen::MatrixXcd::Identity(m, m) + 0.5 * (b * b.adjoint());
      grams[std::size_t(p) * (n + 1) + q] = 0.5 * (g + g.adjoint().eval());
    }
  return HermitianMetric::from_grams(c, std::move(grams));
}

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = [] {
    std::vector<CatalogEntry> v;
    v.push_back({"torus1", "complex", "n = 1, all differentials vanish",
                 [] { return torus(1); }, nullptr});
    v.push_back({"torus2", "complex", "n = 2, all differentials vanish",
                 [] { return torus(2); }, nullptr});
    v.push_back({"iwasawa", "complex",
                 "n = 3 nilpotent complex with del w3 = -w1^w2; strict "
                 "Frolicher slack in degree 1",
                 iwasawa, nullptr});
    v.push_back({"kodaira_thurston", "complex",
                 "n = 2 non-Kahler surface with dbar w2 = w1^cw1",
                 kodaira_thurston, nullptr});
    for (long m : {2L, 3L, 4L})
      v.push_back({"torus1_z" + std::to_string(m), "cover",
                   "Z/" + std::to_string(m) +
                       " character cover of torus1 with imaginary twists",
                   nullptr, [m] { return torus_cover(m); }});
    return v;
  }();
  return entries;
}

const CatalogEntry* find_entry(const std::string& name) {
  for (const CatalogEntry& e : catalog())
    if (e.name == name) return &e;
  return nullptr;
}

}  // namespace hodgelab
