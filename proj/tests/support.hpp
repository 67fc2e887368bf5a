#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "hodgelab/bigraded.hpp"
#include "hodgelab/rat_mat.hpp"

// Test-local helpers. The rank and cohomology oracles here deliberately use
// plain rational row reduction, a different route from the library's
// fraction-free elimination, so agreement is a two-algorithm check.
namespace testsup {

using hodgelab::BigradedComplex;
using hodgelab::CRat;
using hodgelab::RatMat;

// splitmix64; every test draws from fixed-seed streams.
struct Rng {
  std::uint64_t s;
  explicit Rng(std::uint64_t seed) : s(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (s += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  // Inclusive bounds.
  long range(long lo, long hi) {
    return lo + long(next() % std::uint64_t(hi - lo + 1));
  }
  double unit() { return double(next() >> 11) * 0x1.0p-53; }
};

inline CRat rand_crat(Rng& rng) {
  mpq_class re(rng.range(-3, 3), rng.range(1, 3));
  mpq_class im(rng.range(-3, 3), rng.range(1, 3));
  re.canonicalize();
  im.canonicalize();
  return CRat(re, im);
}

inline RatMat rand_mat(Rng& rng, int rows, int cols) {
  RatMat m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      if (rng.range(0, 2)) m.at(i, j) = rand_crat(rng);
  return m;
}

inline RatMat rand_low_rank(Rng& rng, int rows, int cols, int rank) {
  return rand_mat(rng, rows, rank) * rand_mat(rng, rank, cols);
}

// Plain row echelon over the rational field with explicit division.
inline int naive_rank(RatMat m) {
  int r = 0;
  for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
    int pr = -1;
    for (int i = r; i < m.rows(); ++i)
      if (!m.at(i, c).is_zero()) {
        pr = i;
        break;
      }
    if (pr < 0) continue;
    if (pr != r)
      for (int j = 0; j < m.cols(); ++j) std::swap(m.at(pr, j), m.at(r, j));
    CRat inv = m.at(r, c).inverse();
    for (int j = c; j < m.cols(); ++j) m.at(r, j) = m.at(r, j) * inv;
    for (int i = r + 1; i < m.rows(); ++i) {
      if (m.at(i, c).is_zero()) continue;
      CRat f = m.at(i, c);
      for (int j = c; j < m.cols(); ++j)
        m.at(i, j) = m.at(i, j) - f * m.at(r, j);
    }
    ++r;
  }
  return r;
}

// Unipotent change of basis I + N (N strictly upper) and its exact inverse
// sum_{j} (-N)^j; nilpotency truncates the series at dim terms.
inline std::pair<RatMat, RatMat> rand_unipotent(Rng& rng, int dim) {
  RatMat nil(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j)
      if (rng.range(0, 1)) nil.at(i, j) = rand_crat(rng);
  RatMat p = RatMat::identity(dim) + nil;
  RatMat inv = RatMat::identity(dim);
  RatMat term = RatMat::identity(dim);
  for (int j = 1; j < dim; ++j) {
    term = term * nil.scaled(CRat(-1));
    if (term.is_zero()) break;
    inv = inv + term;
  }
  return {p, inv};
}

// Same complex in a random unipotent basis per bidegree; relations and all
// cohomology dimensions are preserved exactly.
inline BigradedComplex basis_changed(const BigradedComplex& c,
                                     std::uint64_t seed) {
  Rng rng(seed);
  int n = c.n();
  auto data = hodgelab::ComplexBuildData::zeros(n, hodgelab::ScalarMode::Exact);
  std::vector<RatMat> p(data.dims.size()), pinv(data.dims.size());
  for (int a = 0; a <= n; ++a)
    for (int b = 0; b <= n; ++b) {
      int i = data.index(a, b);
      data.dims[i] = c.dim(a, b);
      auto [u, uinv] = rand_unipotent(rng, data.dims[i]);
      p[i] = u;
      pinv[i] = uinv;
    }
  for (int a = 0; a <= n; ++a)
    for (int b = 0; b <= n; ++b) {
      int i = data.index(a, b);
      if (a < n)
        data.del[i] = p[data.index(a + 1, b)] * c.del(a, b) * pinv[i];
      else
        data.del[i] = RatMat(0, data.dims[i]);
      if (b < n)
        data.dbar[i] = p[data.index(a, b + 1)] * c.dbar(a, b) * pinv[i];
      else
        data.dbar[i] = RatMat(0, data.dims[i]);
    }
  return validate_complex(std::move(data));
}

inline BigradedComplex float_copy(const BigradedComplex& c) {
  int n = c.n();
  auto data = hodgelab::ComplexBuildData::zeros(n, hodgelab::ScalarMode::Float);
  for (int a = 0; a <= n; ++a)
    for (int b = 0; b <= n; ++b) {
      int i = data.index(a, b);
      data.dims[i] = c.dim(a, b);
      data.fdel[i] = c.del_f(a, b);
      data.fdbar[i] = c.dbar_f(a, b);
    }
  return validate_complex(std::move(data));
}

}  // namespace testsup
