#include "hodgelab/lie_algebra.hpp"

#include <map>
#include <tuple>

#include "hodgelab/error.hpp"

namespace hodgelab {

namespace {

using RealTwoForm = std::map<std::pair<int, int>, mpq_class>;
using CplxTwoForm = std::map<std::pair<int, int>, CRat>;

int sort3(int& a, int& b, int& c) {
  int sign = 1;
  if (a > b) { std::swap(a, b); sign = -sign; }
  if (b > c) { std::swap(b, c); sign = -sign; }
  if (a > b) { std::swap(a, b); sign = -sign; }
  if (a == b || b == c) return 0;
  return sign;
}

// Gauss-Jordan inverse over the complex rationals; nullopt when singular.
std::optional<RatMat> invert(const RatMat& t) {
  int m = t.rows();
  RatMat a = RatMat::hstack(t, RatMat::identity(m));
  int r = 0;
  for (int c = 0; c < m && r < m; ++c) {
    int pr = -1;
    for (int i = r; i < m; ++i)
      if (!a.at(i, c).is_zero()) {
        pr = i;
        break;
      }
    if (pr < 0) return std::nullopt;
    if (pr != r)
      for (int j = 0; j < 2 * m; ++j) std::swap(a.at(pr, j), a.at(r, j));
    CRat inv = a.at(r, c).inverse();
    for (int j = 0; j < 2 * m; ++j) a.at(r, j) = a.at(r, j) * inv;
    for (int i = 0; i < m; ++i) {
      if (i == r || a.at(i, c).is_zero()) continue;
      CRat f = a.at(i, c);
      for (int j = 0; j < 2 * m; ++j)
        a.at(i, j) = a.at(i, j) - f * a.at(r, j);
    }
    ++r;
  }
  if (r < m) return std::nullopt;
  RatMat inv(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) inv.at(i, j) = a.at(i, m + j);
  return inv;
}

}  // namespace

BigradedComplex from_lie_algebra(const std::vector<StructureConstant>& structure,
                                 const ComplexStructure& j) {
  int n = j.n;
  if (n < 1) fail(ErrorCode::ConfigError, "complex structure needs n >= 1");
  int nn = 2 * n;
  if (int(j.coframe.size()) != n)
    fail(ErrorCode::ShapeMismatch, "coframe must declare n (1,0)-forms");
  for (const auto& row : j.coframe)
    if (int(row.size()) != nn)
      fail(ErrorCode::ShapeMismatch, "coframe rows must have 2n entries");

  // Fold the constants antisymmetrically: c[k][(i,j)] with i < j, 0-based.
  std::vector<RealTwoForm> de(nn);
  for (const StructureConstant& sc : structure) {
    if (sc.i < 1 || sc.j < 1 || sc.k < 1 || sc.i > nn || sc.j > nn ||
        sc.k > nn || sc.i == sc.j)
      fail(ErrorCode::ConfigError, "structure constant index out of range");
    int a = sc.i - 1, b = sc.j - 1;
    mpq_class v = -sc.c;  // de^k = -sum c^k_{ij} e^i ^ e^j
    if (a > b) {
      std::swap(a, b);
      v = -v;
    }
    de[sc.k - 1][{a, b}] += v;
  }

  // Jacobi identity as d(de^k) = 0 with d(e^a^e^b) = de^a^e^b - e^a^de^b.
  for (int k = 0; k < nn; ++k) {
    std::map<std::tuple<int, int, int>, mpq_class> dd;
    auto put = [&](int a, int b, int c, const mpq_class& v) {
      int x = a, y = b, z = c;
      int sign = sort3(x, y, z);
      if (sign == 0) return;
      dd[{x, y, z}] += sign > 0 ? v : mpq_class(-v);
    };
    for (const auto& [ab, v] : de[k]) {
      auto [a, b] = ab;
      for (const auto& [cd, w] : de[a]) put(cd.first, cd.second, b, v * w);
      for (const auto& [cd, w] : de[b]) put(a, cd.first, cd.second, -v * w);
    }
    for (const auto& [key, v] : dd)
      if (v != 0)
        fail(ErrorCode::JacobiViolation,
             "d(d e^" + std::to_string(k + 1) + ") != 0");
  }

  // g = (w1..wn, cw1..cwn) with g = T e; e = T^{-1} g.
  RatMat t(nn, nn);
  for (int r = 0; r < n; ++r)
    for (int s = 0; s < nn; ++s) {
      t.at(r, s) = j.coframe[r][s];
      t.at(n + r, s) = j.coframe[r][s].conj();
    }
  auto tinv = invert(t);
  if (!tinv)
    fail(ErrorCode::ConfigError,
         "declared (1,0)-coframe does not span half the complexified dual");

  GeneratorDifferentials gens;
  gens.del.resize(nn);
  gens.dbar.resize(nn);
  auto bideg = [&](int g1, int g2) {
    return (g1 < n ? 1 : 0) + (g2 < n ? 1 : 0);  // holomorphic count
  };
  auto conj_id = [&](int g) { return g < n ? g + n : g - n; };

  for (int r = 0; r < n; ++r) {
    // d w^r in the real dual, then rewritten in the complex coframe.
    CplxTwoForm d_real;
    for (int s = 0; s < nn; ++s) {
      const CRat& coef = j.coframe[r][s];
      if (coef.is_zero()) continue;
      for (const auto& [ab, v] : de[s]) {
        CRat& slot = d_real[ab];
        slot += coef * CRat(mpq_class(v), mpq_class(0));
      }
    }
    TwoForm parts[3];  // index = holomorphic count of the term (0,1,2)
    for (const auto& [ab, v] : d_real) {
      if (v.is_zero()) continue;
      auto [a, b] = ab;
      for (int tg = 0; tg < nn; ++tg) {
        const CRat& fa = tinv->at(a, tg);
        if (fa.is_zero()) continue;
        for (int ug = 0; ug < nn; ++ug) {
          const CRat& fb = tinv->at(b, ug);
          if (fb.is_zero() || tg == ug) continue;
          parts[bideg(tg, ug)].add(tg, ug, v * fa * fb);
        }
      }
    }
    if (!parts[0].empty())
      fail(ErrorCode::NonIntegrable,
           "d w" + std::to_string(r + 1) + " has a (0,2) component");
    gens.del[r] = parts[2];
    gens.dbar[r] = parts[1];
    // d cw^r is the conjugate: (2,0) terms flip to (0,2), (1,1) stays.
    for (const auto& [a, b, c] : parts[1].terms)
      gens.del[n + r].add(conj_id(a), conj_id(b), c.conj());
    for (const auto& [a, b, c] : parts[2].terms)
      gens.dbar[n + r].add(conj_id(a), conj_id(b), c.conj());
  }

  return validate_complex(build_exterior_complex(n, gens));
}

}  // namespace hodgelab
