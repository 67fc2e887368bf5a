#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hodgelab/rat_mat.hpp"

namespace hodgelab {

// Wedge monomials over 2n coframe generators: ids 0..n-1 are w1..wn of
// bidegree (1,0), ids n..2n-1 are cw1..cwn of bidegree (0,1). A monomial
// is a strictly increasing id list; the basis of each A^{p,q} is ordered
// lexicographically. Sign convention: swapping adjacent generators flips
// the sign, so sorting a product determines its sign.
using Monomial = std::vector<int>;

class ExteriorBasis {
 public:
  explicit ExteriorBasis(int n);

  int n() const { return n_; }
  int dim(int p, int q) const;
  const std::vector<Monomial>& monomials(int p, int q) const;
  int index_of(int p, int q, const Monomial& m) const;  // -1 when absent

  std::string label(int p, int q, int idx) const;  // "w1^cw2"; degree 0 is "1"
  std::string generator_name(int id) const;        // "w3" or "cw3"
  std::optional<int> generator_id(const std::string& name) const;

  // Concatenation a,b resorted with sign; sign 0 when a generator repeats.
  static std::pair<int, Monomial> wedge(const Monomial& a, const Monomial& b);

  // Matrix of (theta wedge .) on A^{p,q}, where theta is a one-form given by
  // generator coefficients. All generators of theta must share one type, so
  // the image lands in a single bidegree.
  RatMat wedge_matrix(const std::vector<std::pair<int, CRat>>& theta, int p,
                      int q) const;

 private:
  int n_ = 0;
  std::vector<std::vector<Monomial>> table_;  // (n+1)^2, index p*(n+1)+q
};

// Exact two-form as normalized terms (g1 < g2, coefficient).
struct TwoForm {
  std::vector<std::tuple<int, int, CRat>> terms;

  // Absorbs sign and order; drops zero coefficients and squares.
  void add(int g1, int g2, const CRat& c);
  bool empty() const { return terms.empty(); }
};

}  // namespace hodgelab
