#include "hodgelab/exterior.hpp"

#include <algorithm>

#include "hodgelab/error.hpp"

namespace hodgelab {

namespace {

// Sorts a generator sequence counting transpositions; first = 0 when a
// generator repeats.
std::pair<int, Monomial> sort_sign(Monomial seq) {
  int sign = 1;
  for (std::size_t i = 1; i < seq.size(); ++i) {
    int x = seq[i];
    std::size_t j = i;
    while (j > 0 && seq[j - 1] > x) {
      seq[j] = seq[j - 1];
      --j;
      sign = -sign;
    }
    seq[j] = x;
  }
  for (std::size_t i = 1; i < seq.size(); ++i)
    if (seq[i] == seq[i - 1]) return {0, {}};
  return {sign, std::move(seq)};
}

void combinations(int lo, int hi, int take, Monomial& acc,
                  std::vector<Monomial>& out) {
  if (take == 0) {
    out.push_back(acc);
    return;
  }
  for (int g = lo; g <= hi - take; ++g) {
    acc.push_back(g);
    combinations(g + 1, hi, take - 1, acc, out);
    acc.pop_back();
  }
}

}  // namespace

ExteriorBasis::ExteriorBasis(int n) : n_(n) {
  if (n < 1) fail(ErrorCode::ConfigError, "exterior basis needs n >= 1");
  table_.resize(std::size_t(n + 1) * (n + 1));
  for (int p = 0; p <= n; ++p) {
    std::vector<Monomial> hol;
    Monomial acc;
    combinations(0, n, p, acc, hol);
    for (int q = 0; q <= n; ++q) {
      std::vector<Monomial> anti;
      combinations(n, 2 * n, q, acc, anti);
      auto& cell = table_[std::size_t(p) * (n + 1) + q];
      cell.reserve(hol.size() * anti.size());
      // Holomorphic ids all precede conjugate ids, so concatenation stays
      // sorted and the nesting realizes lexicographic order.
      for (const Monomial& a : hol)
        for (const Monomial& b : anti) {
          Monomial m = a;
          m.insert(m.end(), b.begin(), b.end());
          cell.push_back(std::move(m));
        }
    }
  }
}

int ExteriorBasis::dim(int p, int q) const {
  if (p < 0 || q < 0 || p > n_ || q > n_) return 0;
  return int(table_[std::size_t(p) * (n_ + 1) + q].size());
}

const std::vector<Monomial>& ExteriorBasis::monomials(int p, int q) const {
  return table_[std::size_t(p) * (n_ + 1) + q];
}

int ExteriorBasis::index_of(int p, int q, const Monomial& m) const {
  if (p < 0 || q < 0 || p > n_ || q > n_) return -1;
  const auto& cell = table_[std::size_t(p) * (n_ + 1) + q];
  auto it = std::lower_bound(cell.begin(), cell.end(), m);
  if (it == cell.end() || *it != m) return -1;
  return int(it - cell.begin());
}

std::string ExteriorBasis::generator_name(int id) const {
  if (id < n_) return "w" + std::to_string(id + 1);
  return "cw" + std::to_string(id - n_ + 1);
}

std::optional<int> ExteriorBasis::generator_id(const std::string& name) const {
  bool conj = name.size() > 1 && name[0] == 'c';
  std::size_t at = conj ? 1 : 0;
  if (at >= name.size() || name[at] != 'w') return std::nullopt;
  int idx = 0;
  for (std::size_t i = at + 1; i < name.size(); ++i) {
    if (name[i] < '0' || name[i] > '9') return std::nullopt;
    idx = idx * 10 + (name[i] - '0');
  }
  if (idx < 1 || idx > n_) return std::nullopt;
  return conj ? n_ + idx - 1 : idx - 1;
}

std::string ExteriorBasis::label(int p, int q, int idx) const {
  const Monomial& m = monomials(p, q).at(idx);
  if (m.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) s += "^";
    s += generator_name(m[i]);
  }
  return s;
}

std::pair<int, Monomial> ExteriorBasis::wedge(const Monomial& a,
                                              const Monomial& b) {
  Monomial seq = a;
  seq.insert(seq.end(), b.begin(), b.end());
  return sort_sign(std::move(seq));
}

RatMat ExteriorBasis::wedge_matrix(
    const std::vector<std::pair<int, CRat>>& theta, int p, int q) const {
  int dp = -1, dq = -1;
  for (const auto& [g, c] : theta) {
    if (g < 0 || g >= 2 * n_)
      fail(ErrorCode::ConfigError, "one-form generator id out of range");
    int tp = g < n_ ? 1 : 0;
    if (dp >= 0 && tp != dp)
      fail(ErrorCode::ConfigError, "one-form mixes bidegrees");
    dp = tp;
    dq = 1 - tp;
  }
  if (dp < 0) dp = 1, dq = 0;  // empty form: zero map, shape of a (1,0)-wedge

  RatMat m(dim(p + dp, q + dq), dim(p, q));
  const auto& cell = monomials(p, q);
  for (int j = 0; j < int(cell.size()); ++j)
    for (const auto& [g, c] : theta) {
      auto [sign, mono] = wedge({g}, cell[j]);
      if (sign == 0) continue;
      int row = index_of(p + dp, q + dq, mono);
      m.at(row, j) += c * CRat(sign);
    }
  return m;
}

void TwoForm::add(int g1, int g2, const CRat& c) {
  if (c.is_zero() || g1 == g2) return;
  int a = g1, b = g2;
  CRat v = c;
  if (a > b) {
    std::swap(a, b);
    v = -v;
  }
  auto it = std::lower_bound(terms.begin(), terms.end(), std::make_pair(a, b),
                             [](const auto& t, const std::pair<int, int>& k) {
                               return std::make_pair(std::get<0>(t),
                                                     std::get<1>(t)) < k;
                             });
  if (it != terms.end() && std::get<0>(*it) == a && std::get<1>(*it) == b) {
    std::get<2>(*it) += v;
    if (std::get<2>(*it).is_zero()) terms.erase(it);
  } else {
    terms.insert(it, {a, b, v});
  }
}

}  // namespace hodgelab
