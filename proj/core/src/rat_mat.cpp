#include "hodgelab/rat_mat.hpp"

#include <string>
#include <tuple>

#include "hodgelab/error.hpp"

namespace hodgelab {

namespace {

std::string shape_of(const RatMat& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

[[noreturn]] void shape_error(const char* op, const RatMat& a,
                              const RatMat& b) {
  fail(ErrorCode::ShapeMismatch,
       std::string(op) + " on " + shape_of(a) + " and " + shape_of(b));
}

// Gaussian integer, the fraction-free elimination domain.
struct GInt {
  mpz_class re, im;

  bool is_zero() const { return re == 0 && im == 0; }
  GInt conj() const { return {re, -im}; }
  GInt operator*(const GInt& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  GInt operator-(const GInt& o) const { return {re - o.re, im - o.im}; }
};

// Exact quotient a/b in Z[i]; Bareiss guarantees divisibility.
GInt divexact(const GInt& a, const GInt& b) {
  mpz_class norm = b.re * b.re + b.im * b.im;
  GInt num = a * b.conj();
  GInt q;
  mpz_divexact(q.re.get_mpz_t(), num.re.get_mpz_t(), norm.get_mpz_t());
  mpz_divexact(q.im.get_mpz_t(), num.im.get_mpz_t(), norm.get_mpz_t());
  return q;
}

}  // namespace

RatMat::RatMat(int rows, int cols)
    : rows_(rows), cols_(cols), a_(std::size_t(rows) * cols) {}

RatMat RatMat::identity(int m) {
  RatMat r(m, m);
  for (int i = 0; i < m; ++i) r.at(i, i) = CRat(1);
  return r;
}

bool RatMat::is_zero() const {
  for (const CRat& x : a_)
    if (!x.is_zero()) return false;
  return true;
}

bool RatMat::operator==(const RatMat& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

RatMat RatMat::operator+(const RatMat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) shape_error("add", *this, o);
  RatMat r(rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
  return r;
}

RatMat RatMat::operator-(const RatMat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) shape_error("subtract", *this, o);
  RatMat r(rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
  return r;
}

RatMat RatMat::operator*(const RatMat& o) const {
  if (cols_ != o.rows_) shape_error("multiply", *this, o);
  RatMat r(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const CRat& x = at(i, k);
      if (x.is_zero()) continue;
      for (int j = 0; j < o.cols_; ++j) r.at(i, j) += x * o.at(k, j);
    }
  return r;
}

RatMat RatMat::scaled(const CRat& c) const {
  RatMat r(rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] * c;
  return r;
}

RatMat RatMat::conjugate() const {
  RatMat r(rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i].conj();
  return r;
}

RatMat RatMat::transpose() const {
  RatMat r(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  return r;
}

RatMat RatMat::hstack(const RatMat& a, const RatMat& b) {
  if (a.rows_ != b.rows_) shape_error("hstack", a, b);
  RatMat r(a.rows_, a.cols_ + b.cols_);
  for (int i = 0; i < a.rows_; ++i) {
    for (int j = 0; j < a.cols_; ++j) r.at(i, j) = a.at(i, j);
    for (int j = 0; j < b.cols_; ++j) r.at(i, a.cols_ + j) = b.at(i, j);
  }
  return r;
}

RatMat RatMat::vstack(const RatMat& a, const RatMat& b) {
  if (a.cols_ != b.cols_) shape_error("vstack", a, b);
  RatMat r(a.rows_ + b.rows_, a.cols_);
  for (int i = 0; i < a.rows_; ++i)
    for (int j = 0; j < a.cols_; ++j) r.at(i, j) = a.at(i, j);
  for (int i = 0; i < b.rows_; ++i)
    for (int j = 0; j < a.cols_; ++j) r.at(a.rows_ + i, j) = b.at(i, j);
  return r;
}

RatMat RatMat::row_block(int first, int count) const {
  if (first < 0 || count < 0 || first + count > rows_)
    fail(ErrorCode::ShapeMismatch, "row_block out of range on " + shape_of(*this));
  RatMat r(count, cols_);
  for (int i = 0; i < count; ++i)
    for (int j = 0; j < cols_; ++j) r.at(i, j) = at(first + i, j);
  return r;
}

// Fraction-free (Bareiss) elimination over Z[i] with full pivoting; only
// the pivot count is kept. Rows are scaled integral first, which cannot
// change the rank.
int RatMat::rank() const {
  if (rows_ == 0 || cols_ == 0) return 0;
  std::vector<GInt> m(a_.size());
  for (int i = 0; i < rows_; ++i) {
    mpz_class l(1);
    for (int j = 0; j < cols_; ++j) {
      const CRat& x = at(i, j);
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.re.get_den().get_mpz_t());
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.im.get_den().get_mpz_t());
    }
    for (int j = 0; j < cols_; ++j) {
      mpq_class sre = at(i, j).re * l, sim = at(i, j).im * l;
      m[std::size_t(i) * cols_ + j] = {sre.get_num(), sim.get_num()};
    }
  }
  auto e = [&](int i, int j) -> GInt& { return m[std::size_t(i) * cols_ + j]; };

  GInt prev{mpz_class(1), mpz_class(0)};
  int r = 0;
  const int steps = std::min(rows_, cols_);
  while (r < steps) {
    int pi = -1, pj = -1;
    for (int j = r; j < cols_ && pi < 0; ++j)
      for (int i = r; i < rows_; ++i)
        if (!e(i, j).is_zero()) {
          pi = i;
          pj = j;
          break;
        }
    if (pi < 0) break;
    if (pi != r)
      for (int j = 0; j < cols_; ++j) std::swap(e(pi, j), e(r, j));
    if (pj != r)
      for (int i = 0; i < rows_; ++i) std::swap(e(i, pj), e(i, r));
    for (int i = r + 1; i < rows_; ++i) {
      for (int j = r + 1; j < cols_; ++j)
        e(i, j) = divexact(e(r, r) * e(i, j) - e(i, r) * e(r, j), prev);
      e(i, r) = GInt{};
    }
    prev = e(r, r);
    ++r;
  }
  return r;
}

// Reduced row echelon over the rational field; free columns yield the
// kernel basis in ascending column order.
RatMat RatMat::nullspace() const {
  RatMat m = *this;
  std::vector<std::pair<int, int>> pivots;  // (row, col)
  int r = 0;
  for (int c = 0; c < cols_ && r < rows_; ++c) {
    int pr = -1;
    for (int i = r; i < rows_; ++i)
      if (!m.at(i, c).is_zero()) {
        pr = i;
        break;
      }
    if (pr < 0) continue;
    if (pr != r)
      for (int j = 0; j < cols_; ++j) std::swap(m.at(pr, j), m.at(r, j));
    CRat inv = m.at(r, c).inverse();
    for (int j = c; j < cols_; ++j) m.at(r, j) = m.at(r, j) * inv;
    for (int i = 0; i < rows_; ++i) {
      if (i == r || m.at(i, c).is_zero()) continue;
      CRat f = m.at(i, c);
      for (int j = c; j < cols_; ++j)
        m.at(i, j) = m.at(i, j) - f * m.at(r, j);
    }
    pivots.emplace_back(r, c);
    ++r;
  }

  std::vector<bool> is_pivot(cols_, false);
  for (auto [pr, pc] : pivots) is_pivot[pc] = true;
  RatMat basis(cols_, cols_ - int(pivots.size()));
  int out = 0;
  for (int f = 0; f < cols_; ++f) {
    if (is_pivot[f]) continue;
    basis.at(f, out) = CRat(1);
    for (auto [pr, pc] : pivots) basis.at(pc, out) = -m.at(pr, f);
    ++out;
  }
  return basis;
}

Eigen::MatrixXcd RatMat::to_float() const {
  Eigen::MatrixXcd r(rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r(i, j) = at(i, j).to_complex();
  return r;
}

}  // namespace hodgelab
