#pragma once

#include <gmpxx.h>

#include <complex>
#include <string>
#include <utility>

namespace hodgelab {

// Complex rational scalar; gmp keeps each part in lowest terms with a
// positive denominator.
struct CRat {
  mpq_class re, im;

  CRat() : re(0), im(0) {}
  CRat(long r) : re(r), im(0) {}
  CRat(mpq_class r, mpq_class i) : re(std::move(r)), im(std::move(i)) {}

  static CRat imag_unit(long c = 1) { return CRat(mpq_class(0), mpq_class(c)); }

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }
  CRat conj() const { return CRat(re, -im); }

  CRat operator-() const { return CRat(-re, -im); }
  CRat operator+(const CRat& o) const { return CRat(re + o.re, im + o.im); }
  CRat operator-(const CRat& o) const { return CRat(re - o.re, im - o.im); }
  CRat operator*(const CRat& o) const {
    return CRat(re * o.re - im * o.im, re * o.im + im * o.re);
  }
  CRat inverse() const;
  CRat operator/(const CRat& o) const { return *this * o.inverse(); }
  CRat& operator+=(const CRat& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  bool operator==(const CRat& o) const { return re == o.re && im == o.im; }
  bool operator!=(const CRat& o) const { return !(*this == o); }

  std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }
};

// Accepts "a" or "a/b" with optional leading minus; rejects anything else,
// including zero denominators.
mpq_class parse_rational(const std::string& text);

// Canonical inverse of parse_rational: "a" when b = 1, else "a/b".
std::string format_rational(const mpq_class& q);

// Every finite double is dyadic rational; the conversion is exact.
mpq_class rational_from_double(double x);

}  // namespace hodgelab
