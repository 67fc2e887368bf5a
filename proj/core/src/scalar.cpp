#include "hodgelab/scalar.hpp"

#include <cctype>
#include <cmath>

#include "hodgelab/error.hpp"

namespace hodgelab {

CRat CRat::inverse() const {
  mpq_class norm = re * re + im * im;
  if (norm == 0) fail(ErrorCode::ConfigError, "division by zero scalar");
  return CRat(re / norm, -im / norm);
}

namespace {

bool all_digits(const std::string& s, std::size_t from, std::size_t to) {
  if (from >= to) return false;
  for (std::size_t i = from; i < to; ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

}  // namespace

mpq_class parse_rational(const std::string& text) {
  std::size_t start = 0;
  if (!text.empty() && (text[0] == '-' || text[0] == '+')) start = 1;
  std::size_t slash = text.find('/');
  bool ok;
  if (slash == std::string::npos) {
    ok = all_digits(text, start, text.size());
  } else {
    ok = all_digits(text, start, slash) &&
         all_digits(text, slash + 1, text.size());
  }
  if (!ok)
    fail(ErrorCode::ParseError, "malformed rational \"" + text + "\"");
  mpq_class q(text);
  if (q.get_den() == 0)
    fail(ErrorCode::ParseError, "zero denominator in \"" + text + "\"");
  q.canonicalize();
  return q;
}

std::string format_rational(const mpq_class& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

mpq_class rational_from_double(double x) {
  if (!std::isfinite(x))
    fail(ErrorCode::ParseError, "non-finite number has no rational form");
  mpq_class q;
  mpq_set_d(q.get_mpq_t(), x);
  return q;
}

}  // namespace hodgelab
