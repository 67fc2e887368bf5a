#include "hodgelab/complex_io.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "hodgelab/error.hpp"

namespace hodgelab {

namespace {

using ordered_json = nlohmann::ordered_json;

[[noreturn]] void bad(const std::string& where, const std::string& why) {
  fail(ErrorCode::ParseError, where + ": " + why);
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) fail(ErrorCode::IoError, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void spill(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(ErrorCode::IoError, "cannot write '" + path + "'");
  f << text;
}

ordered_json parse_json(const std::string& text, const std::string& where) {
  try {
    return ordered_json::parse(text);
  } catch (const std::exception& e) {
    bad(where, e.what());
  }
}

const ordered_json& member(const ordered_json& j, const char* key,
                           const std::string& where) {
  if (!j.is_object()) bad(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) bad(where, std::string("missing field '") + key + "'");
  return *it;
}

long int_member(const ordered_json& j, const char* key,
                const std::string& where) {
  const ordered_json& v = member(j, key, where);
  if (!v.is_number_integer())
    bad(where, std::string("field '") + key + "' must be an integer");
  return v.get<long>();
}

std::string string_member(const ordered_json& j, const char* key,
                          const std::string& where) {
  const ordered_json& v = member(j, key, where);
  if (!v.is_string())
    bad(where, std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

mpq_class rational_value(const ordered_json& v, ScalarMode mode,
                         const std::string& where) {
  if (v.is_string()) {
    try {
      return parse_rational(v.get<std::string>());
    } catch (const Error& e) {
      bad(where, e.what());
    }
  }
  if (mode == ScalarMode::Float && v.is_number())
    return rational_from_double(v.get<double>());
  bad(where, mode == ScalarMode::Exact
                 ? "exact entries must be rational strings"
                 : "entries must be rational strings or numbers");
}

struct MatrixTables {
  std::vector<RatMat>* exact;
  std::vector<Eigen::MatrixXcd>* flt;
};

void parse_differential(const ordered_json& j, const char* key,
                        ComplexBuildData& d, MatrixTables tables) {
  if (!j.contains(key)) return;
  const ordered_json& arr = j.at(key);
  std::string where(key);
  if (!arr.is_array()) bad(where, "must be an array of matrix blocks");
  std::vector<bool> seen_cell(d.dims.size(), false);
  for (std::size_t bi = 0; bi < arr.size(); ++bi) {
    std::string at = where + "[" + std::to_string(bi) + "]";
    const ordered_json& blk = arr[bi];
    int p = int(int_member(blk, "p", at));
    int q = int(int_member(blk, "q", at));
    if (p < 0 || q < 0 || p > d.n || q > d.n)
      bad(at, "bidegree out of range");
    int i = d.index(p, q);
    if (seen_cell[i]) bad(at, "duplicate matrix block");
    seen_cell[i] = true;
    const ordered_json& entries = member(blk, "entries", at);
    if (!entries.is_array()) bad(at, "entries must be an array");
    long rows = d.mode == ScalarMode::Exact ? (*tables.exact)[i].rows()
                                            : (*tables.flt)[i].rows();
    long cols = d.mode == ScalarMode::Exact ? (*tables.exact)[i].cols()
                                            : (*tables.flt)[i].cols();
    std::vector<bool> seen(std::size_t(rows) * cols, false);
    for (std::size_t ei = 0; ei < entries.size(); ++ei) {
      std::string loc = at + ".entries[" + std::to_string(ei) + "]";
      const ordered_json& e = entries[ei];
      if (!e.is_array() || e.size() != 4)
        bad(loc, "expected [row, col, re, im]");
      if (!e[0].is_number_integer() || !e[1].is_number_integer())
        bad(loc, "row and col must be integers");
      long r = e[0].get<long>(), c = e[1].get<long>();
      if (r < 0 || r >= rows || c < 0 || c >= cols)
        bad(loc, "index outside the matrix shape");
      if (seen[std::size_t(r) * cols + c]) bad(loc, "duplicate entry");
      seen[std::size_t(r) * cols + c] = true;
      mpq_class re = rational_value(e[2], d.mode, loc);
      mpq_class im = rational_value(e[3], d.mode, loc);
      if (d.mode == ScalarMode::Exact)
        (*tables.exact)[i].at(int(r), int(c)) = CRat(re, im);
      else
        (*tables.flt)[i](r, c) = std::complex<double>(re.get_d(), im.get_d());
    }
  }
}

ComplexFile complex_from_json(const ordered_json& j, double rel_tol,
                              const std::string& where) {
  long n = int_member(j, "n", where);
  if (n < 1) bad(where, "n must be >= 1");
  std::string mode_s = string_member(j, "mode", where);
  ScalarMode mode;
  if (mode_s == "exact")
    mode = ScalarMode::Exact;
  else if (mode_s == "float")
    mode = ScalarMode::Float;
  else
    bad(where, "mode must be \"exact\" or \"float\"");

  ComplexBuildData d = ComplexBuildData::zeros(int(n), mode);

  const ordered_json& spaces = member(j, "spaces", where);
  if (!spaces.is_array()) bad(where, "spaces must be an array");
  std::vector<bool> seen(d.dims.size(), false);
  for (std::size_t si = 0; si < spaces.size(); ++si) {
    std::string at = where + "spaces[" + std::to_string(si) + "]";
    const ordered_json& sp = spaces[si];
    int p = int(int_member(sp, "p", at));
    int q = int(int_member(sp, "q", at));
    if (p < 0 || q < 0 || p > n || q > n) bad(at, "bidegree out of range");
    int i = d.index(p, q);
    if (seen[i]) bad(at, "duplicate space");
    seen[i] = true;
    long dim = int_member(sp, "dim", at);
    if (dim < 0) bad(at, "dim must be >= 0");
    d.dims[i] = int(dim);
    if (sp.contains("labels")) {
      const ordered_json& ls = sp.at("labels");
      if (!ls.is_array() || long(ls.size()) != dim)
        bad(at, "labels must list one name per dimension");
      for (const ordered_json& l : ls) {
        if (!l.is_string()) bad(at, "labels must be strings");
        d.labels[i].push_back(l.get<std::string>());
      }
    }
  }

  for (int p = 0; p <= n; ++p)
    for (int q = 0; q <= n; ++q) {
      int i = d.index(p, q);
      if (mode == ScalarMode::Exact) {
        d.del[i] = RatMat(d.dim(p + 1, q), d.dims[i]);
        d.dbar[i] = RatMat(d.dim(p, q + 1), d.dims[i]);
      } else {
        d.fdel[i] = Eigen::MatrixXcd::Zero(d.dim(p + 1, q), d.dims[i]);
        d.fdbar[i] = Eigen::MatrixXcd::Zero(d.dim(p, q + 1), d.dims[i]);
      }
    }
  parse_differential(j, "del", d, {&d.del, &d.fdel});
  parse_differential(j, "dbar", d, {&d.dbar, &d.fdbar});

  // Canonical exterior labels are recognized so that catalog files loaded
  // back support covers and wedge twists.
  {
    ExteriorBasis basis{int(n)};
    bool match = true;
    for (int p = 0; p <= n && match; ++p)
      for (int q = 0; q <= n && match; ++q) {
        int i = d.index(p, q);
        if (d.dims[i] != basis.dim(p, q) ||
            int(d.labels[i].size()) != basis.dim(p, q)) {
          match = false;
          break;
        }
        for (int b = 0; b < basis.dim(p, q); ++b)
          if (d.labels[i][b] != basis.label(p, q, b)) {
            match = false;
            break;
          }
      }
    if (match) d.exterior = std::make_shared<const ExteriorBasis>(int(n));
  }

  std::vector<Eigen::MatrixXcd> grams;
  bool has_metric = j.contains("metric");
  if (has_metric) {
    const ordered_json& arr = j.at("metric");
    if (!arr.is_array()) bad("metric", "must be an array of gram blocks");
    grams.resize(d.dims.size());
    for (int p = 0; p <= n; ++p)
      for (int q = 0; q <= n; ++q)
        grams[d.index(p, q)] = Eigen::MatrixXcd::Identity(
            d.dims[d.index(p, q)], d.dims[d.index(p, q)]);
    std::vector<bool> seen_g(d.dims.size(), false);
    for (std::size_t bi = 0; bi < arr.size(); ++bi) {
      std::string at = "metric[" + std::to_string(bi) + "]";
      const ordered_json& blk = arr[bi];
      int p = int(int_member(blk, "p", at));
      int q = int(int_member(blk, "q", at));
      if (p < 0 || q < 0 || p > n || q > n) bad(at, "bidegree out of range");
      int i = d.index(p, q);
      if (seen_g[i]) bad(at, "duplicate gram block");
      seen_g[i] = true;
      long m = d.dims[i];
      grams[i] = Eigen::MatrixXcd::Zero(m, m);
      const ordered_json& entries = member(blk, "gram", at);
      if (!entries.is_array()) bad(at, "gram must be an array");
      std::vector<bool> seen_e(std::size_t(m) * m, false);
      for (std::size_t ei = 0; ei < entries.size(); ++ei) {
        std::string loc = at + ".gram[" + std::to_string(ei) + "]";
        const ordered_json& e = entries[ei];
        if (!e.is_array() || e.size() != 4)
          bad(loc, "expected [row, col, re, im]");
        if (!e[0].is_number_integer() || !e[1].is_number_integer())
          bad(loc, "row and col must be integers");
        long r = e[0].get<long>(), c = e[1].get<long>();
        if (r < 0 || r >= m || c < 0 || c >= m)
          bad(loc, "index outside the gram shape");
        if (seen_e[std::size_t(r) * m + c]) bad(loc, "duplicate entry");
        seen_e[std::size_t(r) * m + c] = true;
        if (!e[2].is_number() || !e[3].is_number())
          bad(loc, "gram entries must be numbers");
        grams[i](r, c) =
            std::complex<double>(e[2].get<double>(), e[3].get<double>());
      }
    }
  }

  ComplexFile out;
  try {
    out.complex_data = validate_complex(std::move(d), rel_tol);
  } catch (const Error& e) {
    fail(ErrorCode::ValidationError, e.what());
  }
  if (has_metric) {
    try {
      out.metric = HermitianMetric::from_grams(out.complex_data,
                                               std::move(grams));
    } catch (const Error& e) {
      if (e.code() == ErrorCode::NotPositiveDefinite) throw;
      fail(ErrorCode::ValidationError, e.what());
    }
  }
  return out;
}

std::string rat_text(const mpq_class& q) { return format_rational(q); }

ordered_json complex_to_json(const BigradedComplex& c,
                             const HermitianMetric* metric) {
  int n = c.n();
  bool exact = c.mode() == ScalarMode::Exact;
  ordered_json j;
  j["n"] = n;
  j["mode"] = to_string(c.mode());

  ordered_json spaces = ordered_json::array();
  for (int p = 0; p <= n; ++p)
    for (int q = 0; q <= n; ++q) {
      ordered_json sp;
      sp["p"] = p;
      sp["q"] = q;
      sp["dim"] = c.dim(p, q);
      if (!c.labels(p, q).empty()) sp["labels"] = c.labels(p, q);
      spaces.push_back(std::move(sp));
    }
  j["spaces"] = std::move(spaces);

  auto matrix_entries = [&](int p, int q, bool del) {
    ordered_json entries = ordered_json::array();
    if (exact) {
      const RatMat& m = del ? c.del(p, q) : c.dbar(p, q);
      for (int r = 0; r < m.rows(); ++r)
        for (int col = 0; col < m.cols(); ++col) {
          const CRat& v = m.at(r, col);
          if (v.is_zero()) continue;
          entries.push_back(ordered_json::array(
              {r, col, rat_text(v.re), rat_text(v.im)}));
        }
    } else {
      const Eigen::MatrixXcd& m = del ? c.del_f(p, q) : c.dbar_f(p, q);
      for (int r = 0; r < m.rows(); ++r)
        for (int col = 0; col < m.cols(); ++col) {
          std::complex<double> v = m(r, col);
          if (v.real() == 0.0 && v.imag() == 0.0) continue;
          entries.push_back(ordered_json::array(
              {r, col, rat_text(rational_from_double(v.real())),
               rat_text(rational_from_double(v.imag()))}));
        }
    }
    return entries;
  };

  for (bool del : {true, false}) {
    ordered_json blocks = ordered_json::array();
    for (int p = 0; p <= n; ++p)
      for (int q = 0; q <= n; ++q) {
        ordered_json entries = matrix_entries(p, q, del);
        if (entries.empty()) continue;
        ordered_json blk;
        blk["p"] = p;
        blk["q"] = q;
        blk["entries"] = std::move(entries);
        blocks.push_back(std::move(blk));
      }
    if (!blocks.empty()) j[del ? "del" : "dbar"] = std::move(blocks);
  }

  if (metric && metric->valid() && !metric->is_identity()) {
    ordered_json blocks = ordered_json::array();
    for (int p = 0; p <= n; ++p)
      for (int q = 0; q <= n; ++q) {
        const Eigen::MatrixXcd& g = metric->gram(p, q);
        if (g.rows() == 0) continue;
        Eigen::MatrixXcd dev =
            g - Eigen::MatrixXcd::Identity(g.rows(), g.cols());
        if (dev.cwiseAbs().maxCoeff() == 0.0) continue;
        ordered_json entries = ordered_json::array();
        for (int r = 0; r < g.rows(); ++r)
          for (int col = 0; col < g.cols(); ++col) {
            std::complex<double> v = g(r, col);
            if (v.real() == 0.0 && v.imag() == 0.0) continue;
            entries.push_back(
                ordered_json::array({r, col, v.real(), v.imag()}));
          }
        ordered_json blk;
        blk["p"] = p;
        blk["q"] = q;
        blk["gram"] = std::move(entries);
        blocks.push_back(std::move(blk));
      }
    if (!blocks.empty()) j["metric"] = std::move(blocks);
  }
  return j;
}

}  // namespace

ComplexFile load_complex_file(const std::string& path, double rel_tol) {
  ordered_json j = parse_json(slurp(path), path);
  return complex_from_json(j, rel_tol, "");
}

BigradedComplex load_complex(const std::string& path, double rel_tol) {
  return load_complex_file(path, rel_tol).complex_data;
}

std::string serialize_complex(const BigradedComplex& c,
                              const HermitianMetric* metric) {
  if (!c.valid()) fail(ErrorCode::ConfigError, "complex not validated");
  return complex_to_json(c, metric).dump(2) + "\n";
}

void save_complex(const std::string& path, const BigradedComplex& c,
                  const HermitianMetric* metric) {
  spill(path, serialize_complex(c, metric));
}

CoveringComplex load_cover_file(const std::string& path, double rel_tol) {
  ordered_json j = parse_json(slurp(path), path);
  const ordered_json& base_j = member(j, "base", "cover");
  BigradedComplex base;
  if (base_j.is_string()) {
    std::filesystem::path bp(base_j.get<std::string>());
    if (bp.is_relative())
      bp = std::filesystem::path(path).parent_path() / bp;
    base = load_complex(bp.string(), rel_tol);
  } else if (base_j.is_object()) {
    base = complex_from_json(base_j, rel_tol, "base.").complex_data;
  } else {
    bad("cover", "base must be a path or an inline complex");
  }

  long m = int_member(j, "gammaOrder", "cover");
  if (m < 1) bad("cover", "gammaOrder must be >= 1");

  const ordered_json& sectors = member(j, "sectors", "cover");
  if (!sectors.is_array()) bad("cover", "sectors must be an array");
  std::vector<TwistSpec> specs;
  for (std::size_t si = 0; si < sectors.size(); ++si) {
    std::string at = "sectors[" + std::to_string(si) + "]";
    const ordered_json& sec = sectors[si];
    TwistSpec spec;
    spec.character = string_member(sec, "character", at);
    auto theta = [&](const char* key) {
      const ordered_json& arr = member(sec, key, at);
      if (!arr.is_array()) bad(at, std::string(key) + " must be an array");
      std::vector<CRat> out;
      for (std::size_t ti = 0; ti < arr.size(); ++ti) {
        std::string loc = at + "." + key + "[" + std::to_string(ti) + "]";
        const ordered_json& pair = arr[ti];
        if (!pair.is_array() || pair.size() != 2)
          bad(loc, "expected [re, im]");
        out.emplace_back(rational_value(pair[0], ScalarMode::Exact, loc),
                         rational_value(pair[1], ScalarMode::Exact, loc));
      }
      return out;
    };
    spec.theta10 = theta("theta10");
    spec.theta01 = theta("theta01");
    specs.push_back(std::move(spec));
  }
  return build_cover(base, m, specs);
}

std::string serialize_cover(const CoveringComplex& cov) {
  if (!cov.valid()) fail(ErrorCode::ConfigError, "cover not built");
  ordered_json j;
  j["base"] = complex_to_json(cov.base(), nullptr);
  j["gammaOrder"] = cov.gamma_order();
  ordered_json sectors = ordered_json::array();
  for (const TwistData& s : cov.sectors()) {
    ordered_json sec;
    sec["character"] = s.character;
    auto theta = [&](const std::vector<CRat>& v) {
      ordered_json arr = ordered_json::array();
      for (const CRat& c : v)
        arr.push_back(ordered_json::array({rat_text(c.re), rat_text(c.im)}));
      return arr;
    };
    sec["theta10"] = theta(s.theta10);
    sec["theta01"] = theta(s.theta01);
    sectors.push_back(std::move(sec));
  }
  j["sectors"] = std::move(sectors);
  return j.dump(2) + "\n";
}

void save_cover(const std::string& path, const CoveringComplex& cov) {
  spill(path, serialize_cover(cov));
}

}  // namespace hodgelab
