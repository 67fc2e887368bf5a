#include "hodgelab/report_io.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <sstream>

#include "hodgelab/error.hpp"

namespace hodgelab {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string rat(const mpq_class& q) { return format_rational(q); }

const char* verdict_of(bool injective, bool dim_zero) {
  if (dim_zero) return "DIM_ZERO";
  return injective ? "INJECTIVE" : "DEGENERATE";
}

ordered_json inequality_json_body(const InequalityReport& r) {
  ordered_json j;
  j["model"] = r.model;
  j["gamma_order"] = r.gamma_order;
  j["n"] = r.n;

  ordered_json degrees = ordered_json::array();
  for (const DegreeLine& d : r.degrees) {
    ordered_json line;
    line["k"] = d.k;
    line["b"] = rat(d.b);
    line["h_dbar_sum"] = rat(d.h_dbar_sum);
    line["ba_sum"] = rat(d.ba_sum);
    line["frolicher_ok"] = d.frolicher_ok;
    line["slack"] = rat(d.slack);
    line["ddbar_equal"] = d.ddbar_equal;
    degrees.push_back(std::move(line));
  }
  j["degrees"] = std::move(degrees);

  ordered_json bidegrees = ordered_json::array();
  for (const BidegreeLine& b : r.bidegrees) {
    ordered_json line;
    line["p"] = b.p;
    line["q"] = b.q;
    line["h_dbar"] = rat(b.h_dbar);
    line["h_del"] = rat(b.h_del);
    line["h_bc"] = rat(b.h_bc);
    line["h_a"] = rat(b.h_a);
    line["at_ok"] = b.at_ok;
    bidegrees.push_back(std::move(line));
  }
  j["bidegrees"] = std::move(bidegrees);

  j["frolicher_all_ok"] = r.frolicher_all_ok;
  j["at_all_ok"] = r.at_all_ok;
  j["lemma_verdict"] = r.lemma_holds ? "LEMMA_HOLDS" : "LEMMA_FAILS";
  if (r.first_strict_k >= 0)
    j["first_strict_k"] = r.first_strict_k;
  else
    j["first_strict_k"] = nullptr;
  j["euler_residual"] = rat(r.euler_residual);

  ordered_json ks;
  ks["b2"] = rat(r.ks.b2);
  ks["h02_dbar"] = rat(r.ks.h02_dbar);
  ks["h11_bc"] = rat(r.ks.h11_bc);
  ks["holds"] = r.ks.holds;
  ks["equality"] = r.ks.equality;
  ordered_json five = ordered_json::array();
  for (const mpq_class& f : r.ks.five_term) five.push_back(rat(f));
  ks["five_term"] = std::move(five);
  ks["alternating_sum"] = rat(r.ks.alternating_sum);
  j["kodaira_spencer"] = std::move(ks);

  j["all_pass"] = r.all_pass();
  return j;
}

std::string inequality_csv_body(const InequalityReport& r) {
  std::ostringstream out;
  out << "type,k,p,q,b,h_dbar,h_del,h_bc,h_a,ba_sum,frolicher_ok,at_ok,"
         "ddbar_equal\n";
  for (const DegreeLine& d : r.degrees)
    out << "degree," << d.k << ",,," << rat(d.b) << "," << rat(d.h_dbar_sum)
        << ",,,," << rat(d.ba_sum) << "," << (d.frolicher_ok ? "true" : "false")
        << ",," << (d.ddbar_equal ? "true" : "false") << "\n";
  for (const BidegreeLine& b : r.bidegrees)
    out << "bidegree,," << b.p << "," << b.q << ",," << rat(b.h_dbar) << ","
        << rat(b.h_del) << "," << rat(b.h_bc) << "," << rat(b.h_a) << ",,,"
        << (b.at_ok ? "true" : "false") << ",\n";
  return out.str();
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

std::string inequality_report_json(const InequalityReport& r) {
  return inequality_json_body(r).dump(2) + "\n";
}

std::string inequality_report_csv(const InequalityReport& r) {
  return inequality_csv_body(r);
}

std::string sweep_csv(const SweepRecord& r, const std::string&) {
  std::ostringstream out;
  out << "h,k,sigma,tau,N_h_sigma,N_0_tau,sigma_min,resolvent_dist,"
         "rs_criterion,verdict\n";
  for (const SweepPoint& p : r.points)
    out << format_double(p.h) << "," << r.k << "," << format_double(r.sigma)
        << "," << format_double(r.tau) << "," << p.n_h_sigma << ","
        << p.n_0_tau << "," << format_double(p.sigma_min) << ","
        << format_double(p.resolvent_dist) << ","
        << format_double(p.rs_criterion) << ","
        << verdict_of(p.injective, p.dim_zero) << "\n";
  return out.str();
}

std::string sweep_json(const SweepRecord& r, const std::string& model) {
  ordered_json j;
  j["model"] = model;
  j["k"] = r.k;
  j["sigma"] = r.sigma;
  j["tau"] = r.tau;
  ordered_json points = ordered_json::array();
  for (const SweepPoint& p : r.points) {
    ordered_json pt;
    pt["h"] = p.h;
    pt["n_h_sigma"] = p.n_h_sigma;
    pt["n_0_tau"] = p.n_0_tau;
    pt["sigma_min"] = format_double(p.sigma_min);
    pt["resolvent_dist"] = p.resolvent_dist;
    pt["rs_criterion"] = p.rs_criterion;
    pt["verdict"] = verdict_of(p.injective, p.dim_zero);
    points.push_back(std::move(pt));
  }
  j["points"] = std::move(points);
  if (r.h_star)
    j["h_star"] = *r.h_star;
  else
    j["h_star"] = nullptr;
  j["nonmonotone"] = r.nonmonotone;
  j["density_ok"] = r.density_ok;
  j["verdict"] = r.nonmonotone ? "NONMONOTONE"
                               : (r.h_star && r.density_ok ? "PASS" : "FAILED");
  return j.dump(2) + "\n";
}

std::string injection_csv(const std::vector<InjectionWitness>& rows,
                          const std::string&) {
  std::ostringstream out;
  out << "h,k,b_k,rank,sigma_min,verdict\n";
  for (const InjectionWitness& w : rows)
    out << format_double(w.h) << "," << w.k << "," << w.b_k << "," << w.rank
        << "," << format_double(w.sigma_min) << ","
        << verdict_of(w.rank == w.b_k, w.b_k == 0) << "\n";
  return out.str();
}

std::string injection_json(const std::vector<InjectionWitness>& rows,
                           const std::string& model) {
  ordered_json j;
  j["model"] = model;
  ordered_json arr = ordered_json::array();
  for (const InjectionWitness& w : rows) {
    ordered_json row;
    row["h"] = w.h;
    row["k"] = w.k;
    row["b_k"] = w.b_k;
    row["rank"] = w.rank;
    row["sigma_min"] = format_double(w.sigma_min);
    row["verdict"] = verdict_of(w.rank == w.b_k, w.b_k == 0);
    ordered_json slots = ordered_json::array();
    for (const BidegreeSlot& s : w.row_slots) {
      ordered_json slot;
      slot["p"] = s.p;
      slot["q"] = s.q;
      slot["dim"] = s.dim;
      slots.push_back(std::move(slot));
    }
    row["row_slots"] = std::move(slots);
    arr.push_back(std::move(row));
  }
  j["witnesses"] = std::move(arr);
  return j.dump(2) + "\n";
}

std::string cover_report_json(const InequalityReport& r,
                              const SectorInjectivity& sectors,
                              const std::string& model, int k, double h,
                              double sigma, double tau) {
  ordered_json j = inequality_json_body(r);
  j["model"] = model;
  ordered_json inj;
  inj["k"] = k;
  inj["h"] = h;
  inj["sigma"] = sigma;
  inj["tau"] = tau;
  inj["n_h_sigma"] = rat(sectors.n_h_sigma);
  inj["n_0_tau"] = rat(sectors.n_0_tau);
  inj["all_injective"] = sectors.all_injective;
  inj["gamma_inequality_ok"] = sectors.gamma_inequality_ok;
  ordered_json arr = ordered_json::array();
  for (std::size_t i = 0; i < sectors.certificates.size(); ++i) {
    const InjectivityCertificate& c = sectors.certificates[i];
    ordered_json sec;
    sec["sector"] = i;
    sec["dim_h_sigma"] = c.dim_h_sigma;
    sec["dim_0_tau"] = c.dim_0_tau;
    sec["sigma_min"] = format_double(c.sigma_min);
    sec["verdict"] = verdict_of(c.injective, c.dim_zero);
    arr.push_back(std::move(sec));
  }
  inj["sectors"] = std::move(arr);
  j["sector_injectivity"] = std::move(inj);
  return j.dump(2) + "\n";
}

std::string cover_report_csv(const InequalityReport& r, const std::string&) {
  return inequality_csv_body(r);
}

}  // namespace hodgelab
