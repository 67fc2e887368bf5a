#include "hodgelab/runner.hpp"

#include <json.hpp>

#include <fstream>
#include <optional>

#include "hodgelab/catalog.hpp"
#include "hodgelab/complex_io.hpp"
#include "hodgelab/error.hpp"
#include "hodgelab/report_io.hpp"

namespace hodgelab {

std::vector<double> HGridSpec::values() const {
  if (count < 1) fail(ErrorCode::ConfigError, "h grid needs count >= 1");
  if (!(start > 0 && start <= 1))
    fail(ErrorCode::ConfigError, "h start must lie in (0,1]");
  if (!(factor > 0 && factor < 1))
    fail(ErrorCode::ConfigError, "h factor must lie in (0,1)");
  std::vector<double> v;
  double x = start;
  for (int i = 0; i < count; ++i) {
    if (x <= 0) fail(ErrorCode::ConfigError, "h grid underflows to zero");
    v.push_back(x);
    x *= factor;
  }
  return v;
}

namespace {

struct ResolvedModel {
  std::string name;
  BigradedComplex complex_data;  // base complex for covers
  std::optional<CoveringComplex> cover;
  std::optional<HermitianMetric> file_metric;
};

ResolvedModel resolve_model(const RunConfig& cfg) {
  if (!cfg.model.empty() && !cfg.file.empty())
    fail(ErrorCode::ConfigError, "give --model or --file, not both");
  ResolvedModel out;
  if (!cfg.model.empty()) {
    const CatalogEntry* e = find_entry(cfg.model);
    if (!e) fail(ErrorCode::ConfigError, "unknown model '" + cfg.model + "'");
    out.name = e->name;
    if (e->kind == "cover") {
      out.cover = e->make_cover();
      out.complex_data = out.cover->base();
    } else {
      out.complex_data = e->make();
    }
    return out;
  }
  if (cfg.file.empty())
    fail(ErrorCode::ConfigError, "need --model or --file");
  out.name = cfg.file;

  std::ifstream f(cfg.file, std::ios::binary);
  if (!f) fail(ErrorCode::IoError, "cannot open '" + cfg.file + "'");
  bool is_cover = false;
  try {
    nlohmann::json sniff = nlohmann::json::parse(f);
    is_cover = sniff.is_object() && sniff.contains("gammaOrder");
  } catch (const std::exception& e) {
    fail(ErrorCode::ParseError, cfg.file + ": " + e.what());
  }
  if (is_cover) {
    out.cover = load_cover_file(cfg.file, cfg.tolerance);
    out.complex_data = out.cover->base();
  } else {
    ComplexFile cf = load_complex_file(cfg.file, cfg.tolerance);
    out.complex_data = cf.complex_data;
    out.file_metric = cf.metric;
  }
  return out;
}

HermitianMetric resolve_metric(const RunConfig& cfg,
                               const ResolvedModel& model) {
  if (model.file_metric) {
    if (cfg.metric_seed)
      fail(ErrorCode::ConfigError,
           "the file already provides a metric; drop --metric-seed");
    return *model.file_metric;
  }
  if (cfg.metric_seed)
    return random_metric(model.complex_data, *cfg.metric_seed);
  return HermitianMetric::identity(model.complex_data);
}

double auto_tau_for(const BigradedComplex& c, const HermitianMetric& g,
                    int k) {
  auto frame = std::make_shared<const OrthoFrame>(c, g);
  SpectralData s0(build_dh(frame, 0.0), k);
  std::optional<double> gap = spectral_gap(s0);
  return gap ? *gap / 2 : 1.0;
}

double auto_tau_for_cover(const CoveringComplex& cov,
                          const HermitianMetric& g, int k) {
  std::optional<double> min_gap;
  for (const TwistData& s : cov.sectors()) {
    auto frame = std::make_shared<const OrthoFrame>(s.sector, g);
    SpectralData s0(build_dh(frame, 0.0), k);
    std::optional<double> gap = spectral_gap(s0);
    if (gap && (!min_gap || *gap < *min_gap)) min_gap = gap;
  }
  return min_gap ? *min_gap / 2 : 1.0;
}

}  // namespace

RunResult run_check(const RunConfig& cfg) {
  ResolvedModel model = resolve_model(cfg);
  InequalityReport rep = model.cover ? l2_report(*model.cover)
                                     : frolicher_check(model.complex_data);
  rep.model = model.name;
  RunResult res;
  res.status = rep.all_pass() ? 0 : 2;
  res.report = cfg.format == OutFormat::Json ? inequality_report_json(rep)
                                             : inequality_report_csv(rep);
  return res;
}

RunResult run_sweep(const RunConfig& cfg) {
  ResolvedModel model = resolve_model(cfg);
  HermitianMetric g = resolve_metric(cfg, model);
  std::vector<double> grid = cfg.grid.values();
  double tau = cfg.tau ? *cfg.tau
                       : auto_tau_for(model.complex_data, g, cfg.k);
  SweepRecord rec =
      h_sweep(model.complex_data, g, cfg.k, grid, cfg.sigma, tau);
  RunResult res;
  if (!rec.h_star || !rec.density_ok)
    res.status = 2;
  else if (cfg.strict && rec.nonmonotone)
    res.status = 3;
  else
    res.status = 0;
  res.report = cfg.format == OutFormat::Json ? sweep_json(rec, model.name)
                                             : sweep_csv(rec, model.name);
  return res;
}

RunResult run_cover(const RunConfig& cfg) {
  ResolvedModel model = resolve_model(cfg);
  if (!model.cover)
    fail(ErrorCode::ConfigError,
         "'" + model.name + "' is not a covering model");
  HermitianMetric g = resolve_metric(cfg, model);
  int k = cfg.k;
  double h = cfg.grid.start;
  if (!(h > 0 && h <= 1))
    fail(ErrorCode::ConfigError, "h start must lie in (0,1]");
  double tau = cfg.tau ? *cfg.tau : auto_tau_for_cover(*model.cover, g, k);

  InequalityReport chain = l2_report(*model.cover);
  chain.model = model.name;
  SectorInjectivity sectors =
      sector_injectivity(*model.cover, g, k, cfg.sigma, tau, h);

  RunResult res;
  res.status = chain.all_pass() && sectors.gamma_inequality_ok ? 0 : 2;
  res.report = cfg.format == OutFormat::Json
                   ? cover_report_json(chain, sectors, model.name, k, h,
                                       cfg.sigma, tau)
                   : cover_report_csv(chain, model.name);
  return res;
}

RunResult run_inject(const RunConfig& cfg) {
  ResolvedModel model = resolve_model(cfg);
  HermitianMetric g = resolve_metric(cfg, model);
  std::vector<double> grid = cfg.grid.values();
  std::vector<InjectionWitness> rows;
  for (double h : grid)
    rows.push_back(q_injection(model.complex_data, g, h, cfg.k));
  RunResult res;
  const InjectionWitness& last = rows.back();
  res.status = last.rank == last.b_k ? 0 : 2;
  res.report = cfg.format == OutFormat::Json
                   ? injection_json(rows, model.name)
                   : injection_csv(rows, model.name);
  return res;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    RunResult res;
    if (cfg.subcommand == "check")
      res = run_check(cfg);
    else if (cfg.subcommand == "sweep")
      res = run_sweep(cfg);
    else if (cfg.subcommand == "cover")
      res = run_cover(cfg);
    else if (cfg.subcommand == "inject")
      res = run_inject(cfg);
    else
      fail(ErrorCode::ConfigError,
           "unknown subcommand '" + cfg.subcommand + "'");
    if (!cfg.out_path.empty()) {
      std::ofstream f(cfg.out_path, std::ios::binary);
      if (!f)
        fail(ErrorCode::IoError, "cannot write '" + cfg.out_path + "'");
      f << res.report;
    } else {
      out << res.report;
    }
    return res.status;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return 1;
  }
}

}  // namespace hodgelab
