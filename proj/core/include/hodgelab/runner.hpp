#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "hodgelab/bigraded.hpp"

namespace hodgelab {

struct HGridSpec {
  double start = 1.0;
  double factor = 0.5;
  int count = 8;
  // Validated grid: in (0,1], strictly decreasing.
  std::vector<double> values() const;
};

enum class OutFormat { Json, Csv };

struct RunConfig {
  std::string subcommand;  // check | sweep | cover | inject
  std::string model;       // catalog name, or empty when file is set
  std::string file;
  std::optional<std::uint64_t> metric_seed;
  HGridSpec grid;
  double sigma = 0.0;
  std::optional<double> tau;  // nullopt: auto, half the Delta_0^k gap
  int k = 1;
  double tolerance = kRelationTol;
  bool strict = false;
  OutFormat format = OutFormat::Json;
  std::string out_path;  // empty: report goes to the diagnostics stream
};

struct RunResult {
  int status = 0;  // 0 pass, 1 input error, 2 failed inequality, 3 strict nonmonotone
  std::string report;
};

RunResult run_check(const RunConfig& cfg);
RunResult run_sweep(const RunConfig& cfg);
RunResult run_cover(const RunConfig& cfg);
RunResult run_inject(const RunConfig& cfg);

// Dispatches on subcommand, writes the report to cfg.out_path or to out,
// sends errors to err, and returns the exit status.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace hodgelab
