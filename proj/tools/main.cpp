#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <string>

#include "hodgelab/catalog.hpp"
#include "hodgelab/runner.hpp"

namespace {

bool parse_tau(const std::string& text, std::optional<double>& out,
               std::string& err) {
  if (text == "auto") {
    out.reset();
    return true;
  }
  try {
    std::size_t used = 0;
    double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    out = v;
    return true;
  } catch (const std::exception&) {
    err = "--tau expects a number or \"auto\", got '" + text + "'";
    return false;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Spectral laboratory for finite bigraded complexes: the operator "
      "family D_h = dbar + dbar* + h(del + del*), its projector densities, "
      "and the cohomology inequality chain."};
  app.require_subcommand(1);

  hodgelab::RunConfig cfg;
  std::string tau_text = "auto";
  std::string format_text = "json";
  std::uint64_t seed = 0;

  auto add_model = [&](CLI::App* sub) {
    sub->add_option("--model", cfg.model,
                    "catalog model (torus1, torus2, iwasawa, "
                    "kodaira_thurston, torus1_z2, torus1_z3, torus1_z4)");
    sub->add_option("--file", cfg.file, "complex or cover file to load");
    sub->add_option("--tolerance", cfg.tolerance,
                    "relative tolerance for validation residuals")
        ->capture_default_str();
    sub->add_option("--format", format_text, "report format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    sub->add_option("--out", cfg.out_path,
                    "write the report to this path instead of stdout");
  };
  auto add_metric = [&](CLI::App* sub) {
    auto* opt = sub->add_option("--metric-seed", seed,
                                "random Hermitian metric seed");
    sub->callback([&cfg, opt, &seed] {
      if (opt->count()) cfg.metric_seed = seed;
    });
  };
  auto add_spectral = [&](CLI::App* sub) {
    sub->add_option("--k", cfg.k, "total degree")->capture_default_str();
    sub->add_option("--sigma", cfg.sigma, "density threshold for D_h")
        ->capture_default_str();
    sub->add_option("--tau", tau_text,
                    "density threshold for D_0, or \"auto\" for half the "
                    "measured spectral gap")
        ->capture_default_str();
  };
  auto add_grid = [&](CLI::App* sub) {
    sub->add_option("--h-start", cfg.grid.start, "largest h value")
        ->capture_default_str();
    sub->add_option("--h-factor", cfg.grid.factor, "geometric step factor")
        ->capture_default_str();
    sub->add_option("--h-count", cfg.grid.count, "number of grid points")
        ->capture_default_str();
  };

  CLI::App* check = app.add_subcommand(
      "check", "validate a complex and report the inequality chain");
  add_model(check);

  CLI::App* sweep = app.add_subcommand(
      "sweep", "drive h to zero and certify projector injectivity");
  add_model(sweep);
  add_metric(sweep);
  add_spectral(sweep);
  add_grid(sweep);
  sweep->add_flag("--strict", cfg.strict,
                  "exit 3 when the injectivity verdict is nonmonotone");

  CLI::App* cover = app.add_subcommand(
      "cover", "Gamma-normalized report over the sectors of a finite cover");
  add_model(cover);
  add_metric(cover);
  add_spectral(cover);
  cover->add_option("--h-start", cfg.grid.start, "h for the sector probes")
      ->capture_default_str();

  CLI::App* inject = app.add_subcommand(
      "inject", "rank witness for the harmonic injection at small h");
  add_model(inject);
  add_metric(inject);
  inject->add_option("--k", cfg.k, "total degree")->capture_default_str();
  add_grid(inject);

  CLI11_PARSE(app, argc, argv);

  std::string err;
  if (!parse_tau(tau_text, cfg.tau, err)) {
    std::cerr << "CONFIG_ERROR: " << err << "\n";
    return 1;
  }
  cfg.format = format_text == "csv" ? hodgelab::OutFormat::Csv
                                    : hodgelab::OutFormat::Json;
  cfg.subcommand = app.get_subcommands().front()->get_name();
  return hodgelab::run(cfg, std::cout, std::cerr);
}
