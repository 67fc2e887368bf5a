#pragma once

#include <string>
#include <vector>

#include "hodgelab/covering.hpp"
#include "hodgelab/frolicher.hpp"
#include "hodgelab/spectral.hpp"

namespace hodgelab {

// Shortest round-trip decimal; infinities render as "inf"/"-inf". Used for
// every floating-point field so reports are byte-stable.
std::string format_double(double x);

std::string inequality_report_json(const InequalityReport& r);
std::string inequality_report_csv(const InequalityReport& r);

// CSV header:
// h,k,sigma,tau,N_h_sigma,N_0_tau,sigma_min,resolvent_dist,rs_criterion,verdict
std::string sweep_csv(const SweepRecord& r, const std::string& model);
std::string sweep_json(const SweepRecord& r, const std::string& model);

std::string injection_csv(const std::vector<InjectionWitness>& rows,
                          const std::string& model);
std::string injection_json(const std::vector<InjectionWitness>& rows,
                           const std::string& model);

std::string cover_report_json(const InequalityReport& r,
                              const SectorInjectivity& sectors,
                              const std::string& model, int k, double h,
                              double sigma, double tau);
std::string cover_report_csv(const InequalityReport& r,
                             const std::string& model);

}  // namespace hodgelab
