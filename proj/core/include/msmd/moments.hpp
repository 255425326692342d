#pragma once
// Closed-form second moments and spectral densities, for durations in levels
// and in logs. Products like E(M^2)^k are accumulated in log space.

#include <utility>
#include <vector>

#include "msmd/params.hpp"

namespace msmd {

double mean_duration(const MsmdParams& p);        // psi_bar
double variance_levels(const MsmdParams& p);
double autocovariance_levels(const MsmdParams& p, int h);
double autocorrelation_levels(const MsmdParams& p, int h);

// Levels spectral density: a flat component plus one AR(1)-type kernel for
// every nonempty subset of components, 2^k - 1 terms (k capped at 20).
class LevelsSpectrum {
 public:
  explicit LevelsSpectrum(const MsmdParams& p);
  double operator()(double omega) const;

 private:
  double white_;                                   // constant part
  double scale_;                                   // psi_bar^2 / 2pi
  std::vector<std::pair<double, double>> terms_;   // (coefficient, rho)
};

// log-duration moment mapping
struct LogMoments {
  double sigma_m2;   // Var(log M)
  double sigma_e2;   // Var(log eps)
  double mean_log;   // E(log X)
};
LogMoments log_moment_map(const MsmdParams& p);

double autocovariance_logs(const MsmdParams& p, int h);

// spectral density of log durations at a single frequency
double spectral_density_logs(const MsmdParams& p, double omega);

}  // namespace msmd
