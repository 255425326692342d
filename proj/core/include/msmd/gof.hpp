#pragma once
// Spectral goodness-of-fit test. The periodogram-to-spectrum ratios are
// smoothed with a Bartlett-weighted kernel over the Fourier grid and the
// dispersion of the smoothed ratio is compared with its null value; the
// standardized statistic is asymptotically standard normal, upper tail.

#include <Eigen/Core>

#include <cstddef>
#include <vector>

#include "msmd/periodogram.hpp"
#include "msmd/spectral_model.hpp"

namespace msmd {

struct GofResult {
  double t_n = 0.0;        // S2 / S1^2 dispersion of the smoothed ratio
  double c_n = 0.0;        // null centering
  double d_n = 0.0;        // null scale
  double statistic = 0.0;  // n (T_n - C_n) / sqrt(D_n)
  double pvalue = 1.0;
  int bandwidth = 0;       // smoothing lags p_n
  std::size_t n = 0;
};

// f_hat holds the fitted spectral density on pg.omega; bandwidth 0 selects
// the default floor(3 n^0.4)
GofResult gof_spectral(const Periodogram& pg, const std::vector<double>& f_hat,
                       int bandwidth = 0);

GofResult gof_spectral(const Periodogram& pg, const SpectralModel& model,
                       const Eigen::VectorXd& theta, int bandwidth = 0);

}  // namespace msmd
