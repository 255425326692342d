#pragma once
// Forecast bookkeeping: cumulative multi-step forecasts, loss functions,
// equal-weight combination, and the Diebold-Mariano comparison test.

#include <span>
#include <vector>

namespace msmd {

// partial sums s_h = sum_{j<=h} step[j], h = 1..len(step)
std::vector<double> cumulative_sum(std::span<const double> step);

double mse(std::span<const double> err);
double mad(std::span<const double> err);

// elementwise average of equally weighted forecast tracks
std::vector<double> combine_equal(const std::vector<std::vector<double>>& tracks);

struct DmResult {
  double stat = 0.0;
  double pvalue = 1.0;
  double mean_d = 0.0;
  double lrv = 0.0;       // Bartlett long-run variance of the differential
  bool degenerate = false;
};

// two-sided test on the loss differential d_i = loss_a(i) - loss_b(i);
// bandwidth B uses Bartlett weights 1 - b/(B+1)
DmResult diebold_mariano(std::span<const double> d, int bandwidth);

}  // namespace msmd
