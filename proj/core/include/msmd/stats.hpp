#pragma once
// Small sample-statistics helpers shared across modules.

#include <cstddef>
#include <span>
#include <vector>

namespace msmd {

double mean(std::span<const double> x);
double variance(std::span<const double> x);  // unbiased, n-1 denominator
double stddev(std::span<const double> x);
double median(std::span<const double> x);
double quantile(std::span<const double> x, double q);  // linear interpolation
double skewness(std::span<const double> x);
double kurtosis(std::span<const double> x);  // raw m4/m2^2, normal = 3

// Sample autocorrelations at lags 1..max_lag, biased (1/n) covariance scaling.
// biased (1/n) autocorrelations indexed by lag, r[0] = 1
std::vector<double> sample_acf(std::span<const double> x, int max_lag);

// Standard error of the mean from non-overlapping batch means.
double batch_means_se(std::span<const double> x, std::size_t n_batches);

double normal_cdf(double z);
double chi_square_sf(double x, int dof);  // upper tail

// Ljung-Box statistic and upper-tail p-value for lags 1..max_lag.
struct LjungBox {
  double stat;
  double pvalue;
};
LjungBox ljung_box(std::span<const double> x, int max_lag);

}  // namespace msmd
