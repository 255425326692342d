#include "msmd/stats.hpp"

#include <gsl/gsl_cdf.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace msmd {

double mean(std::span<const double> x) {
  if (x.empty()) throw std::invalid_argument("mean: empty sample");
  double s = 0.0;
  for (double v : x) s += v;
  return s / static_cast<double>(x.size());
}

double variance(std::span<const double> x) {
  if (x.size() < 2) throw std::invalid_argument("variance: need at least 2 points");
  double m = mean(x), s = 0.0;
  for (double v : x) s += (v - m) * (v - m);
  return s / static_cast<double>(x.size() - 1);
}

double stddev(std::span<const double> x) { return std::sqrt(variance(x)); }

double quantile(std::span<const double> x, double q) {
  if (x.empty()) throw std::invalid_argument("quantile: empty sample");
  if (q < 0.0 || q > 1.0) throw std::invalid_argument("quantile: q outside [0,1]");
  std::vector<double> s(x.begin(), x.end());
  std::sort(s.begin(), s.end());
  double pos = q * static_cast<double>(s.size() - 1);
  std::size_t lo = static_cast<std::size_t>(pos);
  if (lo + 1 >= s.size()) return s.back();
  double w = pos - static_cast<double>(lo);
  return (1.0 - w) * s[lo] + w * s[lo + 1];
}

double median(std::span<const double> x) { return quantile(x, 0.5); }

namespace {
void central_moments(std::span<const double> x, double& m2, double& m3, double& m4) {
  double m = mean(x);
  m2 = m3 = m4 = 0.0;
  for (double v : x) {
    double d = v - m;
    m2 += d * d;
    m3 += d * d * d;
    m4 += d * d * d * d;
  }
  double n = static_cast<double>(x.size());
  m2 /= n;
  m3 /= n;
  m4 /= n;
}
}  // namespace

double skewness(std::span<const double> x) {
  double m2, m3, m4;
  central_moments(x, m2, m3, m4);
  return m3 / std::pow(m2, 1.5);
}

double kurtosis(std::span<const double> x) {
  double m2, m3, m4;
  central_moments(x, m2, m3, m4);
  return m4 / (m2 * m2);
}

std::vector<double> sample_acf(std::span<const double> x, int max_lag) {
  if (max_lag < 1 || static_cast<std::size_t>(max_lag) >= x.size())
    throw std::invalid_argument("sample_acf: bad max_lag");
  double m = mean(x);
  double n = static_cast<double>(x.size());
  double c0 = 0.0;
  for (double v : x) c0 += (v - m) * (v - m);
  c0 /= n;
  std::vector<double> r(max_lag + 1);
  r[0] = 1.0;
  for (int h = 1; h <= max_lag; ++h) {
    double c = 0.0;
    for (std::size_t i = h; i < x.size(); ++i) c += (x[i] - m) * (x[i - h] - m);
    r[h] = c / n / c0;
  }
  return r;
}

double batch_means_se(std::span<const double> x, std::size_t n_batches) {
  if (n_batches < 2 || x.size() < 2 * n_batches)
    throw std::invalid_argument("batch_means_se: bad batch count");
  std::size_t len = x.size() / n_batches;
  std::vector<double> bm(n_batches);
  for (std::size_t b = 0; b < n_batches; ++b)
    bm[b] = mean(x.subspan(b * len, len));
  return stddev(bm) / std::sqrt(static_cast<double>(n_batches));
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double chi_square_sf(double x, int dof) { return gsl_cdf_chisq_Q(x, dof); }

LjungBox ljung_box(std::span<const double> x, int max_lag) {
  auto r = sample_acf(x, max_lag);
  double n = static_cast<double>(x.size());
  double q = 0.0;
  for (int h = 1; h <= max_lag; ++h) q += r[h] * r[h] / (n - h);
  q *= n * (n + 2.0);
  return {q, chi_square_sf(q, max_lag)};
}

}  // namespace msmd
