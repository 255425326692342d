#include "msmd/gof.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "msmd/fft.hpp"
#include "msmd/stats.hpp"

namespace msmd {

namespace {

constexpr double kPi = std::numbers::pi;

// Bartlett weights k(l/p) = 1 - l/p, so the smoothing window collapses to the
// Fejer kernel and has a closed form on the Fourier grid
std::vector<double> smoothing_window(std::size_t n, int p) {
  std::vector<double> w(n);
  w[0] = p / (2.0 * kPi);
  for (std::size_t d = 1; d < n; ++d) {
    const double s = std::sin(kPi * static_cast<double>(d) / n);
    const double sp = std::sin(p * kPi * static_cast<double>(d) / n);
    w[d] = sp * sp / (2.0 * kPi * p * s * s);
  }
  return w;
}

}  // namespace

GofResult gof_spectral(const Periodogram& pg, const std::vector<double>& f_hat,
                       int bandwidth) {
  const std::size_t n = pg.n;
  if (n < 8) throw std::invalid_argument("gof: sample too short");
  if (f_hat.size() != pg.ordinates.size())
    throw std::invalid_argument("gof: spectrum grid does not match the periodogram");

  int p = bandwidth > 0 ? bandwidth : static_cast<int>(3.0 * std::pow(n, 0.4));
  if (p < 1) p = 1;
  if (p >= static_cast<int>(n)) throw std::invalid_argument("gof: bandwidth too large");

  // ratio sequence on the full circular grid, zero frequency excluded
  std::vector<double> r(n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!(f_hat[i] > 0.0)) throw std::invalid_argument("gof: spectrum must be positive");
    r[i + 1] = pg.ordinates[i] / f_hat[i];
  }

  const std::vector<double> w = smoothing_window(n, p);
  const std::vector<double> smooth = circular_convolution(r, w);

  double s1 = 0.0, s2 = 0.0;
  for (std::size_t j = 1; j < n; ++j) {
    const double v = 2.0 * kPi / n * smooth[j];
    s1 += v;
    s2 += v * v;
  }
  s1 *= 2.0 * kPi / n;
  s2 *= 2.0 * kPi / n;

  GofResult out;
  out.n = n;
  out.bandwidth = p;
  out.t_n = s2 / (s1 * s1);

  double cn = 1.0 / (2.0 * kPi);
  double dn = 0.0;
  for (int l = 1; l <= p; ++l) {
    const double k = 1.0 - static_cast<double>(l) / p;
    const double k2 = k * k;
    cn += (1.0 - static_cast<double>(l) / n) * k2 / (n * kPi);
    dn += (1.0 - static_cast<double>(l) / n) * (1.0 - static_cast<double>(l + 1) / n) * k2 *
          k2 * 2.0 / (kPi * kPi);
  }
  out.c_n = cn;
  out.d_n = dn;
  out.statistic = n * (out.t_n - cn) / std::sqrt(dn);
  out.pvalue = normal_cdf(-out.statistic);
  return out;
}

GofResult gof_spectral(const Periodogram& pg, const SpectralModel& model,
                       const Eigen::VectorXd& theta, int bandwidth) {
  Eigen::VectorXd f;
  model.eval(pg.omega, theta, f, nullptr);
  std::vector<double> f_hat(f.data(), f.data() + f.size());
  return gof_spectral(pg, f_hat, bandwidth);
}

}  // namespace msmd
