#include "msmd/periodogram.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "msmd/fft.hpp"

namespace msmd {

Periodogram periodogram(std::span<const double> x) {
  std::size_t n = x.size();
  if (n < 2) throw std::invalid_argument("periodogram: need at least 2 observations");
  double m = 0.0;
  for (double v : x) m += v;
  m /= static_cast<double>(n);

  std::vector<double> y(n);
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = x[i] - m;
    ss += y[i] * y[i];
  }

  auto f = real_fft(y);
  Periodogram p;
  p.n = n;
  p.sample_variance = ss / static_cast<double>(n);
  p.omega.resize(n - 1);
  p.ordinates.resize(n - 1);
  double scale = 1.0 / (2.0 * std::numbers::pi * static_cast<double>(n));
  double base = 2.0 * std::numbers::pi / static_cast<double>(n);
  for (std::size_t i = 1; i < n; ++i) {
    std::size_t bin = (i <= n / 2) ? i : n - i;  // real series, I is symmetric
    p.omega[i - 1] = base * static_cast<double>(i);
    p.ordinates[i - 1] = std::norm(f[bin]) * scale;
  }
  return p;
}

}  // namespace msmd
