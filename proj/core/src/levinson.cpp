#include "msmd/levinson.hpp"

#include <cmath>
#include <stdexcept>

namespace msmd {

std::vector<double> toeplitz_solve(std::span<const double> r, std::span<const double> rhs) {
  std::size_t n = r.size();
  if (n == 0 || rhs.size() != n) throw std::invalid_argument("toeplitz_solve: bad sizes");
  if (!(r[0] > 0.0)) throw std::invalid_argument("toeplitz_solve: r[0] must be positive");
  // normalized first row and right-hand side
  std::vector<double> rho(n), b(n);
  for (std::size_t i = 0; i < n; ++i) {
    rho[i] = r[i] / r[0];
    b[i] = rhs[i] / r[0];
  }
  std::vector<double> x(n, 0.0), y(n, 0.0), v(n, 0.0), z(n, 0.0);
  x[0] = b[0];
  if (n == 1) return x;
  y[0] = -rho[1];
  double alpha = -rho[1];
  double beta = 1.0;
  for (std::size_t k = 1; k < n; ++k) {
    beta *= (1.0 - alpha * alpha);
    if (!(beta > 1e-300) || std::abs(alpha) >= 1.0 - 1e-10)
      throw std::runtime_error("toeplitz_solve: matrix numerically singular");
    double mu = b[k];
    for (std::size_t i = 1; i <= k; ++i) mu -= rho[i] * x[k - i];
    mu /= beta;
    for (std::size_t i = 0; i < k; ++i) v[i] = x[i] + mu * y[k - 1 - i];
    for (std::size_t i = 0; i < k; ++i) x[i] = v[i];
    x[k] = mu;
    if (k < n - 1) {
      double a = -rho[k + 1];
      for (std::size_t i = 1; i <= k; ++i) a -= rho[i] * y[k - i];
      a /= beta;
      for (std::size_t i = 0; i < k; ++i) z[i] = y[i] + a * y[k - 1 - i];
      for (std::size_t i = 0; i < k; ++i) y[i] = z[i];
      y[k] = a;
      alpha = a;
    }
  }
  return x;
}

std::vector<double> linear_weights(const AcvProvider& acv, int window, int h) {
  if (window < 1) throw std::invalid_argument("linear_weights: window < 1");
  if (h < 1) throw std::invalid_argument("linear_weights: h < 1");
  std::vector<double> r(window), rhs(window);
  for (int i = 0; i < window; ++i) {
    r[i] = acv(i);
    rhs[i] = acv(h + i);
  }
  return toeplitz_solve(r, rhs);
}

double linear_forecast(std::span<const double> weights, std::span<const double> x,
                       std::size_t origin, double mu) {
  if (origin >= x.size()) throw std::invalid_argument("linear_forecast: origin out of range");
  if (origin + 1 < weights.size())
    throw std::invalid_argument("linear_forecast: window longer than history");
  double acc = mu;
  for (std::size_t j = 0; j < weights.size(); ++j)
    acc += weights[j] * (x[origin - j] - mu);
  return acc;
}

}  // namespace msmd
