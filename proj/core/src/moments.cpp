#include "msmd/moments.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>

namespace msmd {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;
}

double mean_duration(const MsmdParams& p) {
  p.validate();
  return p.psi_bar;
}

double variance_levels(const MsmdParams& p) {
  p.validate();
  double a = p.k * std::log(p.multiplier.second_moment()) +
             std::log(p.innovation.second_moment());
  return p.psi_bar * p.psi_bar * std::expm1(a);
}

double autocovariance_levels(const MsmdParams& p, int h) {
  if (h < 0) h = -h;
  if (h == 0) return variance_levels(p);
  auto gamma = switching_probabilities(p);
  double vm = p.multiplier.variance();
  double a = 0.0;
  for (double gj : gamma) a += std::log1p(vm * std::exp(h * std::log1p(-gj)));
  return p.psi_bar * p.psi_bar * std::expm1(a);
}

double autocorrelation_levels(const MsmdParams& p, int h) {
  return autocovariance_levels(p, h) / variance_levels(p);
}

LevelsSpectrum::LevelsSpectrum(const MsmdParams& p) {
  p.validate();
  if (p.k > 20) throw std::invalid_argument("levels spectrum: k > 20 not supported");
  auto gamma = switching_probabilities(p);
  double vm = p.multiplier.variance();
  scale_ = p.psi_bar * p.psi_bar / two_pi;
  // flat part: E(M^2)^k Var(eps); the k-th power is what makes the spectrum
  // integrate back to the levels variance
  white_ = scale_ * std::exp(p.k * std::log(p.multiplier.second_moment())) *
           p.innovation.variance();
  std::vector<double> delta(p.k);
  for (int j = 0; j < p.k; ++j) delta[j] = 1.0 - gamma[j];
  std::uint32_t n_masks = (1u << p.k) - 1u;
  terms_.reserve(n_masks);
  for (std::uint32_t mask = 1; mask <= n_masks; ++mask) {
    double rho = 1.0, coef = 1.0;
    for (int j = 0; j < p.k; ++j)
      if (mask & (1u << j)) {
        rho *= delta[j];
        coef *= vm;
      }
    terms_.emplace_back(coef, rho);
  }
}

double LevelsSpectrum::operator()(double omega) const {
  double c = std::cos(omega);
  double s = 0.0;
  for (const auto& [coef, rho] : terms_)
    s += coef * (1.0 - rho * rho) / (1.0 + rho * rho - 2.0 * rho * c);
  return white_ + scale_ * s;
}

LogMoments log_moment_map(const MsmdParams& p) {
  p.validate();
  return {p.multiplier.log_variance(), p.innovation.log_variance(),
          std::log(p.psi_bar) + p.k * p.multiplier.log_mean() + p.innovation.log_mean()};
}

double autocovariance_logs(const MsmdParams& p, int h) {
  if (h < 0) h = -h;
  auto lm = log_moment_map(p);
  if (h == 0) return p.k * lm.sigma_m2 + lm.sigma_e2;
  auto gamma = switching_probabilities(p);
  double s = 0.0;
  for (double gj : gamma) s += std::exp(h * std::log1p(-gj));
  return lm.sigma_m2 * s;
}

double spectral_density_logs(const MsmdParams& p, double omega) {
  auto lm = log_moment_map(p);
  auto gamma = switching_probabilities(p);
  double c = std::cos(omega);
  double s = 0.0;
  for (double gj : gamma) {
    double d = 1.0 - gj;
    s += (1.0 - d * d) / (1.0 + d * d - 2.0 * d * c);
  }
  return (lm.sigma_m2 * s + lm.sigma_e2) / two_pi;
}

}  // namespace msmd
