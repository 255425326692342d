#include "msmd/laws.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace msmd {

namespace {
constexpr double pi = std::numbers::pi;
constexpr double euler_gamma = std::numbers::egamma;
// polygamma values at 1: psi'(1) = pi^2/6, psi'''(1) = pi^4/15
constexpr double pi2_over_6 = pi * pi / 6.0;
const double pi4_over_15 = pi * pi * pi * pi / 15.0;
}  // namespace

double MultiplierSpec::second_moment() const {
  if (law == MultiplierLaw::binomial) return 1.0 + (m0 - 1.0) * (m0 - 1.0);
  return std::exp(2.0 * lambda);
}

double MultiplierSpec::variance() const { return second_moment() - 1.0; }

double MultiplierSpec::log_mean() const {
  if (law == MultiplierLaw::binomial) return 0.5 * (std::log(m0) + std::log(2.0 - m0));
  return -lambda;
}

double MultiplierSpec::log_variance() const {
  if (law == MultiplierLaw::binomial) {
    double s = 0.5 * std::log(m0 / (2.0 - m0));
    return s * s;
  }
  return 2.0 * lambda;
}

double MultiplierSpec::sample(std::mt19937_64& g) const {
  if (law == MultiplierLaw::binomial) {
    // value is redrawn from the full two-point support, so the draw may repeat
    return (g() & 1u) ? m0 : 2.0 - m0;
  }
  std::normal_distribution<double> z(-lambda, std::sqrt(2.0 * lambda));
  return std::exp(z(g));
}

void MultiplierSpec::validate() const {
  if (law == MultiplierLaw::binomial) {
    if (!(m0 > 1.0 && m0 < 2.0)) throw std::invalid_argument("multiplier: need 1 < m0 < 2");
  } else {
    if (!(lambda > 0.0)) throw std::invalid_argument("multiplier: need lambda > 0");
  }
}

double InnovationSpec::second_moment() const {
  if (law == InnovationLaw::exponential) return 2.0;
  double g1 = std::tgamma(1.0 + 1.0 / kappa);
  return std::tgamma(1.0 + 2.0 / kappa) / (g1 * g1);
}

double InnovationSpec::variance() const { return second_moment() - 1.0; }

double InnovationSpec::log_mean() const {
  if (law == InnovationLaw::exponential) return -euler_gamma;
  return -euler_gamma / kappa - std::lgamma(1.0 + 1.0 / kappa);
}

double InnovationSpec::log_variance() const {
  if (law == InnovationLaw::exponential) return pi2_over_6;
  return pi2_over_6 / (kappa * kappa);
}

double InnovationSpec::fourth_log_cumulant() const {
  if (law == InnovationLaw::exponential) return pi4_over_15;
  return pi4_over_15 / (kappa * kappa * kappa * kappa);
}

double InnovationSpec::log_density(double u) const {
  if (!(u > 0.0)) return -std::numeric_limits<double>::infinity();
  if (law == InnovationLaw::exponential) return -u;
  double xi = std::tgamma(1.0 + 1.0 / kappa);  // unit-mean scale factor
  return std::log(kappa) + kappa * std::log(xi) + (kappa - 1.0) * std::log(u) -
         std::pow(xi * u, kappa);
}

double InnovationSpec::sample(std::mt19937_64& g) const {
  if (law == InnovationLaw::exponential) {
    std::exponential_distribution<double> e(1.0);
    return e(g);
  }
  std::weibull_distribution<double> w(kappa, 1.0 / std::tgamma(1.0 + 1.0 / kappa));
  return w(g);
}

void InnovationSpec::validate() const {
  if (law == InnovationLaw::weibull && !(kappa > 0.0))
    throw std::invalid_argument("innovation: need kappa > 0");
}

const char* to_string(MultiplierLaw law) {
  return law == MultiplierLaw::binomial ? "binomial" : "lognormal";
}

const char* to_string(InnovationLaw law) {
  return law == InnovationLaw::exponential ? "exponential" : "weibull";
}

MultiplierLaw multiplier_law_from_string(const std::string& s) {
  if (s == "binomial") return MultiplierLaw::binomial;
  if (s == "lognormal") return MultiplierLaw::lognormal;
  throw std::invalid_argument("unknown multiplier law: " + s);
}

InnovationLaw innovation_law_from_string(const std::string& s) {
  if (s == "exponential") return InnovationLaw::exponential;
  if (s == "weibull") return InnovationLaw::weibull;
  throw std::invalid_argument("unknown innovation law: " + s);
}

}  // namespace msmd
