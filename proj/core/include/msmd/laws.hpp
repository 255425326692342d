#pragma once
// Multiplier and innovation distributions. All laws are normalized to unit
// mean: binomial multipliers take values {m0, 2-m0} with probability 1/2,
// log-normal multipliers have log M ~ N(-lambda, 2*lambda), and Weibull
// innovations carry scale 1/Gamma(1+1/kappa).

#include <cstdint>
#include <random>
#include <string>

namespace msmd {

enum class MultiplierLaw { binomial, lognormal };
enum class InnovationLaw { exponential, weibull };

struct MultiplierSpec {
  MultiplierLaw law = MultiplierLaw::binomial;
  double m0 = 1.4;      // binomial support parameter, 1 < m0 < 2
  double lambda = 0.15; // log-normal location/scale parameter, > 0

  double second_moment() const;  // E(M^2)
  double variance() const;
  double log_mean() const;       // E(log M)
  double log_variance() const;   // Var(log M), the sigma_m^2 of the log model
  double sample(std::mt19937_64& g) const;
  void validate() const;
};

struct InnovationSpec {
  InnovationLaw law = InnovationLaw::exponential;
  double kappa = 1.0;  // Weibull shape, ignored for exponential

  double second_moment() const;       // E(eps^2)
  double variance() const;
  double log_mean() const;            // E(log eps)
  double log_variance() const;        // Var(log eps), the sigma_e^2 of the log model
  double fourth_log_cumulant() const; // cum4(log eps), enters the trispectrum term
  double log_density(double u) const; // log f(u), -inf for u <= 0
  double sample(std::mt19937_64& g) const;
  void validate() const;
};

const char* to_string(MultiplierLaw law);
const char* to_string(InnovationLaw law);
MultiplierLaw multiplier_law_from_string(const std::string& s);
InnovationLaw innovation_law_from_string(const std::string& s);

}  // namespace msmd
