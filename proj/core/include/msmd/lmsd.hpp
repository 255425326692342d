#pragma once
// Long-memory stochastic duration model
//   x_i = eps_i exp(psi_i),  psi_i = omega + beta psi_{i-1} + (1-L)^{-d} u_i
// estimated by Whittle on log durations and forecast through a truncated
// AR(m) state space with a Kalman filter.

#include <Eigen/Core>

#include <cstdint>
#include <span>
#include <vector>

#include "msmd/laws.hpp"
#include "msmd/whittle.hpp"

namespace msmd {

struct LmsdParams {
  double omega = 1.0;
  double beta = 0.7;
  double d = 0.4;
  double sigma_u2 = 0.03;
  InnovationSpec innovation;

  double mean_psi() const { return omega / (1.0 - beta); }
  void validate() const;
};

struct LmsdFit {
  LmsdParams params;
  Eigen::VectorXd theta;  // (beta, d, sigma_u2 [, kappa])
  Eigen::VectorXd se;
  double objective = 0.0;
  double qloglik = 0.0;
  bool converged = false;
  std::vector<bool> at_boundary;
  std::size_t n = 0;
};

// theoretical variance of the latent psi, summed from the closed-form
// fractional-noise autocovariances through the AR(1) filter
double lmsd_psi_variance(const LmsdParams& p);

// autocovariance of the latent log scale at lag h (series evaluation)
double lmsd_psi_autocovariance(const LmsdParams& p, int h);

// fractional-noise autocovariance gamma_v(h) of (1-L)^{-d} u
double fractional_noise_acv(double d, double sigma_u2, int h);

LmsdFit fit_lmsd_whittle(std::span<const double> x, InnovationLaw ilaw,
                         const WhittleOptions& opt = {});

// Kalman forecaster over log durations; ar_order is the AR truncation length
class LmsdForecaster {
 public:
  LmsdForecaster(const LmsdParams& p, int ar_order = 50);

  // run the filter over log durations, anchoring the mean at the sample mean
  void filter(std::span<const double> log_x);

  // advance one observation (used when rolling through an evaluation sample)
  void step(double log_x_i);

  // E(X_{n+h} | F_n) = E(eps) exp(m + v/2) with (m, v) the conditional
  // Gaussian moments of psi from the Kalman recursion
  std::vector<double> forecast_levels(int h_max) const;

  // standardized one-step prediction errors seen so far
  const std::vector<double>& innovations() const { return innov_; }

 private:
  LmsdParams p_;
  int m_;
  Eigen::VectorXd arc_;   // AR coefficients of (1-L)^d (1-beta L)
  Eigen::VectorXd a_;     // filtered state mean
  Eigen::MatrixXd P_;     // filtered state covariance
  double mu_y_ = 0.0;     // mean of log durations
  double mu_psi_ = 0.0;
  std::vector<double> innov_;
  bool primed_ = false;

  void predict_state(Eigen::VectorXd& a, Eigen::MatrixXd& P) const;
};

std::vector<double> simulate_lmsd(const LmsdParams& p, std::size_t n, std::uint64_t seed,
                                  std::size_t burn = 20000);

}  // namespace msmd
