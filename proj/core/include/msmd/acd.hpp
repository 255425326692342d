#pragma once
// Autoregressive conditional duration model
//   psi_i = omega + sum_j alpha_j x_{i-j} + sum_l beta_l psi_{i-l}
// with unit-mean exponential or Weibull innovations. The recursion is
// initialized at the sample mean. Multi-step forecasting is closed form for
// the (1,1) order.

#include <Eigen/Core>

#include <cstdint>
#include <span>
#include <vector>

#include "msmd/laws.hpp"

namespace msmd {

struct AcdParams {
  double omega = 0.1;
  std::vector<double> alpha{0.1};
  std::vector<double> beta{0.8};
  InnovationSpec innovation;

  double persistence() const;  // sum alpha + sum beta
  double mean() const;         // omega / (1 - persistence)
  void validate() const;
};

struct AcdOptions {
  int starts = 5;
  std::uint64_t seed = 4242;
  int max_iter = 1500;
  bool want_se = true;
  bool require_convergence = false;
};

struct AcdFit {
  AcdParams params;
  Eigen::VectorXd theta;  // (omega, alpha..., beta... [, kappa])
  Eigen::VectorXd se;
  double loglik = 0.0;
  bool converged = false;
  bool se_ok = false;
  bool projected = false;  // optimum violated stationarity and was pulled back
  int n_converged = 0;
  std::size_t n = 0;
};

double acd_loglik(const AcdParams& p, std::span<const double> x);
std::vector<double> acd_psi_path(const AcdParams& p, std::span<const double> x);

AcdFit fit_acd(std::span<const double> x, int q, int p_order, InnovationLaw ilaw,
               const AcdOptions& opt = {});

// E(x_{n+h} | F_n) for h = 1..h_max, orders (1,1) only beyond h = 1
std::vector<double> forecast_acd(const AcdParams& p, std::span<const double> x, int h_max);

std::vector<double> simulate_acd(const AcdParams& p, std::size_t n, std::uint64_t seed);

}  // namespace msmd
