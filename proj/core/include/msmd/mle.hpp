#pragma once
// Exact-filter maximum likelihood for binomial-multiplier models. The
// parameter vector is (m0, b, gamma_k) plus kappa for Weibull innovations;
// psi_bar is held at the sample mean (or a caller-supplied value).

#include <Eigen/Core>

#include <span>
#include <vector>

#include "msmd/optimize.hpp"
#include "msmd/params.hpp"

namespace msmd {

struct MleOptions {
  int starts = 5;
  std::uint64_t seed = 777;
  int max_iter = 1200;
  double psi_bar = 0.0;           // 0 means use the sample mean
  bool want_se = true;
  double hessian_rel_step = 1e-4; // relative to box width
  bool require_convergence = false;
};

struct MleFit {
  MsmdParams params;
  Eigen::VectorXd theta;
  Eigen::VectorXd se;
  double loglik = 0.0;
  bool converged = false;
  bool se_ok = false;
  std::vector<bool> at_boundary;
  int best_start = -1;
  int n_converged = 0;
  std::size_t n = 0;
};

ParamBox mle_box(const MsmdParams& prototype);

// negative mean log-likelihood in theta, used by the optimizer and tests
double mle_objective(const MsmdParams& prototype, double psi_bar,
                     std::span<const double> x, const Eigen::VectorXd& theta);

MleFit fit_mle(std::span<const double> x, const MsmdParams& prototype,
               const MleOptions& opt = {});

}  // namespace msmd
