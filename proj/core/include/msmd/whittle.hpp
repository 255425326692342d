#pragma once
// Whittle quasi-likelihood estimation on the Fourier grid with asymptotic
// sandwich covariances. The objective is
//   Q_n(theta) = (1/n) sum_{i=1}^{n-1} [ log f(w_i; theta) + I_n(w_i)/f(w_i; theta) ].

#include <Eigen/Core>

#include <string>
#include <vector>

#include "msmd/optimize.hpp"
#include "msmd/periodogram.hpp"
#include "msmd/spectral_model.hpp"

namespace msmd {

double whittle_objective(const SpectralModel& model, const Eigen::VectorXd& theta,
                         const Periodogram& pg, Eigen::VectorXd* grad = nullptr);

enum class MForm { hessian, outer };
enum class CovMethod { automatic, plugin, newey_west, none };

// curvature matrix: full objective Hessian or outer product of log-spectrum
// gradients; both are consistent for the same limit
Eigen::MatrixXd whittle_m_matrix(const SpectralModel& model, const Eigen::VectorXd& theta,
                                 const Periodogram& pg, MForm form = MForm::hessian);

// score variance, closed form valid for Gaussian-signal-plus-noise models;
// fourth_log_cumulant is the fourth cumulant of the additive log noise
Eigen::MatrixXd whittle_v_plugin(const SpectralModel& model, const Eigen::VectorXd& theta,
                                 const Periodogram& pg, double fourth_log_cumulant);

// Bartlett-weighted score variance over the frequency ordering; bandwidth 0
// keeps only the contemporaneous outer-product term
Eigen::MatrixXd whittle_v_neweywest(const SpectralModel& model,
                                    const Eigen::VectorXd& theta, const Periodogram& pg,
                                    int bandwidth);

// sandwich M^-1 V M^-1 / n
Eigen::MatrixXd covariance_plugin(const SpectralModel& model, const Eigen::VectorXd& theta,
                                  const Periodogram& pg, double fourth_log_cumulant,
                                  MForm form = MForm::hessian);
Eigen::MatrixXd covariance_neweywest(const SpectralModel& model,
                                     const Eigen::VectorXd& theta, const Periodogram& pg,
                                     int bandwidth, MForm form = MForm::hessian);

struct WhittleOptions {
  int starts = 5;
  std::uint64_t seed = 12345;
  int max_iter = 400;
  CovMethod cov = CovMethod::automatic;  // automatic: plugin for Gaussian-signal models
  int nw_bandwidth = 20;
  MForm m_form = MForm::hessian;
  bool require_convergence = false;
};

struct WhittleFit {
  Eigen::VectorXd theta;
  Eigen::VectorXd se;          // empty when cov = none
  Eigen::MatrixXd covariance;  // of theta-hat, already divided by n
  double objective = 0.0;      // Q_n at the optimum
  double qloglik = 0.0;        // -(n/2)(Q_n + log 2pi)
  bool converged = false;
  std::vector<bool> at_boundary;
  int best_start = -1;
  int n_converged = 0;
  std::size_t n = 0;
  std::string cov_method;
};

WhittleFit fit_whittle(const SpectralModel& model, const Periodogram& pg,
                       const WhittleOptions& opt = {});

}  // namespace msmd
