#pragma once
// Parametric spectral densities of log durations for Whittle estimation.
// Models expose batch evaluation over a frequency grid with an analytic
// Jacobian in the parameter vector.

#include <Eigen/Core>

#include <string>
#include <vector>

#include "msmd/optimize.hpp"
#include "msmd/params.hpp"

namespace msmd {

class SpectralModel {
 public:
  virtual ~SpectralModel() = default;
  virtual int dim() const = 0;
  virtual ParamBox box() const = 0;
  virtual std::vector<std::string> names() const = 0;
  // fills f(omega_i; theta) and, when grad is non-null, the (n x dim) Jacobian
  virtual void eval(const std::vector<double>& omega, const Eigen::VectorXd& theta,
                    Eigen::VectorXd& f, Eigen::MatrixXd* grad) const = 0;
  // true when log durations are Gaussian-signal-plus-noise under the model,
  // which makes the closed-form trispectrum correction available
  virtual bool gaussian_signal() const { return false; }
  // fourth cumulant of the additive log noise at theta, 0 when unknown
  virtual double fourth_log_cumulant(const Eigen::VectorXd& theta) const;
  double value(double omega, const Eigen::VectorXd& theta) const;
};

// log-duration spectrum of the switching-multiplier model,
// theta = (m0 or lambda, b, gamma_k [, kappa])
class MsmdLogSpectrum final : public SpectralModel {
 public:
  MsmdLogSpectrum(MultiplierLaw mlaw, InnovationLaw ilaw, int k);
  int dim() const override;
  ParamBox box() const override;
  std::vector<std::string> names() const override;
  void eval(const std::vector<double>& omega, const Eigen::VectorXd& theta,
            Eigen::VectorXd& f, Eigen::MatrixXd* grad) const override;
  bool gaussian_signal() const override { return mlaw_ == MultiplierLaw::lognormal; }
  double fourth_log_cumulant(const Eigen::VectorXd& theta) const override;

  MsmdParams to_params(const Eigen::VectorXd& theta, double psi_bar = 1.0) const;
  Eigen::VectorXd from_params(const MsmdParams& p) const;
  int k() const { return k_; }

 private:
  MultiplierLaw mlaw_;
  InnovationLaw ilaw_;
  int k_;
};

// long-memory stochastic duration spectrum, theta = (beta, d, sigma_u2 [, kappa])
class LmsdLogSpectrum final : public SpectralModel {
 public:
  explicit LmsdLogSpectrum(InnovationLaw ilaw);
  int dim() const override;
  ParamBox box() const override;
  std::vector<std::string> names() const override;
  void eval(const std::vector<double>& omega, const Eigen::VectorXd& theta,
            Eigen::VectorXd& f, Eigen::MatrixXd* grad) const override;
  bool gaussian_signal() const override { return true; }
  double fourth_log_cumulant(const Eigen::VectorXd& theta) const override;

 private:
  InnovationLaw ilaw_;
};

// white noise reference model, theta = (sigma2)
class FlatSpectrum final : public SpectralModel {
 public:
  int dim() const override { return 1; }
  ParamBox box() const override;
  std::vector<std::string> names() const override { return {"sigma2"}; }
  void eval(const std::vector<double>& omega, const Eigen::VectorXd& theta,
            Eigen::VectorXd& f, Eigen::MatrixXd* grad) const override;
};

}  // namespace msmd
