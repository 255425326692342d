#include "msmd/spectral_model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace msmd {

namespace {
constexpr double pi = std::numbers::pi;
constexpr double two_pi = 2.0 * pi;
}  // namespace

double SpectralModel::fourth_log_cumulant(const Eigen::VectorXd&) const { return 0.0; }

double SpectralModel::value(double omega, const Eigen::VectorXd& theta) const {
  std::vector<double> w{omega};
  Eigen::VectorXd f(1);
  eval(w, theta, f, nullptr);
  return f[0];
}

MsmdLogSpectrum::MsmdLogSpectrum(MultiplierLaw mlaw, InnovationLaw ilaw, int k)
    : mlaw_(mlaw), ilaw_(ilaw), k_(k) {
  if (k < 1) throw std::invalid_argument("spectral model: need k >= 1");
}

int MsmdLogSpectrum::dim() const { return ilaw_ == InnovationLaw::weibull ? 4 : 3; }

ParamBox MsmdLogSpectrum::box() const {
  ParamBox b;
  if (mlaw_ == MultiplierLaw::binomial) {
    b.lo = {1.001, 1.001, 0.001};
    b.hi = {1.999, 10.0, 0.999};
  } else {
    b.lo = {0.001, 1.001, 0.001};
    b.hi = {10.0, 10.0, 0.999};
  }
  if (ilaw_ == InnovationLaw::weibull) {
    // kappa bounds are not pinned anywhere; this range covers every empirical fit
    b.lo.push_back(0.2);
    b.hi.push_back(10.0);
  }
  return b;
}

std::vector<std::string> MsmdLogSpectrum::names() const {
  std::vector<std::string> n{mlaw_ == MultiplierLaw::binomial ? "m0" : "lambda", "b",
                             "gamma_k"};
  if (ilaw_ == InnovationLaw::weibull) n.push_back("kappa");
  return n;
}

void MsmdLogSpectrum::eval(const std::vector<double>& omega, const Eigen::VectorXd& theta,
                           Eigen::VectorXd& f, Eigen::MatrixXd* grad) const {
  if (theta.size() != dim()) throw std::invalid_argument("spectral model: theta size");
  double t1 = theta[0], b = theta[1], gk = theta[2];

  double sm2, dsm2;  // sigma_m^2 and its derivative in the first coordinate
  if (mlaw_ == MultiplierLaw::binomial) {
    double s = 0.5 * std::log(t1 / (2.0 - t1));
    sm2 = s * s;
    dsm2 = 2.0 * s / (t1 * (2.0 - t1));
  } else {
    sm2 = 2.0 * t1;
    dsm2 = 2.0;
  }

  double se2, dse2_dkappa = 0.0;
  if (ilaw_ == InnovationLaw::exponential) {
    se2 = pi * pi / 6.0;
  } else {
    double kap = theta[3];
    se2 = pi * pi / (6.0 * kap * kap);
    dse2_dkappa = -pi * pi / (3.0 * kap * kap * kap);
  }

  // per component: delta_j = (1-gk)^(b^(j-k)) and its parameter sensitivities
  double L = std::log1p(-gk);
  std::vector<double> delta(k_), ddelta_db(k_), ddelta_dgk(k_);
  for (int j = 1; j <= k_; ++j) {
    double beta = std::pow(b, static_cast<double>(j - k_));
    double dj = std::exp(beta * L);
    delta[j - 1] = dj;
    ddelta_db[j - 1] = dj * L * beta * static_cast<double>(j - k_) / b;
    ddelta_dgk[j - 1] = -dj * beta / (1.0 - gk);
  }

  std::size_t n = omega.size();
  f.resize(static_cast<int>(n));
  if (grad) grad->resize(static_cast<int>(n), dim());

  for (std::size_t i = 0; i < n; ++i) {
    double c = std::cos(omega[i]);
    double sum_a = 0.0, sum_db = 0.0, sum_dgk = 0.0;
    for (int j = 0; j < k_; ++j) {
      double dj = delta[j];
      double den = 1.0 + dj * dj - 2.0 * dj * c;
      double a = (1.0 - dj * dj) / den;
      sum_a += a;
      if (grad) {
        double aprime = 2.0 * (c * (1.0 + dj * dj) - 2.0 * dj) / (den * den);
        sum_db += aprime * ddelta_db[j];
        sum_dgk += aprime * ddelta_dgk[j];
      }
    }
    int ii = static_cast<int>(i);
    f[ii] = (sm2 * sum_a + se2) / two_pi;
    if (grad) {
      (*grad)(ii, 0) = dsm2 * sum_a / two_pi;
      (*grad)(ii, 1) = sm2 * sum_db / two_pi;
      (*grad)(ii, 2) = sm2 * sum_dgk / two_pi;
      if (dim() == 4) (*grad)(ii, 3) = dse2_dkappa / two_pi;
    }
  }
}

double MsmdLogSpectrum::fourth_log_cumulant(const Eigen::VectorXd& theta) const {
  InnovationSpec inn{ilaw_, ilaw_ == InnovationLaw::weibull ? theta[3] : 1.0};
  return inn.fourth_log_cumulant();
}

MsmdParams MsmdLogSpectrum::to_params(const Eigen::VectorXd& theta, double psi_bar) const {
  MsmdParams p;
  p.k = k_;
  p.b = theta[1];
  p.gamma_k = theta[2];
  p.psi_bar = psi_bar;
  p.multiplier.law = mlaw_;
  if (mlaw_ == MultiplierLaw::binomial)
    p.multiplier.m0 = theta[0];
  else
    p.multiplier.lambda = theta[0];
  p.innovation.law = ilaw_;
  if (ilaw_ == InnovationLaw::weibull) p.innovation.kappa = theta[3];
  return p;
}

Eigen::VectorXd MsmdLogSpectrum::from_params(const MsmdParams& p) const {
  Eigen::VectorXd t(dim());
  t[0] = mlaw_ == MultiplierLaw::binomial ? p.multiplier.m0 : p.multiplier.lambda;
  t[1] = p.b;
  t[2] = p.gamma_k;
  if (dim() == 4) t[3] = p.innovation.kappa;
  return t;
}

LmsdLogSpectrum::LmsdLogSpectrum(InnovationLaw ilaw) : ilaw_(ilaw) {}

int LmsdLogSpectrum::dim() const { return ilaw_ == InnovationLaw::weibull ? 4 : 3; }

ParamBox LmsdLogSpectrum::box() const {
  ParamBox b;
  b.lo = {0.001, 0.001, 1e-8};
  b.hi = {0.999, 0.5, 10.0};
  if (ilaw_ == InnovationLaw::weibull) {
    b.lo.push_back(0.2);
    b.hi.push_back(10.0);
  }
  return b;
}

std::vector<std::string> LmsdLogSpectrum::names() const {
  std::vector<std::string> n{"beta", "d", "sigma_u2"};
  if (ilaw_ == InnovationLaw::weibull) n.push_back("kappa");
  return n;
}

void LmsdLogSpectrum::eval(const std::vector<double>& omega, const Eigen::VectorXd& theta,
                           Eigen::VectorXd& f, Eigen::MatrixXd* grad) const {
  if (theta.size() != dim()) throw std::invalid_argument("spectral model: theta size");
  double beta = theta[0], d = theta[1], su2 = theta[2];
  double se2, dse2_dkappa = 0.0;
  if (ilaw_ == InnovationLaw::exponential) {
    se2 = pi * pi / 6.0;
  } else {
    double kap = theta[3];
    se2 = pi * pi / (6.0 * kap * kap);
    dse2_dkappa = -pi * pi / (3.0 * kap * kap * kap);
  }

  std::size_t n = omega.size();
  f.resize(static_cast<int>(n));
  if (grad) grad->resize(static_cast<int>(n), dim());
  for (std::size_t i = 0; i < n; ++i) {
    double s = std::sin(0.5 * omega[i]);
    double a = 4.0 * s * s;  // |1 - e^{-iw}|^2, positive off the zero frequency
    double c = std::cos(omega[i]);
    double bden = 1.0 - 2.0 * beta * c + beta * beta;
    double fsig = su2 / two_pi * std::pow(a, -d) / bden;
    int ii = static_cast<int>(i);
    f[ii] = fsig + se2 / two_pi;
    if (grad) {
      (*grad)(ii, 0) = fsig * (2.0 * c - 2.0 * beta) / bden;
      (*grad)(ii, 1) = -fsig * std::log(a);
      (*grad)(ii, 2) = fsig / su2;
      if (dim() == 4) (*grad)(ii, 3) = dse2_dkappa / two_pi;
    }
  }
}

double LmsdLogSpectrum::fourth_log_cumulant(const Eigen::VectorXd& theta) const {
  InnovationSpec inn{ilaw_, ilaw_ == InnovationLaw::weibull ? theta[3] : 1.0};
  return inn.fourth_log_cumulant();
}

ParamBox FlatSpectrum::box() const {
  ParamBox b;
  b.lo = {1e-6};
  b.hi = {1e6};
  return b;
}

void FlatSpectrum::eval(const std::vector<double>& omega, const Eigen::VectorXd& theta,
                        Eigen::VectorXd& f, Eigen::MatrixXd* grad) const {
  if (theta.size() != 1) throw std::invalid_argument("flat spectrum: theta size");
  std::size_t n = omega.size();
  f.resize(static_cast<int>(n));
  f.setConstant(theta[0] / two_pi);
  if (grad) {
    grad->resize(static_cast<int>(n), 1);
    grad->setConstant(1.0 / two_pi);
  }
}

}  // namespace msmd
