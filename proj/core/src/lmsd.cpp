#include "msmd/lmsd.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <random>
#include <stdexcept>

#include "msmd/fft.hpp"
#include "msmd/periodogram.hpp"
#include "msmd/rng.hpp"
#include "msmd/spectral_model.hpp"
#include "msmd/stats.hpp"

namespace msmd {

void LmsdParams::validate() const {
  if (!(std::abs(beta) < 1.0)) throw std::invalid_argument("lmsd: |beta| must be < 1");
  if (!(d >= 0.0 && d < 0.5)) throw std::invalid_argument("lmsd: d must lie in [0, 0.5)");
  if (!(sigma_u2 > 0.0)) throw std::invalid_argument("lmsd: sigma_u2 must be positive");
  if (!std::isfinite(omega)) throw std::invalid_argument("lmsd: omega must be finite");
  innovation.validate();
}

double fractional_noise_acv(double d, double sigma_u2, int h) {
  double g = sigma_u2 * std::exp(std::lgamma(1.0 - 2.0 * d) - 2.0 * std::lgamma(1.0 - d));
  for (int m = 1; m <= h; ++m) g *= (m - 1 + d) / (m - d);
  return g;
}

double lmsd_psi_variance(const LmsdParams& p) {
  return lmsd_psi_autocovariance(p, 0);
}

double lmsd_psi_autocovariance(const LmsdParams& p, int h) {
  // psi is the one-sided AR(1) filter of fractional noise v, so
  // gamma_psi(h) = sum_d beta^|d| gamma_v(|h+d|) / (1 - beta^2); grouping by
  // |h+d| = m gives weights beta^|m-h| (+ beta^(m+h) for m > 0)
  h = std::abs(h);
  const double g0 = fractional_noise_acv(p.d, p.sigma_u2, 0);
  double gv = g0;
  double acc = 0.0;
  for (int m = 0; m < 400000; ++m) {
    if (m > 0) gv *= (m - 1 + p.d) / (m - p.d);
    double w = std::pow(p.beta, std::abs(m - h));
    if (m > 0) w += std::pow(p.beta, m + h);
    const double term = w * gv;
    acc += term;
    if (m > h + 1 && std::abs(term) < 1e-16 * std::abs(acc)) break;
  }
  return acc / (1.0 - p.beta * p.beta);
}

LmsdFit fit_lmsd_whittle(std::span<const double> x, InnovationLaw ilaw,
                         const WhittleOptions& opt) {
  if (x.size() < 16) throw std::invalid_argument("lmsd fit: series too short");
  std::vector<double> logs(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0)) throw std::invalid_argument("lmsd fit: durations must be positive");
    logs[i] = std::log(x[i]);
  }
  const Periodogram pg = periodogram(logs);
  const LmsdLogSpectrum model(ilaw);
  const WhittleFit wf = fit_whittle(model, pg, opt);

  LmsdFit fit;
  fit.theta = wf.theta;
  fit.se = wf.se;
  fit.objective = wf.objective;
  fit.qloglik = wf.qloglik;
  fit.converged = wf.converged;
  fit.at_boundary = wf.at_boundary;
  fit.n = x.size();

  fit.params.beta = wf.theta(0);
  fit.params.d = wf.theta(1);
  fit.params.sigma_u2 = wf.theta(2);
  fit.params.innovation.law = ilaw;
  if (ilaw == InnovationLaw::weibull) fit.params.innovation.kappa = wf.theta(3);
  // the spectral shape pins (beta, d, sigma_u2); the level comes from the
  // sample mean of the logs net of the innovation's log mean
  fit.params.omega = (mean(logs) - fit.params.innovation.log_mean()) * (1.0 - fit.params.beta);
  return fit;
}

LmsdForecaster::LmsdForecaster(const LmsdParams& p, int ar_order) : p_(p), m_(ar_order) {
  p_.validate();
  if (m_ < 2) throw std::invalid_argument("lmsd forecaster: ar_order must be >= 2");

  // AR coefficients of (1-L)^d (1-beta L): pi_j = g_j - beta g_{j-1}
  arc_.resize(m_);
  double g_prev = 1.0;
  for (int j = 1; j <= m_; ++j) {
    const double g = g_prev * (j - 1 - p_.d) / j;
    arc_(j - 1) = g - p_.beta * g_prev;
    g_prev = g;
  }

  a_ = Eigen::VectorXd::Zero(m_);
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m_, m_);
  T.row(0) = -arc_.transpose();
  T.block(1, 0, m_ - 1, m_ - 1).setIdentity();

  // stationary state covariance from P = T P T' + Q by doubling
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(m_, m_);
  P(0, 0) = p_.sigma_u2;
  Eigen::MatrixXd A = T;
  for (int it = 0; it < 64; ++it) {
    Eigen::MatrixXd inc = A * P * A.transpose();
    P += inc;
    if (inc.norm() < 1e-13 * std::max(1.0, P.norm())) break;
    A = (A * A).eval();
  }
  P_ = 0.5 * (P + P.transpose());

  mu_y_ = p_.mean_psi() + p_.innovation.log_mean();
}

void LmsdForecaster::predict_state(Eigen::VectorXd& a, Eigen::MatrixXd& P) const {
  const int m = m_;
  const double head = -arc_.dot(a);
  for (int i = m - 1; i >= 1; --i) a(i) = a(i - 1);
  a(0) = head;

  // B = T P: rows shift down, fresh top row; then P <- T B' + Q the same way
  Eigen::MatrixXd B(m, m);
  B.row(0) = -(arc_.transpose() * P);
  B.bottomRows(m - 1) = P.topRows(m - 1);
  Eigen::VectorXd w = B * arc_;
  P.row(0) = -w.transpose();
  P.bottomRows(m - 1) = B.transpose().topRows(m - 1);
  P(0, 0) += p_.sigma_u2;
  P = 0.5 * (P + P.transpose()).eval();
}

void LmsdForecaster::step(double log_x_i) {
  predict_state(a_, P_);
  const double sigma_e2 = p_.innovation.log_variance();
  const double v = log_x_i - mu_y_ - a_(0);
  const double F = P_(0, 0) + sigma_e2;
  if (!(F > 0.0)) throw std::runtime_error("lmsd filter: non-positive innovation variance");
  innov_.push_back(v / std::sqrt(F));
  const Eigen::VectorXd K = P_.col(0) / F;
  a_ += K * v;
  const Eigen::RowVectorXd r0 = P_.row(0);
  P_.noalias() -= K * r0;
  P_ = 0.5 * (P_ + P_.transpose()).eval();
}

void LmsdForecaster::filter(std::span<const double> log_x) {
  if (log_x.empty()) throw std::invalid_argument("lmsd filter: empty sample");
  // restart from the stationary state, then anchor the level at the data
  *this = LmsdForecaster(p_, m_);
  mu_y_ = mean(log_x);
  for (double y : log_x) step(y);
  primed_ = true;
}

std::vector<double> LmsdForecaster::forecast_levels(int h_max) const {
  // E[x | data] = E[eps] exp(m + v/2) with (m, v) the conditional Gaussian
  // moments of psi alone. The innovation enters through its mean (1 by
  // normalization), not a lognormal-style exp(E log eps + Var log eps / 2):
  // log eps is not Gaussian and that conversion overshoots by 28% for the
  // exponential law.
  Eigen::VectorXd a = a_;
  Eigen::MatrixXd P = P_;
  const double mu_psi = mu_y_ - p_.innovation.log_mean();
  std::vector<double> out;
  out.reserve(h_max);
  for (int h = 1; h <= h_max; ++h) {
    predict_state(a, P);
    const double mu = mu_psi + a(0);
    out.push_back(std::exp(mu + 0.5 * P(0, 0)));
  }
  return out;
}

std::vector<double> simulate_lmsd(const LmsdParams& p, std::size_t n, std::uint64_t seed,
                                  std::size_t burn) {
  p.validate();
  const std::size_t total = n + burn;
  auto gen = make_rng(seed);
  std::normal_distribution<double> normal(0.0, std::sqrt(p.sigma_u2));

  std::vector<double> u(total);
  for (auto& v : u) v = normal(gen);

  // fractional integration (1-L)^{-d} u via one zero-padded convolution
  std::size_t len = 1;
  while (len < 2 * total) len <<= 1;
  std::vector<double> upad(len, 0.0), kernel(len, 0.0);
  std::copy(u.begin(), u.end(), upad.begin());
  kernel[0] = 1.0;
  double b = 1.0;
  for (std::size_t j = 1; j < total; ++j) {
    b *= (j - 1 + p.d) / static_cast<double>(j);
    kernel[j] = b;
  }
  const std::vector<double> v = circular_convolution(upad, kernel);

  const double mu = p.mean_psi();
  std::vector<double> x;
  x.reserve(n);
  double psi = mu;
  for (std::size_t i = 0; i < total; ++i) {
    psi = p.omega + p.beta * psi + v[i];
    if (i >= burn) x.push_back(std::exp(psi) * p.innovation.sample(gen));
  }
  return x;
}

}  // namespace msmd
