#include "msmd/acd.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "msmd/optimize.hpp"
#include "msmd/rng.hpp"
#include "msmd/stats.hpp"

namespace msmd {

double AcdParams::persistence() const {
  double s = 0.0;
  for (double a : alpha) s += a;
  for (double b : beta) s += b;
  return s;
}

double AcdParams::mean() const { return omega / (1.0 - persistence()); }

void AcdParams::validate() const {
  if (!(omega > 0.0)) throw std::invalid_argument("acd: need omega > 0");
  if (alpha.empty()) throw std::invalid_argument("acd: need at least one alpha");
  for (double a : alpha)
    if (a < 0.0) throw std::invalid_argument("acd: negative alpha");
  for (double b : beta)
    if (b < 0.0) throw std::invalid_argument("acd: negative beta");
  if (persistence() >= 1.0) throw std::invalid_argument("acd: nonstationary");
  innovation.validate();
}

std::vector<double> acd_psi_path(const AcdParams& p, std::span<const double> x) {
  std::size_t q = p.alpha.size(), r = p.beta.size();
  double m = mean(x);
  std::vector<double> psi(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    double v = p.omega;
    for (std::size_t j = 0; j < q; ++j)
      v += p.alpha[j] * (i >= j + 1 ? x[i - j - 1] : m);
    for (std::size_t l = 0; l < r; ++l)
      v += p.beta[l] * (i >= l + 1 ? psi[i - l - 1] : m);
    psi[i] = v;
  }
  return psi;
}

double acd_loglik(const AcdParams& p, std::span<const double> x) {
  auto psi = acd_psi_path(p, x);
  double ll = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(psi[i] > 0.0)) return -std::numeric_limits<double>::infinity();
    ll += p.innovation.log_density(x[i] / psi[i]) - std::log(psi[i]);
  }
  return ll;
}

namespace {

AcdParams theta_to_params(const Eigen::VectorXd& theta, int q, int r, InnovationLaw ilaw) {
  AcdParams p;
  p.omega = theta[0];
  p.alpha.assign(q, 0.0);
  p.beta.assign(r, 0.0);
  for (int j = 0; j < q; ++j) p.alpha[j] = theta[1 + j];
  for (int l = 0; l < r; ++l) p.beta[l] = theta[1 + q + l];
  p.innovation.law = ilaw;
  if (ilaw == InnovationLaw::weibull) p.innovation.kappa = theta[1 + q + r];
  return p;
}

}  // namespace

AcdFit fit_acd(std::span<const double> x, int q, int p_order, InnovationLaw ilaw,
               const AcdOptions& opt) {
  if (q < 1 || p_order < 0) throw std::invalid_argument("fit_acd: bad order");
  if (x.size() < 20) throw std::invalid_argument("fit_acd: sample too short");
  double xbar = mean(x);

  int dim = 1 + q + p_order + (ilaw == InnovationLaw::weibull ? 1 : 0);
  ParamBox box;
  box.lo.assign(dim, 1e-4);
  box.hi.assign(dim, 0.999);
  box.lo[0] = 1e-6 * xbar;
  box.hi[0] = 10.0 * xbar;
  if (ilaw == InnovationLaw::weibull) {
    box.lo[dim - 1] = 0.2;
    box.hi[dim - 1] = 10.0;
  }

  double n = static_cast<double>(x.size());
  ObjFn work_obj = [&](const Eigen::VectorXd& u) {
    Eigen::VectorXd theta = to_natural(u, box);
    AcdParams p = theta_to_params(theta, q, p_order, ilaw);
    double pers = p.persistence();
    if (pers >= 0.9999) {
      // smooth penalty keeps the simplex moving instead of stalling on inf
      return 1e4 + 1e6 * (pers - 0.9999);
    }
    return -acd_loglik(p, x) / n;
  };

  auto starts = latin_hypercube_starts(box, opt.starts, opt.seed);
  // replace the box center with a textbook configuration
  starts[0] = Eigen::VectorXd::Constant(dim, 0.1);
  starts[0][0] = 0.2 * xbar;
  for (int l = 0; l < p_order; ++l) starts[0][1 + q + l] = 0.7 / p_order;
  if (ilaw == InnovationLaw::weibull) starts[0][dim - 1] = 1.0;

  MinimizeOptions mopt;
  mopt.max_iter = opt.max_iter;
  mopt.simplex_tol = 1e-8;

  AcdFit fit;
  fit.n = x.size();
  double best = std::numeric_limits<double>::infinity();
  for (const auto& s0 : starts) {
    auto res = minimize_simplex(work_obj, to_work(s0, box), mopt);
    if (res.converged) ++fit.n_converged;
    if (res.f < best) {
      best = res.f;
      fit.theta = to_natural(res.x, box);
      fit.converged = res.converged;
    }
  }
  if (!std::isfinite(best)) throw std::runtime_error("fit_acd: no finite optimum");
  if (opt.require_convergence && fit.n_converged == 0)
    throw std::runtime_error("fit_acd: no start converged");

  AcdParams p = theta_to_params(fit.theta, q, p_order, ilaw);
  if (p.persistence() >= 0.9999) {
    // pull back inside the stationarity region and flag it
    double scale = 0.9998 / p.persistence();
    for (double& a : p.alpha) a *= scale;
    for (double& b : p.beta) b *= scale;
    fit.projected = true;
    int idx = 1;
    for (int j = 0; j < q; ++j) fit.theta[idx + j] = p.alpha[j];
    for (int l = 0; l < p_order; ++l) fit.theta[1 + q + l] = p.beta[l];
  }
  fit.params = p;
  fit.loglik = acd_loglik(p, x);

  if (opt.want_se) {
    Eigen::VectorXd steps(dim);
    for (int i = 0; i < dim; ++i) steps[i] = 1e-4 * (box.hi[i] - box.lo[i]);
    ObjFn negll = [&](const Eigen::VectorXd& theta) {
      AcdParams pp = theta_to_params(theta, q, p_order, ilaw);
      return -acd_loglik(pp, x);
    };
    Eigen::MatrixXd h = numerical_hessian(negll, fit.theta, steps);
    Eigen::LDLT<Eigen::MatrixXd> ldlt(h);
    if (ldlt.info() == Eigen::Success && ldlt.isPositive()) {
      Eigen::MatrixXd cov = ldlt.solve(Eigen::MatrixXd::Identity(dim, dim));
      fit.se = cov.diagonal().cwiseMax(0.0).cwiseSqrt();
      fit.se_ok = fit.se.allFinite();
    } else {
      fit.se = Eigen::VectorXd::Constant(dim, std::numeric_limits<double>::quiet_NaN());
    }
  }
  return fit;
}

std::vector<double> forecast_acd(const AcdParams& p, std::span<const double> x, int h_max) {
  if (h_max < 1) throw std::invalid_argument("forecast_acd: h_max < 1");
  if (h_max > 1 && (p.alpha.size() != 1 || p.beta.size() != 1))
    throw std::invalid_argument("forecast_acd: multi-step needs order (1,1)");
  p.validate();
  auto psi = acd_psi_path(p, x);
  std::vector<double> out(h_max);
  // one step ahead is deterministic given the recursion state
  double psi1 = p.omega;
  for (std::size_t j = 0; j < p.alpha.size(); ++j)
    psi1 += p.alpha[j] * x[x.size() - 1 - j];
  for (std::size_t l = 0; l < p.beta.size(); ++l)
    psi1 += p.beta[l] * psi[psi.size() - 1 - l];
  out[0] = psi1;
  double pers = p.persistence();
  for (int h = 2; h <= h_max; ++h) out[h - 1] = p.omega + pers * out[h - 2];
  return out;
}

std::vector<double> simulate_acd(const AcdParams& p, std::size_t n, std::uint64_t seed) {
  p.validate();
  auto g = make_rng(seed);
  std::size_t q = p.alpha.size(), r = p.beta.size();
  double m = p.mean();
  std::vector<double> x(n), psi(n);
  for (std::size_t i = 0; i < n; ++i) {
    double v = p.omega;
    for (std::size_t j = 0; j < q; ++j)
      v += p.alpha[j] * (i >= j + 1 ? x[i - j - 1] : m);
    for (std::size_t l = 0; l < r; ++l)
      v += p.beta[l] * (i >= l + 1 ? psi[i - l - 1] : m);
    psi[i] = v;
    x[i] = v * p.innovation.sample(g);
  }
  return x;
}

}  // namespace msmd
