#include "msmd/mc.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>
#include <thread>

#include "msmd/gof.hpp"
#include "msmd/forecast.hpp"
#include "msmd/periodogram.hpp"
#include "msmd/rng.hpp"
#include "msmd/simulate.hpp"
#include "msmd/spectral_model.hpp"

namespace msmd {

namespace {

void parallel_reps(int replications, int threads, const std::function<void(int)>& body) {
  if (threads <= 1) {
    for (int r = 0; r < replications; ++r) body(r);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (int r = t; r < replications; r += threads) body(r);
    });
  }
  for (auto& th : pool) th.join();
}

std::vector<double> log_series(const std::vector<double>& x) {
  std::vector<double> logs(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) logs[i] = std::log(x[i]);
  return logs;
}

double elapsed_since(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

Eigen::VectorXd McTable::mean() const { return estimates.colwise().mean(); }

Eigen::VectorXd McTable::sd() const {
  const Eigen::RowVectorXd mu = estimates.colwise().mean();
  const Eigen::MatrixXd c = estimates.rowwise() - mu;
  const double denom = std::max<double>(1, estimates.rows() - 1);
  return (c.colwise().squaredNorm() / denom).cwiseSqrt();
}

Eigen::VectorXd McTable::se_mean() const {
  return sd() / std::sqrt(std::max<double>(1, estimates.rows()));
}

McTable mc_whittle(const MsmdParams& truth, const McOptions& opt) {
  truth.validate();
  if (opt.replications < 1) throw std::invalid_argument("mc: replications must be >= 1");
  const auto t0 = std::chrono::steady_clock::now();

  const MsmdLogSpectrum model(truth.multiplier.law, truth.innovation.law, truth.k);
  McTable tab;
  tab.names = model.names();
  tab.truth = model.from_params(truth);
  tab.estimates.resize(opt.replications, model.dim());
  tab.converged.assign(opt.replications, 0);
  tab.n = opt.n;

  parallel_reps(opt.replications, opt.threads, [&](int r) {
    const std::vector<double> x = simulate_durations(truth, opt.n, opt.seed + r);
    const Periodogram pg = periodogram(log_series(x));
    WhittleOptions wopt = opt.whittle;
    wopt.cov = CovMethod::none;  // tables only need the point estimates
    const WhittleFit fit = fit_whittle(model, pg, wopt);
    tab.estimates.row(r) = fit.theta.transpose();
    tab.converged[r] = fit.converged ? 1 : 0;
  });

  tab.elapsed_seconds = elapsed_since(t0);
  return tab;
}

McTable mc_mle(const MsmdParams& truth, const McOptions& opt) {
  truth.validate();
  if (truth.multiplier.law != MultiplierLaw::binomial)
    throw std::invalid_argument(
        "mc: the exact filter needs a finite state space, so maximum likelihood "
        "is limited to binomial multipliers");
  if (opt.replications < 1) throw std::invalid_argument("mc: replications must be >= 1");
  const auto t0 = std::chrono::steady_clock::now();

  const bool weib = truth.innovation.law == InnovationLaw::weibull;
  McTable tab;
  tab.names = {"m0", "b", "gamma_k"};
  if (weib) tab.names.push_back("kappa");
  tab.truth.resize(weib ? 4 : 3);
  tab.truth(0) = truth.multiplier.m0;
  tab.truth(1) = truth.b;
  tab.truth(2) = truth.gamma_k;
  if (weib) tab.truth(3) = truth.innovation.kappa;
  tab.estimates.resize(opt.replications, tab.truth.size());
  tab.converged.assign(opt.replications, 0);
  tab.n = opt.n;

  MsmdParams proto = truth;
  parallel_reps(opt.replications, opt.threads, [&](int r) {
    const std::vector<double> x = simulate_durations(truth, opt.n, opt.seed + r);
    MleOptions mopt = opt.mle;
    mopt.want_se = false;
    const MleFit fit = fit_mle(x, proto, mopt);
    tab.estimates(r, 0) = fit.params.multiplier.m0;
    tab.estimates(r, 1) = fit.params.b;
    tab.estimates(r, 2) = fit.params.gamma_k;
    if (weib) tab.estimates(r, 3) = fit.params.innovation.kappa;
    tab.converged[r] = fit.converged ? 1 : 0;
  });

  tab.elapsed_seconds = elapsed_since(t0);
  return tab;
}

GofSize mc_gof_size(const MsmdParams& truth, std::size_t n, int replications,
                    std::uint64_t seed, int bandwidth, bool refit, int threads) {
  truth.validate();
  if (replications < 1) throw std::invalid_argument("mc: replications must be >= 1");
  const auto t0 = std::chrono::steady_clock::now();

  const MsmdLogSpectrum model(truth.multiplier.law, truth.innovation.law, truth.k);
  const Eigen::VectorXd theta0 = model.from_params(truth);

  GofSize out;
  out.replications = replications;
  out.pvalues.assign(replications, 1.0);

  parallel_reps(replications, threads, [&](int r) {
    const std::vector<double> x = simulate_durations(truth, n, seed + r);
    const Periodogram pg = periodogram(log_series(x));
    Eigen::VectorXd theta = theta0;
    if (refit) {
      WhittleOptions wopt;
      wopt.cov = CovMethod::none;
      theta = fit_whittle(model, pg, wopt).theta;
    }
    out.pvalues[r] = gof_spectral(pg, model, theta, bandwidth).pvalue;
  });

  for (double p : out.pvalues) {
    if (p < 0.05) ++out.reject5;
    if (p < 0.10) ++out.reject10;
  }
  out.elapsed_seconds = elapsed_since(t0);
  return out;
}

DmSize mc_dm_size(std::size_t t_len, int replications, std::uint64_t seed, int bandwidth) {
  if (replications < 1) throw std::invalid_argument("mc: replications must be >= 1");
  DmSize out;
  out.replications = replications;
  out.stats.reserve(replications);
  for (int r = 0; r < replications; ++r) {
    auto gen = make_rng(seed + r);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> d(t_len);
    for (auto& v : d) v = normal(gen);
    const DmResult res = diebold_mariano(d, bandwidth);
    out.stats.push_back(res.stat);
    if (res.pvalue < 0.05) ++out.reject5;
  }
  return out;
}

}  // namespace msmd
