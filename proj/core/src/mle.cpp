#include "msmd/mle.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "msmd/state_space.hpp"
#include "msmd/stats.hpp"

namespace msmd {

namespace {

MsmdParams apply_theta(const MsmdParams& prototype, double psi_bar,
                       const Eigen::VectorXd& theta) {
  MsmdParams p = prototype;
  p.multiplier.m0 = theta[0];
  p.b = theta[1];
  p.gamma_k = theta[2];
  if (theta.size() == 4) p.innovation.kappa = theta[3];
  p.psi_bar = psi_bar;
  return p;
}

}  // namespace

ParamBox mle_box(const MsmdParams& prototype) {
  ParamBox box;
  box.lo = {1.001, 1.001, 0.001};
  box.hi = {1.999, 10.0, 0.999};
  if (prototype.innovation.law == InnovationLaw::weibull) {
    box.lo.push_back(0.2);
    box.hi.push_back(10.0);
  }
  return box;
}

double mle_objective(const MsmdParams& prototype, double psi_bar,
                     std::span<const double> x, const Eigen::VectorXd& theta) {
  try {
    MsmdParams p = apply_theta(prototype, psi_bar, theta);
    return -filter_loglik(p, x).loglik / static_cast<double>(x.size());
  } catch (const std::runtime_error&) {
    // degenerate likelihood inside the box: steer the optimizer away
    return 1e10;
  }
}

MleFit fit_mle(std::span<const double> x, const MsmdParams& prototype,
               const MleOptions& opt) {
  if (x.size() < 10) throw std::invalid_argument("fit_mle: sample too short");
  if (prototype.multiplier.law != MultiplierLaw::binomial)
    throw std::invalid_argument("fit_mle: exact filter needs binomial multipliers");
  double psi_bar = opt.psi_bar > 0.0 ? opt.psi_bar : mean(x);
  ParamBox box = mle_box(prototype);

  ObjFn work_obj = [&](const Eigen::VectorXd& u) {
    return mle_objective(prototype, psi_bar, x, to_natural(u, box));
  };

  // rank a wide pool of candidate points first. The raw objective at a start
  // is a poor predictor of its basin, so a triage round of short simplex
  // descents runs on a diverse slice of the pool and only the survivors get
  // full descents. A deterministic grid over (b, gamma_k) with three m0
  // layers keeps slow-decay basins represented whatever the draw; the first
  // layer pins m0 to a moment match so the grid straddles the right
  // multiplier variance. High-b side optima capture most naive starts, so
  // the moment layer also gets reserved triage slots.
  std::vector<double> logs(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    logs[i] = x[i] > 0.0 ? std::log(x[i]) : 0.0;
  const double vlog = variance(logs);
  InnovationSpec base_innov{prototype.innovation.law, 1.0};
  const double sig_e2 = base_innov.log_variance();
  const double sig_m = std::sqrt(std::max((vlog - sig_e2) / prototype.k, 1e-6));
  const double ratio = std::exp(2.0 * sig_m);
  const double m0_mm = std::clamp(2.0 * ratio / (1.0 + ratio), 1.05, 1.95);

  const int pool_n = std::max(opt.starts * 8, 40);
  auto pool = latin_hypercube_starts(box, pool_n, opt.seed);
  const int grid_begin = static_cast<int>(pool.size());
  const double layers[3] = {m0_mm, 1.25, 1.75};
  for (double lay : layers) {
    for (int a = 1; a <= 7; ++a) {
      for (int c = 1; c <= 7; ++c) {
        Eigen::VectorXd g = box.center();
        g[0] = lay;
        g[1] = box.lo[1] + (box.hi[1] - box.lo[1]) * a / 8.0;
        g[2] = box.lo[2] + (box.hi[2] - box.lo[2]) * c / 8.0;
        pool.push_back(g);
      }
    }
  }
  std::vector<std::pair<double, int>> ranked(pool.size());
  for (std::size_t s = 0; s < pool.size(); ++s)
    ranked[s] = {mle_objective(prototype, psi_bar, x, pool[s]), static_cast<int>(s)};
  std::sort(ranked.begin(), ranked.end());

  const int triage_n = std::min<int>(std::max(opt.starts * 3, 24), static_cast<int>(ranked.size()));
  std::vector<int> sel1 = diverse_prefix(ranked, pool, box, triage_n, 0.08);
  std::vector<std::pair<double, int>> mm_ranked;
  for (const auto& [f, idx] : ranked)
    if (idx >= grid_begin && idx < grid_begin + 49) mm_ranked.emplace_back(f, idx);
  int reserved = 0;
  for (const auto& [f, idx] : mm_ranked) {
    if (reserved == 8) break;
    if (std::find(sel1.begin(), sel1.end(), idx) == sel1.end()) sel1.push_back(idx);
    ++reserved;
  }
  MinimizeOptions topt;
  topt.max_iter = 60;
  topt.simplex_tol = 1e-7;
  std::vector<Eigen::VectorXd> surv_u, surv_nat;
  std::vector<std::pair<double, int>> ranked2;
  for (int idx : sel1) {
    auto res = minimize_simplex(work_obj, to_work(pool[idx], box), topt);
    ranked2.emplace_back(res.f, static_cast<int>(surv_u.size()));
    surv_u.push_back(res.x);
    surv_nat.push_back(to_natural(res.x, box));
  }
  std::sort(ranked2.begin(), ranked2.end());

  MinimizeOptions mopt;
  mopt.max_iter = opt.max_iter;
  mopt.simplex_tol = 1e-7;
  mopt.initial_step = 0.1;

  MleFit fit;
  fit.n = x.size();
  double best = std::numeric_limits<double>::infinity();
  const int descents = std::min<int>(std::max(opt.starts, 8), static_cast<int>(ranked2.size()));
  const std::vector<int> sel2 = diverse_prefix(ranked2, surv_nat, box, descents, 0.10);
  std::vector<std::pair<double, Eigen::VectorXd>> leaders;
  for (int idx : sel2) {
    auto res = minimize_simplex(work_obj, surv_u[idx], mopt);
    if (res.converged) ++fit.n_converged;
    leaders.emplace_back(res.f, res.x);
    if (res.f < best) {
      best = res.f;
      fit.theta = to_natural(res.x, box);
      fit.best_start = idx;
      fit.converged = res.converged;
    }
  }
  if (!std::isfinite(best)) throw std::runtime_error("fit_mle: no finite optimum");

  // fresh-simplex restarts at the leading descents guard against stagnation
  std::sort(leaders.begin(), leaders.end(),
            [](const auto& a, const auto& c) { return a.first < c.first; });
  MinimizeOptions popt = mopt;
  popt.initial_step = 0.05;
  const std::size_t polish = std::min<std::size_t>(leaders.size(), 3);
  for (std::size_t s = 0; s < polish; ++s) {
    auto pol = minimize_simplex(work_obj, leaders[s].second, popt);
    if (pol.f < best) {
      best = pol.f;
      fit.theta = to_natural(pol.x, box);
      fit.converged = fit.converged || pol.converged;
    }
  }
  if (opt.require_convergence && fit.n_converged == 0)
    throw std::runtime_error("fit_mle: no start converged");

  fit.loglik = -best * static_cast<double>(x.size());
  fit.params = apply_theta(prototype, psi_bar, fit.theta);
  fit.at_boundary = boundary_flags(fit.theta, box);

  if (opt.want_se) {
    Eigen::VectorXd steps(box.dim());
    for (int i = 0; i < box.dim(); ++i)
      steps[i] = opt.hessian_rel_step * (box.hi[i] - box.lo[i]);
    ObjFn negll = [&](const Eigen::VectorXd& th) {
      return mle_objective(prototype, psi_bar, x, th) * static_cast<double>(x.size());
    };
    Eigen::MatrixXd h = numerical_hessian(negll, fit.theta, steps);
    Eigen::LDLT<Eigen::MatrixXd> ldlt(h);
    if (ldlt.info() == Eigen::Success && ldlt.isPositive()) {
      Eigen::MatrixXd cov = ldlt.solve(Eigen::MatrixXd::Identity(box.dim(), box.dim()));
      fit.se = cov.diagonal().cwiseMax(0.0).cwiseSqrt();
      fit.se_ok = fit.se.allFinite();
    } else {
      fit.se = Eigen::VectorXd::Constant(box.dim(),
                                         std::numeric_limits<double>::quiet_NaN());
      fit.se_ok = false;
    }
  }
  return fit;
}

}  // namespace msmd
