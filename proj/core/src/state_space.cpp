#include "msmd/state_space.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace msmd {

StateSpace make_state_space(const MsmdParams& p) {
  p.validate();
  if (p.multiplier.law != MultiplierLaw::binomial)
    throw std::invalid_argument("state space: exact filter needs binomial multipliers");
  if (p.k > 12) throw std::invalid_argument("state space: k > 12 not supported");
  StateSpace ss;
  ss.k = p.k;
  ss.gamma = switching_probabilities(p);
  std::size_t n = std::size_t{1} << p.k;
  ss.products.resize(static_cast<int>(n));
  for (std::size_t s = 0; s < n; ++s) {
    double prod = 1.0;
    for (int j = 0; j < p.k; ++j)
      prod *= (s >> j & 1u) ? p.multiplier.m0 : 2.0 - p.multiplier.m0;
    ss.products[static_cast<int>(s)] = prod;
  }
  return ss;
}

void predict_step(const StateSpace& ss, Eigen::VectorXd& probs) {
  std::size_t n = std::size_t{1} << ss.k;
  for (int j = 0; j < ss.k; ++j) {
    // redraw hits the current value half the time: off-diagonal gamma_j / 2
    double h = 0.5 * ss.gamma[j];
    std::size_t stride = std::size_t{1} << j;
    for (std::size_t base = 0; base < n; base += 2 * stride) {
      for (std::size_t t = 0; t < stride; ++t) {
        double a = probs[static_cast<int>(base + t)];
        double b = probs[static_cast<int>(base + stride + t)];
        probs[static_cast<int>(base + t)] = a + h * (b - a);
        probs[static_cast<int>(base + stride + t)] = b + h * (a - b);
      }
    }
  }
}

namespace {

struct FilterScratch {
  Eigen::VectorXd inv_mean;   // 1 / (psi_bar * product)
  Eigen::VectorXd log_mean;   // log(psi_bar * product)
  Eigen::VectorXd logw, w;
};

// one update step; returns the log of the normalizing constant
double update_step(const MsmdParams& p, const StateSpace& ss, FilterScratch& sc,
                   Eigen::VectorXd& probs, double x) {
  if (!(x > 0.0)) throw std::invalid_argument("filter: nonpositive duration");
  int n = static_cast<int>(ss.products.size());
  double mx = -std::numeric_limits<double>::infinity();
  for (int s = 0; s < n; ++s) {
    double u = x * sc.inv_mean[s];
    // duration density at state s: f_eps(x / (psi g)) / (psi g)
    sc.logw[s] = p.innovation.log_density(u) - sc.log_mean[s];
    if (sc.logw[s] > mx) mx = sc.logw[s];
  }
  if (!std::isfinite(mx)) throw std::runtime_error("filter: degenerate likelihood");
  double c = 0.0;
  for (int s = 0; s < n; ++s) {
    sc.w[s] = probs[s] * std::exp(sc.logw[s] - mx);
    c += sc.w[s];
  }
  if (!(c > 0.0) || !std::isfinite(c))
    throw std::runtime_error("filter: vanishing likelihood");
  probs = sc.w / c;
  return mx + std::log(c);
}

FilterScratch make_scratch(const MsmdParams& p, const StateSpace& ss) {
  FilterScratch sc;
  int n = static_cast<int>(ss.products.size());
  sc.inv_mean.resize(n);
  sc.log_mean.resize(n);
  sc.logw.resize(n);
  sc.w.resize(n);
  for (int s = 0; s < n; ++s) {
    double m = p.psi_bar * ss.products[s];
    sc.inv_mean[s] = 1.0 / m;
    sc.log_mean[s] = std::log(m);
  }
  return sc;
}

}  // namespace

FilterResult filter_loglik(const MsmdParams& p, std::span<const double> x) {
  if (x.empty()) throw std::invalid_argument("filter: empty sample");
  StateSpace ss = make_state_space(p);
  FilterScratch sc = make_scratch(p, ss);
  int n_states = static_cast<int>(ss.products.size());
  Eigen::VectorXd probs =
      Eigen::VectorXd::Constant(n_states, 1.0 / static_cast<double>(n_states));
  FilterResult res;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i > 0) predict_step(ss, probs);  // the uniform start is stationary
    res.loglik += update_step(p, ss, sc, probs, x[i]);
  }
  res.filtered = probs;
  return res;
}

std::vector<Eigen::VectorXd> filter_capture(const MsmdParams& p, std::span<const double> x,
                                            std::span<const std::size_t> capture_after) {
  StateSpace ss = make_state_space(p);
  FilterScratch sc = make_scratch(p, ss);
  int n_states = static_cast<int>(ss.products.size());
  Eigen::VectorXd probs =
      Eigen::VectorXd::Constant(n_states, 1.0 / static_cast<double>(n_states));
  std::vector<Eigen::VectorXd> out;
  out.reserve(capture_after.size());
  std::size_t next = 0;
  for (std::size_t i = 0; i < x.size() && next < capture_after.size(); ++i) {
    if (i > 0) predict_step(ss, probs);
    update_step(p, ss, sc, probs, x[i]);
    if (capture_after[next] == i) {
      out.push_back(probs);
      ++next;
    } else if (capture_after[next] < i) {
      throw std::invalid_argument("filter_capture: indices must increase");
    }
  }
  if (next != capture_after.size())
    throw std::invalid_argument("filter_capture: index beyond sample");
  return out;
}

std::vector<double> optimal_forecast(const MsmdParams& p, const Eigen::VectorXd& filtered,
                                     int h_max) {
  if (h_max < 1) throw std::invalid_argument("optimal_forecast: h_max < 1");
  StateSpace ss = make_state_space(p);
  if (filtered.size() != ss.products.size())
    throw std::invalid_argument("optimal_forecast: state dimension mismatch");
  Eigen::VectorXd probs = filtered;
  std::vector<double> out(h_max);
  for (int h = 1; h <= h_max; ++h) {
    predict_step(ss, probs);
    out[h - 1] = p.psi_bar * probs.dot(ss.products);
  }
  return out;
}

}  // namespace msmd
