#include "msmd/jump.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "msmd/moments.hpp"
#include "msmd/rng.hpp"
#include "msmd/simulate.hpp"
#include "msmd/stats.hpp"

namespace msmd {

std::vector<double> simulate_durations_of(const DurationModel& m, std::size_t n,
                                          std::uint64_t seed) {
  return std::visit(
      [&](const auto& p) -> std::vector<double> {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, MsmdParams>) {
          return simulate_durations(p, n, seed);
        } else if constexpr (std::is_same_v<T, AcdParams>) {
          return simulate_acd(p, n, seed);
        } else if constexpr (std::is_same_v<T, LmsdParams>) {
          return simulate_lmsd(p, n, seed);
        } else {
          auto gen = make_rng(seed);
          std::exponential_distribution<double> exp1(1.0);
          std::vector<double> x(n);
          for (auto& v : x) v = p.mean * exp1(gen);
          return x;
        }
      },
      m);
}

double model_mean_duration(const DurationModel& m) {
  return std::visit(
      [](const auto& p) -> double {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, MsmdParams>) {
          return p.psi_bar;
        } else if constexpr (std::is_same_v<T, AcdParams>) {
          return p.mean();
        } else if constexpr (std::is_same_v<T, LmsdParams>) {
          return std::exp(p.mean_psi() + 0.5 * lmsd_psi_variance(p));
        } else {
          return p.mean;
        }
      },
      m);
}

double duration_acf1(const DurationModel& m) {
  return std::visit(
      [](const auto& p) -> double {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, MsmdParams>) {
          return autocovariance_levels(p, 1) / autocovariance_levels(p, 0);
        } else if constexpr (std::is_same_v<T, AcdParams>) {
          if (p.alpha.size() != 1 || p.beta.size() != 1)
            throw std::invalid_argument("duration_acf1: closed form needs order (1,1)");
          const double m2 = p.innovation.second_moment();
          const double al = p.alpha[0], be = p.beta[0], a = al + be;
          const double r = m2 * al * al + 2.0 * al * be + be * be;
          if (r >= 1.0) throw std::invalid_argument("duration_acf1: infinite variance");
          const double mu = p.omega / (1.0 - a);
          const double psi2 = p.omega * p.omega * (1.0 + a) / ((1.0 - a) * (1.0 - r));
          return (p.omega * mu + (m2 * al + be) * psi2 - mu * mu) / (m2 * psi2 - mu * mu);
        } else if constexpr (std::is_same_v<T, LmsdParams>) {
          const double m2 = p.innovation.second_moment();
          const double g0 = lmsd_psi_autocovariance(p, 0);
          const double g1 = lmsd_psi_autocovariance(p, 1);
          return std::expm1(g1) / (m2 * std::exp(g0) - 1.0);
        } else {
          return 0.0;
        }
      },
      m);
}

DurationModel rescale_mean(DurationModel m, double target) {
  if (!(target > 0.0)) throw std::invalid_argument("rescale_mean: target must be positive");
  const double ratio = target / model_mean_duration(m);
  std::visit(
      [&](auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, MsmdParams>) {
          p.psi_bar *= ratio;
        } else if constexpr (std::is_same_v<T, AcdParams>) {
          p.omega *= ratio;
        } else if constexpr (std::is_same_v<T, LmsdParams>) {
          p.omega += (1.0 - p.beta) * std::log(ratio);
        } else {
          p.mean *= ratio;
        }
      },
      m);
  return m;
}

DurationModel duration_model_preset(const std::string& name, double mean_duration) {
  DurationModel m;
  if (name == "acd") {
    AcdParams p;
    p.omega = 8.4;
    p.alpha = {0.24};
    p.beta = {0.69};
    m = p;
  } else if (name == "msmd-k4") {
    MsmdParams p;
    p.k = 4;
    p.multiplier.law = MultiplierLaw::binomial;
    p.multiplier.m0 = 1.84;
    p.b = 3.30;
    p.gamma_k = 0.047;
    m = p;
  } else if (name == "msmd-k8") {
    MsmdParams p;
    p.k = 8;
    p.multiplier.law = MultiplierLaw::binomial;
    p.multiplier.m0 = 1.55;
    p.b = 3.00;
    p.gamma_k = 0.076;
    m = p;
  } else if (name == "lmsd") {
    LmsdParams p;
    p.omega = 1.028;
    p.beta = 0.73;
    p.d = 0.47;
    p.sigma_u2 = 0.029;
    m = p;
  } else {
    throw std::invalid_argument("unknown duration model preset: " + name);
  }
  return rescale_mean(m, mean_duration);
}

EventTimes event_times(const DurationModel& m, double span, std::uint64_t seed) {
  if (!(span > 0.0)) throw std::invalid_argument("event_times: span must be positive");
  const double mu = model_mean_duration(m);
  std::size_t n = static_cast<std::size_t>(span / mu * 1.25) + 1000;
  for (int attempt = 0; attempt < 12; ++attempt) {
    const std::vector<double> durs = simulate_durations_of(m, n, seed);
    EventTimes out;
    out.times.reserve(durs.size());
    out.durations.reserve(durs.size());
    double t = 0.0;
    for (double d : durs) {
      t += d;
      if (t > span) return out;
      out.times.push_back(t);
      out.durations.push_back(d);
    }
    n *= 2;  // drawn sequence fell short of the span; redo with a longer one
  }
  throw std::runtime_error("event_times: could not cover the requested span");
}

RvSimResult simulate_price_rv(const DurationModel& m, int days, const JumpConfig& cfg,
                              std::uint64_t seed) {
  if (days < 1) throw std::invalid_argument("simulate_price_rv: days must be >= 1");
  const double per_day = cfg.day_seconds / cfg.dt;
  const std::size_t grid_per_day = static_cast<std::size_t>(per_day + 0.5);
  if (std::abs(per_day - static_cast<double>(grid_per_day)) > 1e-9)
    throw std::invalid_argument("simulate_price_rv: dt must divide the trading day");

  const double span = days * cfg.day_seconds;
  EventTimes ev = event_times(m, span, seed);

  auto jump_gen = make_rng(seed, 1);
  std::normal_distribution<double> jump(0.0, std::sqrt(cfg.jump_var));

  const std::size_t n_grid = static_cast<std::size_t>(days) * grid_per_day;
  std::vector<double> returns(n_grid, 0.0);
  RvSimResult out;
  out.counts.assign(days, 0);
  for (double t : ev.times) {
    std::size_t idx = static_cast<std::size_t>(std::ceil(t / cfg.dt)) - 1;
    if (idx >= n_grid) idx = n_grid - 1;
    returns[idx] += jump(jump_gen);
    std::size_t day = static_cast<std::size_t>(t / cfg.day_seconds);
    if (day >= static_cast<std::size_t>(days)) day = days - 1;
    ++out.counts[day];
  }

  out.rv.assign(days, 0.0);
  for (std::size_t j = 0; j < n_grid; ++j) out.rv[j / grid_per_day] += returns[j] * returns[j];
  out.durations = std::move(ev.durations);
  return out;
}

CountScaling count_variance_scaling(const DurationModel& m, const std::vector<double>& t_grid,
                                    int replications, std::uint64_t seed) {
  if (t_grid.size() < 2) throw std::invalid_argument("count scaling: need at least two horizons");
  if (replications < 8) throw std::invalid_argument("count scaling: need at least 8 replications");
  const double t_max = *std::max_element(t_grid.begin(), t_grid.end());

  std::vector<std::vector<double>> counts(t_grid.size(),
                                          std::vector<double>(replications, 0.0));
  for (int r = 0; r < replications; ++r) {
    const EventTimes ev = event_times(m, t_max, seed + static_cast<std::uint64_t>(r));
    for (std::size_t g = 0; g < t_grid.size(); ++g) {
      const double t = t_grid[g];
      std::size_t c = 0;
      while (c < ev.times.size() && ev.times[c] <= t) ++c;
      counts[g][r] = static_cast<double>(c);
    }
  }

  CountScaling out;
  out.t = t_grid;
  for (std::size_t g = 0; g < t_grid.size(); ++g) out.var_counts.push_back(variance(counts[g]));

  // OLS of log variance on log window length
  const std::size_t g = t_grid.size();
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < g; ++i) {
    const double x = std::log(t_grid[i]);
    const double y = std::log(out.var_counts[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  out.slope = (g * sxy - sx * sy) / (g * sxx - sx * sx);
  out.intercept = (sy - out.slope * sx) / g;
  return out;
}

}  // namespace msmd
