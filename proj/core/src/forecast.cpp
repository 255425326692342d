#include "msmd/forecast.hpp"

#include <cmath>
#include <stdexcept>

#include "msmd/stats.hpp"

namespace msmd {

std::vector<double> cumulative_sum(std::span<const double> step) {
  std::vector<double> out(step.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < step.size(); ++i) {
    acc += step[i];
    out[i] = acc;
  }
  return out;
}

double mse(std::span<const double> err) {
  if (err.empty()) throw std::invalid_argument("mse: empty");
  double s = 0.0;
  for (double e : err) s += e * e;
  return s / static_cast<double>(err.size());
}

double mad(std::span<const double> err) {
  if (err.empty()) throw std::invalid_argument("mad: empty");
  double s = 0.0;
  for (double e : err) s += std::abs(e);
  return s / static_cast<double>(err.size());
}

std::vector<double> combine_equal(const std::vector<std::vector<double>>& tracks) {
  if (tracks.empty()) throw std::invalid_argument("combine_equal: no tracks");
  std::size_t n = tracks.front().size();
  for (const auto& t : tracks)
    if (t.size() != n) throw std::invalid_argument("combine_equal: ragged tracks");
  std::vector<double> out(n, 0.0);
  for (const auto& t : tracks)
    for (std::size_t i = 0; i < n; ++i) out[i] += t[i];
  for (double& v : out) v /= static_cast<double>(tracks.size());
  return out;
}

DmResult diebold_mariano(std::span<const double> d, int bandwidth) {
  if (d.size() < 2) throw std::invalid_argument("diebold_mariano: need T >= 2");
  if (bandwidth < 0) throw std::invalid_argument("diebold_mariano: bandwidth < 0");
  DmResult r;
  double T = static_cast<double>(d.size());
  r.mean_d = mean(d);

  bool all_zero = true;
  for (double v : d)
    if (v != 0.0) {
      all_zero = false;
      break;
    }
  if (all_zero) return r;  // identical losses: stat 0, p 1

  // Bartlett long-run variance with (1/T)-scaled autocovariances
  double g0 = 0.0;
  for (double v : d) g0 += (v - r.mean_d) * (v - r.mean_d);
  g0 /= T;
  double lrv = g0;
  for (int b = 1; b <= bandwidth && static_cast<std::size_t>(b) < d.size(); ++b) {
    double gb = 0.0;
    for (std::size_t i = b; i < d.size(); ++i)
      gb += (d[i] - r.mean_d) * (d[i - b] - r.mean_d);
    gb /= T;
    lrv += 2.0 * (1.0 - static_cast<double>(b) / (bandwidth + 1.0)) * gb;
  }
  r.lrv = lrv;
  if (!(lrv > 0.0)) {
    r.degenerate = true;
    return r;
  }
  r.stat = r.mean_d / std::sqrt(lrv / T);
  r.pvalue = 2.0 * (1.0 - normal_cdf(std::abs(r.stat)));
  return r;
}

}  // namespace msmd
