#include "msmd/tournament.hpp"

#include <cmath>
#include <stdexcept>

#include "msmd/levinson.hpp"
#include "msmd/lmsd.hpp"
#include "msmd/moments.hpp"
#include "msmd/periodogram.hpp"
#include "msmd/spectral_model.hpp"
#include "msmd/state_space.hpp"
#include "msmd/stats.hpp"

namespace msmd {

namespace {

std::vector<std::vector<double>> empty_tracks(int h_max, std::size_t n_orig) {
  return std::vector<std::vector<double>>(h_max, std::vector<double>(n_orig, 0.0));
}

// The evaluation target is the time needed for h more events, so per-step
// forecasts are summed over horizons before scoring.
void cumulate(ModelForecasts& mf) {
  const int h_max = static_cast<int>(mf.point.size());
  const std::size_t n_orig = h_max > 0 ? mf.point[0].size() : 0;
  mf.cumulative = empty_tracks(h_max, n_orig);
  for (std::size_t j = 0; j < n_orig; ++j) {
    double run = 0.0;
    for (int h = 0; h < h_max; ++h) {
      run += mf.point[h][j];
      mf.cumulative[h][j] = run;
    }
  }
}

void fill_losses(ModelForecasts& mf, const std::vector<std::vector<double>>& actual) {
  const int h_max = static_cast<int>(mf.cumulative.size());
  mf.mse.resize(h_max);
  mf.mad.resize(h_max);
  for (int h = 0; h < h_max; ++h) {
    std::vector<double> err(actual[h].size());
    for (std::size_t j = 0; j < err.size(); ++j) err[j] = mf.cumulative[h][j] - actual[h][j];
    mf.mse[h] = mse(err);
    mf.mad[h] = mad(err);
  }
}

}  // namespace

TournamentResult run_tournament(std::span<const double> x, const TournamentOptions& opt) {
  const std::size_t n = x.size();
  const int h_max = opt.h_max;
  if (h_max < 1) throw std::invalid_argument("tournament: h_max must be >= 1");
  if (n <= opt.n_est + static_cast<std::size_t>(h_max))
    throw std::invalid_argument("tournament: sample too short for the evaluation window");
  const std::size_t n_orig = n - opt.n_est - h_max + 1;
  const std::span<const double> est = x.first(opt.n_est);

  TournamentResult res;
  res.n_est = opt.n_est;
  res.n_origins = n_orig;
  res.actual = empty_tracks(h_max, n_orig);
  for (std::size_t j = 0; j < n_orig; ++j) {
    double run = 0.0;
    for (int h = 0; h < h_max; ++h) {
      run += x[opt.n_est + j + h];
      res.actual[h][j] = run;
    }
  }

  if (opt.with_msmd_mle) {
    MsmdParams proto;
    proto.k = opt.msmd_k;
    proto.multiplier.law = MultiplierLaw::binomial;
    proto.innovation.law = opt.ilaw;
    const MleFit fit = fit_mle(est, proto, opt.mle);

    ModelForecasts mf;
    mf.name = "msmd-mle";
    mf.fit_converged = fit.converged;
    mf.point = empty_tracks(h_max, n_orig);
    std::vector<std::size_t> capture(n_orig);
    for (std::size_t j = 0; j < n_orig; ++j) capture[j] = opt.n_est + j - 1;
    const std::vector<Eigen::VectorXd> states = filter_capture(fit.params, x, capture);
    for (std::size_t j = 0; j < n_orig; ++j) {
      const std::vector<double> f = optimal_forecast(fit.params, states[j], h_max);
      for (int h = 0; h < h_max; ++h) mf.point[h][j] = f[h];
    }
    res.models.push_back(std::move(mf));
  }

  if (opt.with_msmd_whittle) {
    std::vector<double> logs(est.size());
    for (std::size_t i = 0; i < est.size(); ++i) {
      if (!(est[i] > 0.0)) throw std::invalid_argument("tournament: durations must be positive");
      logs[i] = std::log(est[i]);
    }
    const Periodogram pg = periodogram(logs);
    const MsmdLogSpectrum model(MultiplierLaw::binomial, opt.ilaw, opt.msmd_k);
    const WhittleFit fit = fit_whittle(model, pg, opt.whittle);
    const double mu = mean(est);
    const MsmdParams params = model.to_params(fit.theta, mu);

    ModelForecasts mf;
    mf.name = "msmd-whittle";
    mf.fit_converged = fit.converged;
    mf.point = empty_tracks(h_max, n_orig);
    const int window =
        std::min<int>(opt.linear_window, static_cast<int>(opt.n_est) - 1);
    const AcvProvider acv = [&params](int l) { return autocovariance_levels(params, l); };
    for (int h = 1; h <= h_max; ++h) {
      const std::vector<double> w = linear_weights(acv, window, h);
      for (std::size_t j = 0; j < n_orig; ++j)
        mf.point[h - 1][j] = linear_forecast(w, x, opt.n_est + j - 1, mu);
    }
    res.models.push_back(std::move(mf));
  }

  if (opt.with_acd) {
    const AcdFit fit = fit_acd(est, 1, 1, opt.ilaw, opt.acd);
    ModelForecasts mf;
    mf.name = "acd";
    mf.fit_converged = fit.converged;
    mf.point = empty_tracks(h_max, n_orig);
    for (std::size_t j = 0; j < n_orig; ++j) {
      const std::vector<double> f = forecast_acd(fit.params, x.first(opt.n_est + j), h_max);
      for (int h = 0; h < h_max; ++h) mf.point[h][j] = f[h];
    }
    res.benchmark = static_cast<int>(res.models.size());
    res.models.push_back(std::move(mf));
  }

  if (opt.with_lmsd) {
    const LmsdFit fit = fit_lmsd_whittle(est, opt.ilaw, opt.whittle);
    ModelForecasts mf;
    mf.name = "lmsd";
    mf.fit_converged = fit.converged;
    mf.point = empty_tracks(h_max, n_orig);
    LmsdForecaster fc(fit.params, opt.lmsd_ar_order);
    std::vector<double> logs(est.size());
    for (std::size_t i = 0; i < est.size(); ++i) logs[i] = std::log(est[i]);
    fc.filter(logs);
    for (std::size_t j = 0; j < n_orig; ++j) {
      const std::vector<double> f = fc.forecast_levels(h_max);
      for (int h = 0; h < h_max; ++h) mf.point[h][j] = f[h];
      if (j + 1 < n_orig) fc.step(std::log(x[opt.n_est + j]));
    }
    res.models.push_back(std::move(mf));
  }

  if (opt.with_combo && res.models.size() >= 2) {
    ModelForecasts mf;
    mf.name = "combo";
    mf.point = empty_tracks(h_max, n_orig);
    for (int h = 0; h < h_max; ++h) {
      std::vector<std::vector<double>> tracks;
      for (const ModelForecasts& m : res.models) tracks.push_back(m.point[h]);
      mf.point[h] = combine_equal(tracks);
    }
    res.models.push_back(std::move(mf));
  }

  for (ModelForecasts& m : res.models) {
    cumulate(m);
    fill_losses(m, res.actual);
  }

  if (res.benchmark >= 0) {
    const ModelForecasts& bench = res.models[res.benchmark];
    res.dm.resize(res.models.size());
    for (std::size_t mi = 0; mi < res.models.size(); ++mi) {
      res.dm[mi].resize(h_max);
      if (static_cast<int>(mi) == res.benchmark) continue;
      const ModelForecasts& m = res.models[mi];
      for (int h = 0; h < h_max; ++h) {
        std::vector<double> d(n_orig);
        for (std::size_t j = 0; j < n_orig; ++j) {
          const double eb = bench.cumulative[h][j] - res.actual[h][j];
          const double em = m.cumulative[h][j] - res.actual[h][j];
          d[j] = eb * eb - em * em;
        }
        const DmResult r = diebold_mariano(d, h);
        res.dm[mi][h] = {r.stat, r.pvalue, r.degenerate};
      }
    }
  }
  return res;
}

}  // namespace msmd
