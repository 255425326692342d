#pragma once
// Out-of-sample forecast comparison. Models are fit once on the estimation
// window, then produce 1..h_max step duration forecasts at every origin in the
// evaluation window; losses are compared against an ACD benchmark with
// Diebold-Mariano tests.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "msmd/acd.hpp"
#include "msmd/forecast.hpp"
#include "msmd/laws.hpp"
#include "msmd/mle.hpp"
#include "msmd/whittle.hpp"

namespace msmd {

struct TournamentOptions {
  std::size_t n_est = 2500;
  int h_max = 20;
  int msmd_k = 6;
  InnovationLaw ilaw = InnovationLaw::exponential;
  bool with_msmd_mle = true;
  bool with_msmd_whittle = true;
  bool with_acd = true;
  bool with_lmsd = true;
  bool with_combo = true;
  int linear_window = 400;  // history used by the spectral fit's linear predictor
  int lmsd_ar_order = 50;
  MleOptions mle;
  WhittleOptions whittle;
  AcdOptions acd;
};

struct ModelForecasts {
  std::string name;
  std::vector<std::vector<double>> point;       // [h-1][origin] step forecasts
  std::vector<std::vector<double>> cumulative;  // [h-1][origin] time to h more events
  std::vector<double> mse;                      // per horizon, cumulative target
  std::vector<double> mad;
  bool fit_converged = true;
};

struct DmCell {
  double stat = 0.0;
  double pvalue = 1.0;
  bool degenerate = false;
};

struct TournamentResult {
  std::vector<ModelForecasts> models;
  std::vector<std::vector<double>> actual;  // [h-1][origin] realized time to h more events
  int benchmark = -1;                       // index of the ACD entry, -1 if absent
  // dm[model][h-1]: squared-error differential of model against the
  // benchmark on the cumulative target, bandwidth h-1; positive stat
  // favors the model
  std::vector<std::vector<DmCell>> dm;
  std::size_t n_est = 0;
  std::size_t n_origins = 0;
};

TournamentResult run_tournament(std::span<const double> x, const TournamentOptions& opt = {});

}  // namespace msmd
