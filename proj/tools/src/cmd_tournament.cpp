#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>

#include "commands.hpp"
#include "msmd/series.hpp"
#include "msmd/tournament.hpp"

namespace msmdcli {

namespace {

struct Opts {
  std::string data, out;
  std::size_t n_est = 10000;
  int h_max = 20;
  int k = 6;
  std::string innovation = "exponential";
  std::string models = "msmd-mle,msmd-whittle,acd,lmsd,combo";
  int linear_window = 400;
  int lmsd_ar = 50;
  int mle_starts = 5;
  std::uint64_t seed = 777;
};

const char* stars(double p, bool is_benchmark) {
  if (is_benchmark) return "";
  if (p < 0.01) return "***";
  if (p < 0.05) return "**";
  if (p < 0.10) return "*";
  return "";
}

void run(const Opts& o) {
  const auto t0 = Clock::now();
  const msmd::DurationSeries s = msmd::read_duration_csv(o.data);
  if (s.size() <= o.n_est + static_cast<std::size_t>(o.h_max))
    throw UsageError("sample too short: need more than n_est + h_max = " +
                     std::to_string(o.n_est + o.h_max) + " observations, got " +
                     std::to_string(s.size()));

  std::set<std::string> wanted;
  std::stringstream ss(o.models);
  for (std::string tok; std::getline(ss, tok, ',');)
    if (!tok.empty()) wanted.insert(tok);
  const std::set<std::string> known{"msmd-mle", "msmd-whittle", "acd", "lmsd", "combo"};
  for (const auto& w : wanted)
    if (!known.count(w)) throw UsageError("unknown model '" + w + "' in --models");
  if (!wanted.count("acd"))
    throw UsageError("the comparison needs the acd benchmark in --models");

  msmd::TournamentOptions topt;
  topt.n_est = o.n_est;
  topt.h_max = o.h_max;
  topt.msmd_k = o.k;
  topt.ilaw = parse_innovation(o.innovation);
  topt.with_msmd_mle = wanted.count("msmd-mle") > 0;
  topt.with_msmd_whittle = wanted.count("msmd-whittle") > 0;
  topt.with_lmsd = wanted.count("lmsd") > 0;
  topt.with_combo = wanted.count("combo") > 0;
  topt.linear_window = o.linear_window;
  topt.lmsd_ar_order = o.lmsd_ar;
  topt.mle.starts = o.mle_starts;
  topt.mle.seed = o.seed;
  topt.mle.want_se = false;

  const msmd::TournamentResult res = msmd::run_tournament(s.values, topt);

  std::vector<int> horizons;
  for (int h : {1, 5, 10, 20})
    if (h <= o.h_max) horizons.push_back(h);
  if (horizons.empty() || horizons.back() != o.h_max) horizons.push_back(o.h_max);

  std::string csv = "model,horizon,mse,mad,dm_stat,dm_pvalue,significance,converged\n";
  char buf[160];
  for (std::size_t mi = 0; mi < res.models.size(); ++mi) {
    const msmd::ModelForecasts& m = res.models[mi];
    const bool bench = static_cast<int>(mi) == res.benchmark;
    for (int h : horizons) {
      double stat = 0.0, pv = 1.0;
      if (!res.dm.empty() && !bench) {
        stat = res.dm[mi][h - 1].stat;
        pv = res.dm[mi][h - 1].pvalue;
      }
      std::snprintf(buf, sizeof buf, "%s,%d,%.8g,%.8g,%.4f,%.4f,%s,%d\n", m.name.c_str(), h,
                    m.mse[h - 1], m.mad[h - 1], stat, pv, stars(pv, bench),
                    m.fit_converged ? 1 : 0);
      csv += buf;
    }
  }
  write_text(o.out, csv);

  std::printf("%-14s", "model");
  for (int h : horizons) std::printf("  mse@%-8d", h);
  std::printf("\n");
  for (std::size_t mi = 0; mi < res.models.size(); ++mi) {
    const msmd::ModelForecasts& m = res.models[mi];
    const bool bench = static_cast<int>(mi) == res.benchmark;
    std::printf("%-14s", m.name.c_str());
    for (int h : horizons) {
      double pv = (!res.dm.empty() && !bench) ? res.dm[mi][h - 1].pvalue : 1.0;
      std::printf("  %9.4g%-3s", m.mse[h - 1], stars(pv, bench));
    }
    std::printf("%s\n", bench ? "  (benchmark)" : "");
  }

  json config{{"command", "tournament"},
              {"data", o.data},
              {"n_est", o.n_est},
              {"h_max", o.h_max},
              {"k", o.k},
              {"innovation", o.innovation},
              {"models", o.models},
              {"linear_window", o.linear_window},
              {"lmsd_ar", o.lmsd_ar},
              {"mle_starts", o.mle_starts},
              {"seed", o.seed},
              {"n_origins", res.n_origins},
              {"out", o.out}};
  write_sidecar(o.out, config, t0);
}

}  // namespace

void setup_tournament(CLI::App& app, CliContext&) {
  auto o = std::make_shared<Opts>();
  CLI::App* c = app.add_subcommand(
      "tournament", "out-of-sample forecast comparison against the conditional-duration "
                    "benchmark with pairwise predictive-accuracy tests");
  c->add_option("--data", o->data, "duration CSV")->required();
  c->add_option("--n-est", o->n_est, "estimation window length")->capture_default_str();
  c->add_option("--h-max", o->h_max, "longest horizon")->capture_default_str();
  c->add_option("--k", o->k, "components for the switching-model entries")->capture_default_str();
  c->add_option("--innovation", o->innovation, "exponential or weibull")->capture_default_str();
  c->add_option("--models", o->models, "comma list from msmd-mle,msmd-whittle,acd,lmsd,combo")
      ->capture_default_str();
  c->add_option("--linear-window", o->linear_window, "history for the spectral-fit predictor")
      ->capture_default_str();
  c->add_option("--lmsd-ar", o->lmsd_ar, "AR truncation of the long-memory forecaster")
      ->capture_default_str();
  c->add_option("--mle-starts", o->mle_starts, "multistart budget for the likelihood fit")
      ->capture_default_str();
  c->add_option("--seed", o->seed, "multistart seed")->capture_default_str();
  c->add_option("--out", o->out, "report CSV")->required();
  c->callback([o] { run(*o); });
}

}  // namespace msmdcli
