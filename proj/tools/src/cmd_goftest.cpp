#include <cmath>
#include <cstdio>
#include <memory>

#include "commands.hpp"
#include "msmd/gof.hpp"
#include "msmd/periodogram.hpp"
#include "msmd/series.hpp"
#include "msmd/spectral_model.hpp"
#include "msmd/whittle.hpp"

namespace msmdcli {

namespace {

struct Opts {
  std::string data, out;
  std::string null_model = "msmd";
  int k = 8;
  std::string multiplier = "binomial";
  std::string innovation = "exponential";
  int bandwidth = 0;
  std::uint64_t seed = 12345;
  int starts = 5;
};

void run(const Opts& o) {
  const auto t0 = Clock::now();
  const msmd::DurationSeries s = msmd::read_duration_csv(o.data);
  std::vector<double> logs(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!(s.values[i] > 0.0)) throw std::runtime_error("durations must be positive");
    logs[i] = std::log(s.values[i]);
  }
  const msmd::Periodogram pg = msmd::periodogram(logs);

  std::unique_ptr<msmd::SpectralModel> model;
  if (o.null_model == "msmd") {
    msmd::MultiplierLaw mlaw;
    if (o.multiplier == "binomial")
      mlaw = msmd::MultiplierLaw::binomial;
    else if (o.multiplier == "lognormal")
      mlaw = msmd::MultiplierLaw::lognormal;
    else
      throw UsageError("--multiplier must be binomial or lognormal");
    model = std::make_unique<msmd::MsmdLogSpectrum>(mlaw, parse_innovation(o.innovation), o.k);
  } else if (o.null_model == "lmsd") {
    model = std::make_unique<msmd::LmsdLogSpectrum>(parse_innovation(o.innovation));
  } else if (o.null_model == "flat") {
    model = std::make_unique<msmd::FlatSpectrum>();
  } else {
    throw UsageError("--null must be msmd, lmsd, or flat");
  }

  msmd::WhittleOptions wopt;
  wopt.cov = msmd::CovMethod::none;
  wopt.seed = o.seed;
  wopt.starts = o.starts;
  const msmd::WhittleFit fit = msmd::fit_whittle(*model, pg, wopt);
  const msmd::GofResult gof = msmd::gof_spectral(pg, *model, fit.theta, o.bandwidth);

  std::printf("%.3f (%.3f)\n", gof.statistic, gof.pvalue);

  json theta = json::array();
  for (Eigen::Index i = 0; i < fit.theta.size(); ++i) theta.push_back(fit.theta(i));
  json doc{{"command", "goftest"},
           {"null", o.null_model},
           {"statistic", gof.statistic},
           {"pvalue", gof.pvalue},
           {"t_n", gof.t_n},
           {"c_n", gof.c_n},
           {"d_n", gof.d_n},
           {"bandwidth", gof.bandwidth},
           {"n", gof.n},
           {"names", model->names()},
           {"theta", theta},
           {"fit_converged", fit.converged}};
  write_text(o.out, doc.dump(2) + "\n");

  json config{{"command", "goftest"},   {"data", o.data},
              {"null", o.null_model},   {"k", o.k},
              {"multiplier", o.multiplier}, {"innovation", o.innovation},
              {"bandwidth", o.bandwidth},   {"seed", o.seed},
              {"out", o.out}};
  write_sidecar(o.out, config, t0);
}

}  // namespace

void setup_goftest(CLI::App& app, CliContext&) {
  auto o = std::make_shared<Opts>();
  CLI::App* c = app.add_subcommand(
      "goftest", "spectral adequacy test of a fitted null against the log-duration periodogram; "
                 "prints 'statistic (p-value)'");
  c->add_option("--data", o->data, "duration CSV")->required();
  c->add_option("--null", o->null_model, "msmd, lmsd, or flat")->capture_default_str();
  c->add_option("--k", o->k, "components for the switching null")->capture_default_str();
  c->add_option("--multiplier", o->multiplier, "binomial or lognormal")->capture_default_str();
  c->add_option("--innovation", o->innovation, "exponential or weibull")->capture_default_str();
  c->add_option("--bandwidth", o->bandwidth, "smoothing lags, 0 for floor(3 n^0.4)")
      ->capture_default_str();
  c->add_option("--starts", o->starts, "multistart budget for the null fit")
      ->capture_default_str();
  c->add_option("--seed", o->seed, "multistart seed")->capture_default_str();
  c->add_option("--out", o->out, "result JSON")->required();
  c->callback([o] { run(*o); });
}

}  // namespace msmdcli
