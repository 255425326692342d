#include <cmath>
#include <cstdio>

#include "commands.hpp"
#include "msmd/acd.hpp"
#include "msmd/io_json.hpp"
#include "msmd/lmsd.hpp"
#include "msmd/mle.hpp"
#include "msmd/periodogram.hpp"
#include "msmd/series.hpp"
#include "msmd/spectral_model.hpp"
#include "msmd/stats.hpp"
#include "msmd/whittle.hpp"

namespace msmdcli {

namespace {

std::vector<double> load_values(const std::string& path) {
  msmd::DurationSeries s = msmd::read_duration_csv(path);
  return std::move(s.values);
}

json vec_to_json(const Eigen::VectorXd& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

std::vector<double> log_values(const std::vector<double>& x) {
  std::vector<double> logs(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0)) throw std::runtime_error("durations must be positive");
    logs[i] = std::log(x[i]);
  }
  return logs;
}

void print_estimates(const std::vector<std::string>& names, const Eigen::VectorXd& theta,
                     const Eigen::VectorXd& se) {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (se.size() == theta.size() && std::isfinite(se(i)))
      std::printf("%s = %.6g (%.3g)\n", names[i].c_str(), theta(i), se(i));
    else
      std::printf("%s = %.6g\n", names[i].c_str(), theta(i));
  }
}

void emit_report(const std::string& out, const msmd::DurationModel& model, json fit,
                 const json& config, Clock::time_point t0) {
  json doc{{"command", config.at("command")},
           {"model", json::parse(msmd::duration_model_to_json(model))},
           {"fit", std::move(fit)}};
  write_text(out, doc.dump(2) + "\n");
  write_sidecar(out, config, t0);
}

struct MleOpts {
  std::string data, out;
  int k = 6;
  std::string innovation = "exponential";
  msmd::MleOptions mle;
};

void run_mle(const MleOpts& o) {
  const auto t0 = Clock::now();
  const std::vector<double> x = load_values(o.data);

  msmd::MsmdParams proto;
  proto.k = o.k;
  proto.multiplier.law = msmd::MultiplierLaw::binomial;
  proto.innovation.law = parse_innovation(o.innovation);
  const msmd::MleFit fit = msmd::fit_mle(x, proto, o.mle);

  std::vector<std::string> names{"m0", "b", "gamma_k"};
  if (proto.innovation.law == msmd::InnovationLaw::weibull) names.push_back("kappa");
  print_estimates(names, fit.theta, fit.se);
  std::printf("loglik = %.4f  converged = %s  n = %zu\n", fit.loglik,
              fit.converged ? "yes" : "no", fit.n);

  json jf{{"names", names},
          {"theta", vec_to_json(fit.theta)},
          {"se", vec_to_json(fit.se)},
          {"loglik", fit.loglik},
          {"converged", fit.converged},
          {"se_ok", fit.se_ok},
          {"at_boundary", fit.at_boundary},
          {"best_start", fit.best_start},
          {"n_converged", fit.n_converged},
          {"n", fit.n},
          {"psi_bar", fit.params.psi_bar}};
  json config{{"command", "fit-mle"}, {"data", o.data},   {"k", o.k},
              {"innovation", o.innovation}, {"starts", o.mle.starts}, {"seed", o.mle.seed},
              {"out", o.out}};
  emit_report(o.out, fit.params, std::move(jf), config, t0);
}

struct WhittleOpts {
  std::string data, out;
  int k = 8;
  std::string multiplier = "binomial";
  std::string innovation = "exponential";
  std::string cov = "auto";
  int nw_bandwidth = 20;
  msmd::WhittleOptions wh;
};

msmd::CovMethod parse_cov(const std::string& text) {
  if (text == "auto") return msmd::CovMethod::automatic;
  if (text == "plugin") return msmd::CovMethod::plugin;
  if (text == "newey-west") return msmd::CovMethod::newey_west;
  if (text == "none") return msmd::CovMethod::none;
  throw UsageError("--cov must be auto, plugin, newey-west, or none");
}

void run_whittle(const WhittleOpts& o) {
  const auto t0 = Clock::now();
  const std::vector<double> x = load_values(o.data);

  msmd::MultiplierLaw mlaw;
  if (o.multiplier == "binomial")
    mlaw = msmd::MultiplierLaw::binomial;
  else if (o.multiplier == "lognormal")
    mlaw = msmd::MultiplierLaw::lognormal;
  else
    throw UsageError("--multiplier must be binomial or lognormal");

  const msmd::MsmdLogSpectrum model(mlaw, parse_innovation(o.innovation), o.k);
  const msmd::Periodogram pg = msmd::periodogram(log_values(x));
  msmd::WhittleOptions wopt = o.wh;
  wopt.cov = parse_cov(o.cov);
  wopt.nw_bandwidth = o.nw_bandwidth;
  const msmd::WhittleFit fit = msmd::fit_whittle(model, pg, wopt);
  const msmd::MsmdParams params = model.to_params(fit.theta, msmd::mean(x));

  print_estimates(model.names(), fit.theta, fit.se);
  std::printf("objective = %.6f  qloglik = %.4f  converged = %s  cov = %s\n", fit.objective,
              fit.qloglik, fit.converged ? "yes" : "no", fit.cov_method.c_str());

  json jf{{"names", model.names()},
          {"theta", vec_to_json(fit.theta)},
          {"se", vec_to_json(fit.se)},
          {"objective", fit.objective},
          {"qloglik", fit.qloglik},
          {"converged", fit.converged},
          {"at_boundary", fit.at_boundary},
          {"cov_method", fit.cov_method},
          {"n", fit.n},
          {"psi_bar", params.psi_bar}};
  json config{{"command", "fit-whittle"},
              {"data", o.data},
              {"k", o.k},
              {"multiplier", o.multiplier},
              {"innovation", o.innovation},
              {"cov", o.cov},
              {"starts", o.wh.starts},
              {"seed", o.wh.seed},
              {"out", o.out}};
  emit_report(o.out, params, std::move(jf), config, t0);
}

struct AcdOpts {
  std::string data, out;
  int q = 1, p = 1;
  std::string innovation = "exponential";
  msmd::AcdOptions acd;
};

void run_acd(const AcdOpts& o) {
  const auto t0 = Clock::now();
  const std::vector<double> x = load_values(o.data);
  const msmd::AcdFit fit =
      msmd::fit_acd(x, o.q, o.p, parse_innovation(o.innovation), o.acd);

  std::vector<std::string> names{"omega"};
  for (int j = 1; j <= o.q; ++j) names.push_back("alpha" + std::to_string(j));
  for (int j = 1; j <= o.p; ++j) names.push_back("beta" + std::to_string(j));
  if (fit.params.innovation.law == msmd::InnovationLaw::weibull) names.push_back("kappa");
  print_estimates(names, fit.theta, fit.se);
  std::printf("loglik = %.4f  converged = %s  persistence = %.4f\n", fit.loglik,
              fit.converged ? "yes" : "no", fit.params.persistence());

  json jf{{"names", names},
          {"theta", vec_to_json(fit.theta)},
          {"se", vec_to_json(fit.se)},
          {"loglik", fit.loglik},
          {"converged", fit.converged},
          {"se_ok", fit.se_ok},
          {"projected", fit.projected},
          {"n", fit.n}};
  json config{{"command", "fit-acd"}, {"data", o.data},   {"q", o.q}, {"p", o.p},
              {"innovation", o.innovation}, {"seed", o.acd.seed}, {"out", o.out}};
  emit_report(o.out, fit.params, std::move(jf), config, t0);
}

struct LmsdOpts {
  std::string data, out;
  std::string innovation = "exponential";
  msmd::WhittleOptions wh;
};

void run_lmsd(const LmsdOpts& o) {
  const auto t0 = Clock::now();
  const std::vector<double> x = load_values(o.data);
  const msmd::LmsdFit fit = msmd::fit_lmsd_whittle(x, parse_innovation(o.innovation), o.wh);

  std::vector<std::string> names{"beta", "d", "sigma_u2"};
  if (fit.params.innovation.law == msmd::InnovationLaw::weibull) names.push_back("kappa");
  print_estimates(names, fit.theta, fit.se);
  std::printf("omega = %.6g  qloglik = %.4f  converged = %s\n", fit.params.omega, fit.qloglik,
              fit.converged ? "yes" : "no");

  json jf{{"names", names},
          {"theta", vec_to_json(fit.theta)},
          {"se", vec_to_json(fit.se)},
          {"omega", fit.params.omega},
          {"objective", fit.objective},
          {"qloglik", fit.qloglik},
          {"converged", fit.converged},
          {"at_boundary", fit.at_boundary},
          {"n", fit.n}};
  json config{{"command", "fit-lmsd"},
              {"data", o.data},
              {"innovation", o.innovation},
              {"starts", o.wh.starts},
              {"seed", o.wh.seed},
              {"out", o.out}};
  emit_report(o.out, fit.params, std::move(jf), config, t0);
}

}  // namespace

void setup_fits(CLI::App& app, CliContext&) {
  {
    auto o = std::make_shared<MleOpts>();
    CLI::App* c = app.add_subcommand(
        "fit-mle", "exact-filter maximum likelihood for binomial switching models");
    c->add_option("--data", o->data, "duration CSV")->required();
    c->add_option("--k", o->k, "number of components")->capture_default_str();
    c->add_option("--innovation", o->innovation, "exponential or weibull")->capture_default_str();
    c->add_option("--starts", o->mle.starts, "multistart budget")->capture_default_str();
    c->add_option("--seed", o->mle.seed, "multistart seed")->capture_default_str();
    c->add_option("--max-iter", o->mle.max_iter, "simplex iteration cap")->capture_default_str();
    c->add_option("--psi-bar", o->mle.psi_bar, "fix the mean (default: sample mean)");
    c->add_flag_callback("--no-se", [o] { o->mle.want_se = false; }, "skip standard errors");
    c->add_option("--out", o->out, "fit report JSON")->required();
    c->callback([o] { run_mle(*o); });
  }
  {
    auto o = std::make_shared<WhittleOpts>();
    CLI::App* c =
        app.add_subcommand("fit-whittle", "spectral quasi-likelihood fit on log durations");
    c->add_option("--data", o->data, "duration CSV")->required();
    c->add_option("--k", o->k, "number of components")->capture_default_str();
    c->add_option("--multiplier", o->multiplier, "binomial or lognormal")->capture_default_str();
    c->add_option("--innovation", o->innovation, "exponential or weibull")->capture_default_str();
    c->add_option("--cov", o->cov, "auto, plugin, newey-west, or none")->capture_default_str();
    c->add_option("--nw-bandwidth", o->nw_bandwidth, "Bartlett bandwidth for newey-west")
        ->capture_default_str();
    c->add_option("--starts", o->wh.starts, "multistart budget")->capture_default_str();
    c->add_option("--seed", o->wh.seed, "multistart seed")->capture_default_str();
    c->add_option("--out", o->out, "fit report JSON")->required();
    c->callback([o] { run_whittle(*o); });
  }
  {
    auto o = std::make_shared<AcdOpts>();
    CLI::App* c = app.add_subcommand("fit-acd", "conditional-duration benchmark fit");
    c->add_option("--data", o->data, "duration CSV")->required();
    c->add_option("--q", o->q, "number of duration lags")->capture_default_str();
    c->add_option("--p", o->p, "number of psi lags")->capture_default_str();
    c->add_option("--innovation", o->innovation, "exponential or weibull")->capture_default_str();
    c->add_option("--starts", o->acd.starts, "multistart budget")->capture_default_str();
    c->add_option("--seed", o->acd.seed, "multistart seed")->capture_default_str();
    c->add_option("--out", o->out, "fit report JSON")->required();
    c->callback([o] { run_acd(*o); });
  }
  {
    auto o = std::make_shared<LmsdOpts>();
    CLI::App* c =
        app.add_subcommand("fit-lmsd", "long-memory stochastic duration fit on log durations");
    c->add_option("--data", o->data, "duration CSV")->required();
    c->add_option("--innovation", o->innovation, "exponential or weibull")->capture_default_str();
    c->add_option("--starts", o->wh.starts, "multistart budget")->capture_default_str();
    c->add_option("--seed", o->wh.seed, "multistart seed")->capture_default_str();
    c->add_option("--out", o->out, "fit report JSON")->required();
    c->callback([o] { run_lmsd(*o); });
  }
}

}  // namespace msmdcli
