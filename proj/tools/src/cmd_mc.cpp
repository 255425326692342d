#include <cstdio>
#include <variant>

#include "commands.hpp"
#include "msmd/io_json.hpp"
#include "msmd/mc.hpp"

namespace msmdcli {

namespace {

struct Opts {
  std::string mode;
  std::string truth;  // model JSON or preset; empty selects a mode default
  std::size_t n = 10000;
  int replications = 100;
  std::uint64_t seed = 1;
  int bandwidth = 0;
  bool refit = false;
  std::size_t t_len = 2000;
  int starts = 0;  // 0 keeps the estimator default
  std::string out;
};

msmd::MsmdParams msmd_truth(const Opts& o, const CliContext& ctx, const char* fallback) {
  const msmd::DurationModel m = resolve_model(o.truth.empty() ? fallback : o.truth, ctx);
  if (!std::holds_alternative<msmd::MsmdParams>(m))
    throw UsageError("--truth must be a switching-multiplier model for mode " + o.mode);
  return std::get<msmd::MsmdParams>(m);
}

void write_table(const msmd::McTable& tab, const std::string& out) {
  const Eigen::VectorXd mean = tab.mean(), sd = tab.sd(), se = tab.se_mean();
  std::string csv = "parameter,truth,mean,sd,se_mean,bias\n";
  char buf[160];
  for (std::size_t i = 0; i < tab.names.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%s,%.8g,%.8g,%.8g,%.8g,%.8g\n", tab.names[i].c_str(),
                  tab.truth(i), mean(i), sd(i), se(i), mean(i) - tab.truth(i));
    csv += buf;
  }
  write_text(out, csv);
  std::printf("%-10s %10s %10s %10s %10s\n", "parameter", "truth", "mean", "sd", "se_mean");
  for (std::size_t i = 0; i < tab.names.size(); ++i)
    std::printf("%-10s %10.4f %10.4f %10.4f %10.4f\n", tab.names[i].c_str(), tab.truth(i),
                mean(i), sd(i), se(i));
  int conv = 0;
  for (char c : tab.converged) conv += c;
  std::printf("replications = %d  converged = %d  n = %zu  elapsed = %.1fs\n",
              static_cast<int>(tab.estimates.rows()), conv, tab.n, tab.elapsed_seconds);
}

void run(const CliContext& ctx, const Opts& o) {
  const auto t0 = Clock::now();
  if (o.replications < 1) throw UsageError("--replications must be positive");

  json config{{"command", "mc"},       {"mode", o.mode},          {"truth", o.truth},
              {"n", o.n},              {"replications", o.replications},
              {"seed", o.seed},        {"bandwidth", o.bandwidth},
              {"refit", o.refit},      {"t_len", o.t_len},
              {"threads", ctx.threads}, {"out", o.out}};

  if (o.mode == "whittle") {
    msmd::McOptions mo;
    mo.n = o.n;
    mo.replications = o.replications;
    mo.seed = o.seed;
    mo.threads = ctx.threads;
    if (o.starts > 0) mo.whittle.starts = o.starts;
    write_table(msmd::mc_whittle(msmd_truth(o, ctx, "mc-k8-binomial"), mo), o.out);
  } else if (o.mode == "mle") {
    const msmd::MsmdParams truth = msmd_truth(o, ctx, "mc-k6-binomial");
    if (truth.multiplier.law != msmd::MultiplierLaw::binomial)
      throw UsageError(
          "likelihood mode needs binomial multipliers: the exact filter has no finite "
          "state space under the log-normal law");
    msmd::McOptions mo;
    mo.n = o.n;
    mo.replications = o.replications;
    mo.seed = o.seed;
    mo.threads = ctx.threads;
    if (o.starts > 0) mo.mle.starts = o.starts;
    write_table(msmd::mc_mle(truth, mo), o.out);
  } else if (o.mode == "gof-size") {
    const msmd::GofSize gs = msmd::mc_gof_size(msmd_truth(o, ctx, "mc-k8-binomial"), o.n,
                                               o.replications, o.seed, o.bandwidth, o.refit,
                                               ctx.threads);
    std::string csv = "nominal,rate,rejections,replications\n";
    char buf[96];
    std::snprintf(buf, sizeof buf, "0.05,%.6g,%d,%d\n", gs.rate5(), gs.reject5, gs.replications);
    csv += buf;
    std::snprintf(buf, sizeof buf, "0.10,%.6g,%d,%d\n", gs.rate10(), gs.reject10,
                  gs.replications);
    csv += buf;
    write_text(o.out, csv);
    std::printf("rejection at 5%% nominal: %.1f%%   at 10%%: %.1f%%   (R = %d, %.1fs)\n",
                100 * gs.rate5(), 100 * gs.rate10(), gs.replications, gs.elapsed_seconds);
  } else if (o.mode == "dm-size") {
    const msmd::DmSize ds = msmd::mc_dm_size(o.t_len, o.replications, o.seed, o.bandwidth);
    std::string csv = "nominal,rate,rejections,replications\n";
    char buf[96];
    std::snprintf(buf, sizeof buf, "0.05,%.6g,%d,%d\n", ds.rate5(), ds.reject5, ds.replications);
    csv += buf;
    write_text(o.out, csv);
    std::printf("rejection at 5%% nominal: %.1f%%   (R = %d)\n", 100 * ds.rate5(),
                ds.replications);
  } else {
    throw UsageError("--mode must be whittle, mle, gof-size, or dm-size");
  }

  write_sidecar(o.out, config, t0);
}

}  // namespace

void setup_mc(CLI::App& app, CliContext& ctx) {
  auto o = std::make_shared<Opts>();
  CLI::App* c = app.add_subcommand(
      "mc", "Monte Carlo harnesses: estimator replication tables and test sizes");
  c->add_option("--mode", o->mode, "whittle, mle, gof-size, or dm-size")->required();
  c->add_option("--truth", o->truth, "true model JSON or preset (default depends on mode)");
  c->add_option("--n", o->n, "sample size per replication")->capture_default_str();
  c->add_option("--replications", o->replications, "replication count")->capture_default_str();
  c->add_option("--seed", o->seed, "base seed; replication r uses seed + r")
      ->capture_default_str();
  c->add_option("--bandwidth", o->bandwidth,
                "gof smoothing lags or comparison-test bandwidth, 0 for the default")
      ->capture_default_str();
  c->add_flag("--refit", o->refit, "re-estimate the null spectrum on every gof replication");
  c->add_option("--t-len", o->t_len, "differential length for dm-size")->capture_default_str();
  c->add_option("--starts", o->starts, "multistart budget override for the estimator");
  c->add_option("--out", o->out, "output CSV")->required();
  c->callback([&ctx, o] { run(ctx, *o); });
}

}  // namespace msmdcli
