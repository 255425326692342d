#include <cmath>
#include <fstream>
#include <variant>

#include "commands.hpp"
#include "msmd/acd.hpp"
#include "msmd/io_json.hpp"
#include "msmd/lmsd.hpp"
#include "msmd/series.hpp"
#include "msmd/state_space.hpp"

namespace msmdcli {

namespace {

// accepts a bare model document or a fit report with a "model" member
msmd::DurationModel load_model_or_report(const std::string& text, const CliContext& ctx) {
  std::ifstream in(text);
  if (in) {
    json doc = json::parse(in, nullptr, false);
    if (!doc.is_discarded() && doc.contains("model") && doc["model"].is_object())
      return msmd::duration_model_from_json(doc["model"].dump());
  }
  return resolve_model(text, ctx);
}

struct Opts {
  std::string data, model, out;
  int h_max = 20;
  std::size_t origin = 0;  // 0 means the end of the sample
};

std::vector<double> step_forecasts(const msmd::DurationModel& m, std::span<const double> hist,
                                   int h_max) {
  return std::visit(
      [&](const auto& p) -> std::vector<double> {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, msmd::MsmdParams>) {
          const std::size_t cap[] = {hist.size() - 1};
          const std::vector<Eigen::VectorXd> st = msmd::filter_capture(p, hist, cap);
          return msmd::optimal_forecast(p, st[0], h_max);
        } else if constexpr (std::is_same_v<T, msmd::AcdParams>) {
          return msmd::forecast_acd(p, hist, h_max);
        } else if constexpr (std::is_same_v<T, msmd::LmsdParams>) {
          std::vector<double> logs(hist.size());
          for (std::size_t i = 0; i < hist.size(); ++i) logs[i] = std::log(hist[i]);
          msmd::LmsdForecaster fc(p);
          fc.filter(logs);
          return fc.forecast_levels(h_max);
        } else {
          return std::vector<double>(h_max, p.mean);
        }
      },
      m);
}

void run(const CliContext& ctx, const Opts& o) {
  const auto t0 = Clock::now();
  if (o.h_max < 1) throw UsageError("--h-max must be positive");

  const msmd::DurationSeries s = msmd::read_duration_csv(o.data);
  const std::size_t origin = o.origin == 0 ? s.size() : o.origin;
  if (origin < 1 || origin > s.size())
    throw UsageError("--origin must lie in [1, n], n = " + std::to_string(s.size()));

  const msmd::DurationModel m = load_model_or_report(o.model, ctx);
  const std::vector<double> f =
      step_forecasts(m, std::span<const double>(s.values).first(origin), o.h_max);

  std::string csv = "h,step,cumulative\n";
  char buf[80];
  double run_sum = 0.0;
  for (int h = 1; h <= o.h_max; ++h) {
    run_sum += f[h - 1];
    std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g\n", h, f[h - 1], run_sum);
    csv += buf;
  }
  write_text(o.out, csv);

  json config{{"command", "forecast"}, {"data", o.data},  {"model", o.model},
              {"h_max", o.h_max},      {"origin", origin}, {"out", o.out}};
  write_sidecar(o.out, config, t0);
}

}  // namespace

void setup_forecast(CLI::App& app, CliContext& ctx) {
  auto o = std::make_shared<Opts>();
  CLI::App* c = app.add_subcommand(
      "forecast", "multi-step duration forecasts from a fitted model at one origin");
  c->add_option("--data", o->data, "duration CSV with the conditioning history")->required();
  c->add_option("--model", o->model, "model JSON, fit report JSON, or preset name")->required();
  c->add_option("--h-max", o->h_max, "longest horizon")->capture_default_str();
  c->add_option("--origin", o->origin, "forecast origin, 1-based (default: end of sample)");
  c->add_option("--out", o->out, "output CSV h,step,cumulative")->required();
  c->callback([&ctx, o] { run(ctx, *o); });
}

}  // namespace msmdcli
