#include <variant>

#include "commands.hpp"
#include "msmd/io_json.hpp"
#include "msmd/series.hpp"
#include "msmd/simulate.hpp"

namespace msmdcli {

namespace {

struct Opts {
  std::string model;
  std::size_t n = 1000;
  std::uint64_t seed = 1;
  double mean = 0.0;  // 0 keeps the model's own mean
  std::string out;
  std::string states_out;
};

void run(const CliContext& ctx, const Opts& o) {
  const auto t0 = Clock::now();
  if (o.n == 0) throw UsageError("--n must be positive");

  msmd::DurationModel m = resolve_model(o.model, ctx);
  if (o.mean > 0.0) m = msmd::rescale_mean(m, o.mean);
  if (!o.states_out.empty() && !std::holds_alternative<msmd::MsmdParams>(m))
    throw UsageError("--states needs a switching-multiplier model");

  msmd::DurationSeries series;
  if (!o.states_out.empty()) {
    const auto& p = std::get<msmd::MsmdParams>(m);
    msmd::SimulationResult sim = msmd::simulate(p, o.n, o.seed, true);
    series = std::move(sim.durations);

    std::string csv = "index";
    for (int j = 1; j <= p.k; ++j) csv += ",m" + std::to_string(j);
    csv += "\n";
    char buf[32];
    for (std::size_t i = 0; i < o.n; ++i) {
      csv += std::to_string(i);
      for (int j = 0; j < p.k; ++j) {
        std::snprintf(buf, sizeof buf, ",%.17g", sim.multipliers[j][i]);
        csv += buf;
      }
      csv += "\n";
    }
    write_text(o.states_out, csv);
  } else {
    series.values = msmd::simulate_durations_of(m, o.n, o.seed);
  }
  msmd::write_duration_csv(series, o.out);

  json config{{"command", "simulate"}, {"model", json::parse(msmd::duration_model_to_json(m))},
              {"n", o.n},              {"seed", o.seed},
              {"out", o.out},          {"states", o.states_out}};
  write_sidecar(o.out, config, t0);
  if (!o.states_out.empty()) write_sidecar(o.states_out, config, t0);
}

}  // namespace

void setup_simulate(CLI::App& app, CliContext& ctx) {
  auto o = std::make_shared<Opts>();
  CLI::App* c = app.add_subcommand("simulate", "simulate a duration series to CSV");
  c->add_option("--model", o->model, "model JSON file or preset name")->required();
  c->add_option("--n", o->n, "number of durations")->capture_default_str();
  c->add_option("--seed", o->seed, "RNG seed")->capture_default_str();
  c->add_option("--mean", o->mean, "rescale the model to this mean duration");
  c->add_option("--out", o->out, "output duration CSV")->required();
  c->add_option("--states", o->states_out,
                "also write the hidden multiplier path to this CSV (switching models only)");
  c->callback([&ctx, o] { run(ctx, *o); });
}

}  // namespace msmdcli
