#include <cstdio>

#include "commands.hpp"
#include "msmd/pipeline.hpp"
#include "msmd/series.hpp"

namespace msmdcli {

namespace {

struct Opts {
  std::string ticks, out, summary_out;
  double threshold = 0.0;
  std::string open = "07:20";
  std::string close = "14:00";
  bool adjust = false;
  double grid_step = 60.0;
  double bandwidth = 0.0;
};

json stats_to_json(const msmd::SummaryStats& s) {
  return json{{"n", s.n},           {"mean", s.mean},         {"median", s.median},
              {"min", s.min},       {"max", s.max},           {"sd", s.sd},
              {"dispersion", s.dispersion}, {"skewness", s.skewness}, {"kurtosis", s.kurtosis}};
}

void run(const Opts& o) {
  const auto t0 = Clock::now();
  if (!(o.threshold > 0.0)) throw UsageError("--threshold must be positive");

  msmd::SessionConfig session;
  session.open_seconds = parse_clock_time(o.open);
  session.close_seconds = parse_clock_time(o.close);
  if (!(session.open_seconds < session.close_seconds))
    throw UsageError("session open must precede close");

  const msmd::TickSeries ticks = msmd::read_tick_csv(o.ticks);
  const msmd::PriceDurations thinned =
      msmd::thin_to_price_durations(ticks, o.threshold, session);
  if (thinned.duration.empty()) throw std::runtime_error("no price-move events in session");

  msmd::DurationSeries out_series;
  out_series.start_ts = thinned.start_ts;
  if (o.adjust) {
    const msmd::SeasonalProfile prof =
        msmd::fit_seasonal(thinned, session, o.grid_step, o.bandwidth);
    out_series.values = msmd::seasonally_adjust(thinned, prof);
  } else {
    out_series.values = thinned.duration;
  }
  msmd::write_duration_csv(out_series, o.out);

  const msmd::DurationSummary summary = msmd::describe_durations(out_series.values);
  std::printf("events = %zu  mean = %.4g  dispersion = %.3f  min/max = %.4g / %.4g\n",
              summary.levels.n, summary.levels.mean, summary.levels.dispersion,
              summary.levels.min, summary.levels.max);
  if (!o.summary_out.empty()) {
    json doc{{"levels", stats_to_json(summary.levels)}, {"logs", stats_to_json(summary.logs)}};
    write_text(o.summary_out, doc.dump(2) + "\n");
  }

  json config{{"command", "ingest"}, {"ticks", o.ticks},     {"threshold", o.threshold},
              {"open", o.open},      {"close", o.close},     {"adjust", o.adjust},
              {"grid_step", o.grid_step}, {"bandwidth", o.bandwidth}, {"out", o.out}};
  write_sidecar(o.out, config, t0);
}

}  // namespace

void setup_ingest(CLI::App& app, CliContext&) {
  auto o = std::make_shared<Opts>();
  CLI::App* c = app.add_subcommand(
      "ingest", "thin a timestamp,price tick CSV into price-move durations, optionally "
                "removing the weekday diurnal pattern");
  c->add_option("--ticks", o->ticks, "input CSV timestamp,price (ISO-8601 or epoch seconds)")
      ->required();
  c->add_option("--threshold", o->threshold, "absolute price move that defines an event")
      ->required();
  c->add_option("--open", o->open, "session open HH:MM")->capture_default_str();
  c->add_option("--close", o->close, "session close HH:MM")->capture_default_str();
  c->add_flag("--adjust", o->adjust, "divide durations by the fitted diurnal profile");
  c->add_option("--grid-step", o->grid_step, "profile grid step in seconds")
      ->capture_default_str();
  c->add_option("--bandwidth", o->bandwidth, "kernel bandwidth in seconds, 0 for automatic")
      ->capture_default_str();
  c->add_option("--summary", o->summary_out, "also write summary statistics JSON");
  c->add_option("--out", o->out, "output duration CSV")->required();
  c->callback([o] { run(*o); });
}

}  // namespace msmdcli
