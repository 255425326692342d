#pragma once
// Tick data pipeline: session filtering, price-move thinning into durations,
// weekday-specific diurnal adjustment, and summary statistics.

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace msmd {

struct TickSeries {
  std::vector<double> timestamp;  // epoch seconds, nondecreasing
  std::vector<double> price;
};

// header "timestamp,price"
TickSeries read_tick_csv(const std::string& path);

struct SessionConfig {
  double open_seconds = 7.0 * 3600 + 20.0 * 60;  // 07:20
  double close_seconds = 14.0 * 3600;            // 14:00
};

struct PriceDurations {
  std::vector<double> duration;
  std::vector<double> start_ts;  // epoch time at which each spell started
};

// Thin ticks to times at which the price has moved by at least threshold from
// the reference price, per day. The reference starts at the day's first trade
// inside the session and moves to the triggering price at each event; spells
// never span days. Ticks sharing a timestamp collapse to the last one.
PriceDurations thin_to_price_durations(const TickSeries& ticks, double threshold,
                                       const SessionConfig& session = {});

// Diurnal pattern per weekday (0 = Sunday), kernel-regressed on the
// time of day at which each spell starts and tabulated on a regular grid.
struct SeasonalProfile {
  double grid_origin = 0.0;
  double grid_step = 60.0;
  std::array<std::vector<double>, 7> value;
  double fallback = 1.0;  // used for weekdays without data

  double evaluate(int weekday, double time_of_day) const;  // linear interpolation
};

// bandwidth 0 selects max(900 s, Silverman's rule) per weekday
SeasonalProfile fit_seasonal(const PriceDurations& d, const SessionConfig& session = {},
                             double grid_step = 60.0, double bandwidth = 0.0);

// raw duration divided by the profile at its start time
std::vector<double> seasonally_adjust(const PriceDurations& d, const SeasonalProfile& s);

struct SummaryStats {
  std::size_t n = 0;
  double mean = 0.0;
  double median = 0.0;
  double min = 0.0;
  double max = 0.0;
  double sd = 0.0;
  double dispersion = 0.0;  // sd / mean
  double skewness = 0.0;
  double kurtosis = 0.0;    // raw, 3 under normality
};

SummaryStats describe(std::span<const double> x);

struct DurationSummary {
  SummaryStats levels;
  SummaryStats logs;
};

DurationSummary describe_durations(std::span<const double> x);

int weekday_of(double epoch_seconds);  // 0 = Sunday

}  // namespace msmd
