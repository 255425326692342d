#include "msmd/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "msmd/stats.hpp"

namespace msmd {

namespace {
constexpr double kDay = 86400.0;

// epoch seconds, or ISO-8601 "YYYY-MM-DD[T ]HH:MM:SS[.fff][Z]" taken as UTC
double parse_timestamp(const std::string& s) {
  int y, mo, dd, hh, mi;
  double sec;
  char sep;
  if (std::sscanf(s.c_str(), "%d-%d-%d%c%d:%d:%lf", &y, &mo, &dd, &sep, &hh, &mi, &sec) == 7 &&
      (sep == 'T' || sep == ' ')) {
    // days from civil date, valid for the whole Gregorian calendar
    const int yy = y - (mo <= 2);
    const int era = (yy >= 0 ? yy : yy - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(yy - era * 400);
    const unsigned doy = (153u * (mo + (mo > 2 ? -3 : 9)) + 2) / 5 + dd - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    const long days = static_cast<long>(era) * 146097 + static_cast<long>(doe) - 719468;
    return days * kDay + hh * 3600.0 + mi * 60.0 + sec;
  }
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  while (used < s.size() && (s[used] == ' ' || s[used] == '\r')) ++used;
  if (used != s.size()) throw std::invalid_argument("unrecognized timestamp: " + s);
  return v;
}
}

int weekday_of(double epoch_seconds) {
  const long day = static_cast<long>(std::floor(epoch_seconds / kDay));
  return static_cast<int>(((day + 4) % 7 + 7) % 7);  // epoch day 0 was a Thursday
}

TickSeries read_tick_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  TickSeries out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (lineno == 1 && line.rfind("timestamp", 0) == 0) continue;
    std::istringstream ss(line);
    std::string a, b;
    if (!std::getline(ss, a, ',') || !std::getline(ss, b)) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected timestamp,price");
    }
    try {
      out.timestamp.push_back(parse_timestamp(a));
      out.price.push_back(std::stod(b));
    } catch (const std::exception&) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": malformed field");
    }
  }
  for (std::size_t i = 1; i < out.timestamp.size(); ++i) {
    if (out.timestamp[i] < out.timestamp[i - 1])
      throw std::runtime_error(path + ": timestamps must be nondecreasing");
  }
  return out;
}

PriceDurations thin_to_price_durations(const TickSeries& ticks, double threshold,
                                       const SessionConfig& session) {
  if (!(threshold > 0.0)) throw std::invalid_argument("thinning threshold must be positive");
  if (ticks.timestamp.size() != ticks.price.size())
    throw std::invalid_argument("tick series: column lengths differ");

  PriceDurations out;
  const std::size_t n = ticks.timestamp.size();
  long cur_day = -1;
  double ref = 0.0, last_event = 0.0;
  bool open = false;

  for (std::size_t i = 0; i < n; ++i) {
    const double t = ticks.timestamp[i];
    const long day = static_cast<long>(std::floor(t / kDay));
    const double tod = t - day * kDay;
    if (tod < session.open_seconds || tod > session.close_seconds) continue;
    // same-timestamp ticks collapse to the last quote
    if (i + 1 < n && ticks.timestamp[i + 1] == t) continue;

    if (day != cur_day) {
      cur_day = day;
      ref = ticks.price[i];
      last_event = t;
      open = true;
      continue;
    }
    if (!open) continue;
    if (std::abs(ticks.price[i] - ref) >= threshold) {
      out.duration.push_back(t - last_event);
      out.start_ts.push_back(last_event);
      ref = ticks.price[i];
      last_event = t;
    }
  }
  return out;
}

double SeasonalProfile::evaluate(int weekday, double time_of_day) const {
  if (weekday < 0 || weekday > 6) throw std::invalid_argument("weekday out of range");
  const std::vector<double>& v = value[weekday];
  if (v.empty()) return fallback;
  double pos = (time_of_day - grid_origin) / grid_step;
  if (pos <= 0.0) return v.front();
  if (pos >= static_cast<double>(v.size() - 1)) return v.back();
  const std::size_t lo = static_cast<std::size_t>(pos);
  const double frac = pos - static_cast<double>(lo);
  return v[lo] * (1.0 - frac) + v[lo + 1] * frac;
}

SeasonalProfile fit_seasonal(const PriceDurations& d, const SessionConfig& session,
                             double grid_step, double bandwidth) {
  if (d.duration.size() != d.start_ts.size())
    throw std::invalid_argument("durations and start times differ in length");
  if (d.duration.empty()) throw std::invalid_argument("no durations to fit");

  SeasonalProfile prof;
  prof.grid_origin = session.open_seconds;
  prof.grid_step = grid_step;
  prof.fallback = mean(d.duration);

  std::array<std::vector<double>, 7> tod, dur;
  for (std::size_t i = 0; i < d.duration.size(); ++i) {
    const int w = weekday_of(d.start_ts[i]);
    tod[w].push_back(d.start_ts[i] - std::floor(d.start_ts[i] / kDay) * kDay);
    dur[w].push_back(d.duration[i]);
  }

  const std::size_t grid_n =
      static_cast<std::size_t>((session.close_seconds - session.open_seconds) / grid_step) + 1;

  for (int w = 0; w < 7; ++w) {
    const std::size_t m = tod[w].size();
    if (m == 0) continue;
    double h = bandwidth;
    if (h <= 0.0) {
      const double sd = stddev(tod[w]);
      const double iqr = quantile(tod[w], 0.75) - quantile(tod[w], 0.25);
      double spread = sd;
      if (iqr > 0.0) spread = std::min(spread, iqr / 1.34);
      h = std::max(900.0, 0.9 * spread * std::pow(static_cast<double>(m), -0.2));
    }
    std::vector<double>& v = prof.value[w];
    v.resize(grid_n);
    for (std::size_t g = 0; g < grid_n; ++g) {
      const double x0 = session.open_seconds + g * grid_step;
      double num = 0.0, den = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        const double u = (tod[w][i] - x0) / h;
        const double kern = std::exp(-0.5 * u * u);
        num += kern * dur[w][i];
        den += kern;
      }
      v[g] = den > 0.0 ? num / den : prof.fallback;
    }
  }
  return prof;
}

std::vector<double> seasonally_adjust(const PriceDurations& d, const SeasonalProfile& s) {
  std::vector<double> out(d.duration.size());
  for (std::size_t i = 0; i < d.duration.size(); ++i) {
    const double tod = d.start_ts[i] - std::floor(d.start_ts[i] / kDay) * kDay;
    const double sv = s.evaluate(weekday_of(d.start_ts[i]), tod);
    if (!(sv > 0.0)) throw std::runtime_error("seasonal profile is not positive");
    out[i] = d.duration[i] / sv;
  }
  return out;
}

SummaryStats describe(std::span<const double> x) {
  if (x.empty()) throw std::invalid_argument("describe: empty sample");
  SummaryStats s;
  s.n = x.size();
  s.mean = mean(x);
  s.median = median(x);
  s.min = *std::min_element(x.begin(), x.end());
  s.max = *std::max_element(x.begin(), x.end());
  s.sd = stddev(x);
  s.dispersion = s.mean != 0.0 ? s.sd / s.mean : 0.0;
  s.skewness = skewness(x);
  s.kurtosis = kurtosis(x);
  return s;
}

DurationSummary describe_durations(std::span<const double> x) {
  std::vector<double> logs;
  logs.reserve(x.size());
  for (double v : x) {
    if (!(v > 0.0)) throw std::invalid_argument("describe: durations must be positive");
    logs.push_back(std::log(v));
  }
  return {describe(x), describe(logs)};
}

}  // namespace msmd
