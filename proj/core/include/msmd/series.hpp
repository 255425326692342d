#pragma once
// Duration series container and its CSV format:
//   index,duration[,start_ts]
// start_ts is the event start time in epoch seconds and is optional.

#include <cstddef>
#include <string>
#include <vector>

namespace msmd {

struct DurationSeries {
  std::vector<double> values;
  std::vector<double> start_ts;  // empty or same length as values

  std::size_t size() const { return values.size(); }
  bool has_timestamps() const { return !start_ts.empty(); }
  void validate() const;
};

DurationSeries read_duration_csv(const std::string& path);
void write_duration_csv(const DurationSeries& s, const std::string& path);

}  // namespace msmd
