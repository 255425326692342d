#include "msmd/series.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace msmd {

void DurationSeries::validate() const {
  if (!start_ts.empty() && start_ts.size() != values.size())
    throw std::invalid_argument("duration series: timestamp length mismatch");
  for (double v : values)
    if (!(v > 0.0)) throw std::invalid_argument("duration series: nonpositive duration");
}

namespace {
std::string strip(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}
}  // namespace

DurationSeries read_duration_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error(path + ": empty file");
  std::string header = strip(line);
  bool with_ts;
  if (header == "index,duration")
    with_ts = false;
  else if (header == "index,duration,start_ts")
    with_ts = true;
  else
    throw std::runtime_error(path + ": unexpected header '" + header + "'");

  DurationSeries s;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = strip(line);
    if (t.empty()) continue;
    std::istringstream row(t);
    std::string cell;
    double cols[3];
    int got = 0;
    while (std::getline(row, cell, ',') && got < 3) {
      try {
        std::size_t used = 0;
        cols[got] = std::stod(cell, &used);
        if (used != strip(cell).size() && used != cell.size())
          throw std::invalid_argument("trailing characters");
      } catch (const std::exception&) {
        throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                 ": bad numeric field '" + cell + "'");
      }
      ++got;
    }
    int want = with_ts ? 3 : 2;
    if (got != want)
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected " +
                               std::to_string(want) + " columns");
    s.values.push_back(cols[1]);
    if (with_ts) s.start_ts.push_back(cols[2]);
  }
  s.validate();
  return s;
}

void write_duration_csv(const DurationSeries& s, const std::string& path) {
  s.validate();
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  char buf[96];
  out << (s.has_timestamps() ? "index,duration,start_ts\n" : "index,duration\n");
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    if (s.has_timestamps())
      std::snprintf(buf, sizeof buf, "%zu,%.12g,%.6f\n", i, s.values[i], s.start_ts[i]);
    else
      std::snprintf(buf, sizeof buf, "%zu,%.12g\n", i, s.values[i]);
    out << buf;
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace msmd
