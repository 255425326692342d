#pragma once
// Path simulation. Components start from their stationary law and are
// independently redrawn each step with probability gamma_j; a redraw samples
// the full support, so a binomial component may land on its current value.

#include <cstdint>
#include <vector>

#include "msmd/params.hpp"
#include "msmd/series.hpp"

namespace msmd {

struct SimulationResult {
  DurationSeries durations;
  // multipliers[j][i] is component j+1 at step i; empty unless requested
  std::vector<std::vector<double>> multipliers;
};

SimulationResult simulate(const MsmdParams& p, std::size_t n, std::uint64_t seed,
                          bool keep_states = false);

// durations only, same draws as simulate() with keep_states = false
std::vector<double> simulate_durations(const MsmdParams& p, std::size_t n,
                                       std::uint64_t seed);

}  // namespace msmd
