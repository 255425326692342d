#include "msmd/simulate.hpp"

#include "msmd/rng.hpp"

namespace msmd {

SimulationResult simulate(const MsmdParams& p, std::size_t n, std::uint64_t seed,
                          bool keep_states) {
  p.validate();
  auto gamma = switching_probabilities(p);
  auto g = make_rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  std::vector<double> m(p.k);
  for (int j = 0; j < p.k; ++j) m[j] = p.multiplier.sample(g);

  SimulationResult out;
  out.durations.values.resize(n);
  if (keep_states) out.multipliers.assign(p.k, std::vector<double>(n));

  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) {
      for (int j = 0; j < p.k; ++j)
        if (unif(g) < gamma[j]) m[j] = p.multiplier.sample(g);
    }
    double prod = 1.0;
    for (int j = 0; j < p.k; ++j) prod *= m[j];
    out.durations.values[i] = p.psi_bar * prod * p.innovation.sample(g);
    if (keep_states)
      for (int j = 0; j < p.k; ++j) out.multipliers[j][i] = m[j];
  }
  return out;
}

std::vector<double> simulate_durations(const MsmdParams& p, std::size_t n,
                                       std::uint64_t seed) {
  return simulate(p, n, seed, false).durations.values;
}

}  // namespace msmd
