#pragma once
// Full model parameter set and the geometric ladder of switching
// probabilities gamma_j = 1 - (1 - gamma_k)^(b^(j-k)), j = 1..k.

#include <vector>

#include "msmd/laws.hpp"

namespace msmd {

struct MsmdParams {
  int k = 8;             // number of multiplier components
  double b = 2.0;        // ladder growth factor, > 1
  double gamma_k = 0.5;  // switching probability of the fastest component
  double psi_bar = 1.0;  // unconditional mean duration
  MultiplierSpec multiplier;
  InnovationSpec innovation;

  void validate() const;
};

// gamma_1..gamma_k; gamma_k is returned exactly as given.
std::vector<double> switching_probabilities(const MsmdParams& p);

}  // namespace msmd
