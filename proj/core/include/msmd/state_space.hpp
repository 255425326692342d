#pragma once
// Exact filtering for binomial multipliers. States are bitmasks over the k
// components (bit j-1 holds component j), the transition matrix factorizes
// over components, and one predict step runs k in-place 2x2 sweeps in
// O(k 2^k). The state count is capped at k <= 12.

#include <Eigen/Core>

#include <cstddef>
#include <span>
#include <vector>

#include "msmd/params.hpp"

namespace msmd {

struct StateSpace {
  int k = 0;
  std::vector<double> gamma;  // switching probabilities, slowest first
  Eigen::VectorXd products;   // multiplier product for each of the 2^k states
};

StateSpace make_state_space(const MsmdParams& p);

// probs <- probs P (the factor matrices are symmetric, so P' = P)
void predict_step(const StateSpace& ss, Eigen::VectorXd& probs);

struct FilterResult {
  double loglik = 0.0;
  Eigen::VectorXd filtered;  // state probabilities given the full sample
};

FilterResult filter_loglik(const MsmdParams& p, std::span<const double> x);

// filtered state probabilities after observing x[0..idx] for each idx in
// capture_after (strictly increasing)
std::vector<Eigen::VectorXd> filter_capture(const MsmdParams& p, std::span<const double> x,
                                            std::span<const std::size_t> capture_after);

// E(X_{n+h} | filtered state probabilities) for h = 1..h_max
std::vector<double> optimal_forecast(const MsmdParams& p, const Eigen::VectorXd& filtered,
                                     int h_max);

}  // namespace msmd
