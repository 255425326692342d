#pragma once
// Levinson recursion for symmetric positive definite Toeplitz systems and the
// h-step linear prediction weights built on it. Weight j multiplies the
// mean-deviation of the observation j steps back from the forecast origin.

#include <functional>
#include <span>
#include <vector>

namespace msmd {

// autocovariance at lag h >= 0
using AcvProvider = std::function<double(int)>;

// solve T x = rhs where T has first row r[0..n-1]; O(n^2)
std::vector<double> toeplitz_solve(std::span<const double> r, std::span<const double> rhs);

// weights of the best linear h-step predictor from an n-long window
std::vector<double> linear_weights(const AcvProvider& acv, int window, int h);

// apply weights at origin (last index of the window) in mean-deviation form
double linear_forecast(std::span<const double> weights, std::span<const double> x,
                       std::size_t origin, double mu);

}  // namespace msmd
