#pragma once
// Periodogram on the Fourier grid omega_i = 2 pi i / n, i = 1..n-1. The zero
// frequency (sample mean) is excluded throughout; by construction
// (2 pi / n) * sum(ordinates) equals the biased sample variance.

#include <cstddef>
#include <span>
#include <vector>

namespace msmd {

struct Periodogram {
  std::size_t n = 0;             // length of the underlying sample
  std::vector<double> omega;     // n-1 frequencies
  std::vector<double> ordinates; // I(omega_i)
  double sample_variance = 0.0;  // biased (1/n) variance of the sample
};

Periodogram periodogram(std::span<const double> x);

}  // namespace msmd
