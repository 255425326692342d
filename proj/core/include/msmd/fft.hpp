#pragma once
// Thin FFTW wrappers. Plans are cached per length behind a mutex since FFTW
// planning is slow and not thread safe, while execution on fresh buffers is.

#include <complex>
#include <vector>

namespace msmd {

// forward DFT of a real series, bins 0..n/2
std::vector<std::complex<double>> real_fft(const std::vector<double>& x);

// circular convolution of equal-length real arrays
std::vector<double> circular_convolution(const std::vector<double>& a,
                                         const std::vector<double>& b);

}  // namespace msmd
