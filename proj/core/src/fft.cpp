#include "msmd/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace msmd {

namespace {

std::mutex plan_mutex;

struct PlanPair {
  fftw_plan fwd = nullptr;
  fftw_plan inv = nullptr;
};

// FFTW_UNALIGNED lets the cached plan run on any caller buffer
PlanPair& plans_for(std::size_t n) {
  static std::map<std::size_t, PlanPair> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<double> re(n);
  std::vector<fftw_complex> cx(n / 2 + 1);
  PlanPair p;
  p.fwd = fftw_plan_dft_r2c_1d(static_cast<int>(n), re.data(), cx.data(),
                               FFTW_ESTIMATE | FFTW_UNALIGNED);
  p.inv = fftw_plan_dft_c2r_1d(static_cast<int>(n), cx.data(), re.data(),
                               FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (!p.fwd || !p.inv) throw std::runtime_error("fftw planning failed");
  return cache.emplace(n, p).first->second;
}

}  // namespace

std::vector<std::complex<double>> real_fft(const std::vector<double>& x) {
  if (x.empty()) throw std::invalid_argument("real_fft: empty input");
  std::size_t n = x.size();
  std::vector<double> in(x);
  std::vector<std::complex<double>> out(n / 2 + 1);
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(plan_mutex);
    plan = plans_for(n).fwd;
  }
  fftw_execute_dft_r2c(plan, in.data(), reinterpret_cast<fftw_complex*>(out.data()));
  return out;
}

std::vector<double> circular_convolution(const std::vector<double>& a,
                                         const std::vector<double>& b) {
  if (a.size() != b.size() || a.empty())
    throw std::invalid_argument("circular_convolution: need equal nonempty lengths");
  std::size_t n = a.size();
  auto fa = real_fft(a);
  auto fb = real_fft(b);
  for (std::size_t i = 0; i < fa.size(); ++i) fa[i] *= fb[i];
  std::vector<double> out(n);
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(plan_mutex);
    plan = plans_for(n).inv;
  }
  fftw_execute_dft_c2r(plan, reinterpret_cast<fftw_complex*>(fa.data()), out.data());
  for (double& v : out) v /= static_cast<double>(n);
  return out;
}

}  // namespace msmd
