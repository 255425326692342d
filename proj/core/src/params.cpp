#include "msmd/params.hpp"

#include <cmath>
#include <stdexcept>

namespace msmd {

void MsmdParams::validate() const {
  if (k < 1) throw std::invalid_argument("params: need k >= 1");
  if (!(b > 1.0)) throw std::invalid_argument("params: need b > 1");
  if (!(gamma_k > 0.0 && gamma_k < 1.0))
    throw std::invalid_argument("params: need 0 < gamma_k < 1");
  if (!(psi_bar > 0.0)) throw std::invalid_argument("params: need psi_bar > 0");
  multiplier.validate();
  innovation.validate();
}

std::vector<double> switching_probabilities(const MsmdParams& p) {
  p.validate();
  std::vector<double> g(p.k);
  double l1mg = std::log1p(-p.gamma_k);
  for (int j = 1; j <= p.k; ++j) {
    if (j == p.k) {
      g[j - 1] = p.gamma_k;
    } else {
      // 1 - (1-gamma_k)^(b^(j-k)) through expm1/log1p; exponents can be ~b^-20
      double e = std::pow(p.b, static_cast<double>(j - p.k));
      g[j - 1] = -std::expm1(e * l1mg);
    }
  }
  return g;
}

}  // namespace msmd
