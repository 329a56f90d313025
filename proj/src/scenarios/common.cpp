#include "common.hpp"

#include <algorithm>
#include <cmath>

namespace extsym::detail {

double function_mismatch(const ExpPoly& a, const ExpPoly& b) {
  const auto sa = as_single_exponential(a);
  const auto sb = as_single_exponential(b);
  if (sa && sb) {
    double scale = 1.0;
    for (const auto& k : sb->kappa) scale = std::max(scale, std::abs(k));
    return std::max(max_abs_diff(sa->kappa, sb->kappa) / scale,
                    std::abs(sa->coeff - sb->coeff) / std::max(1.0, std::abs(sb->coeff)));
  }
  const double scale = std::max(a.max_coeff(), b.max_coeff());
  return scale > 0.0 ? sub(a, b).max_coeff() / scale : 0.0;
}

double halving_ratio_error(const double* dev, int count) {
  // An identically vanishing deviation (e.g. n along the boost) meets the
  // limit exactly; the ratio would only measure rounding noise.
  if (*std::max_element(dev, dev + count) <= 1e-12) return 0.0;
  double worst = 0.0;
  for (int i = 0; i + 1 < count; ++i) {
    const double ratio = dev[i] / dev[i + 1];
    worst = std::max(worst, std::abs(ratio / 2.0 - 1.0));
  }
  return worst;
}

double relative_sum_residual(const std::vector<ExpPoly>& parts) {
  double scale = 0.0;
  ExpPoly total;
  for (const auto& p : parts) {
    scale = std::max(scale, p.max_coeff());
    total = total + p;
  }
  return scale > 0.0 ? total.max_coeff() / scale : 0.0;
}

std::string vec_key(const std::string& base, int i) { return base + "_" + std::to_string(i); }

}  // namespace extsym::detail
