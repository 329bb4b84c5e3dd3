#pragma once

#include <cmath>

namespace sunsde {

inline double normal_pdf(double z) {
  return std::exp(-0.5 * z * z) / 2.5066282746310005024;
}

inline double normal_cdf(double z) { return 0.5 * std::erfc(-z / 1.4142135623730950488); }

/// Inverse standard normal CDF (Acklam's approximation polished by one Newton
/// step; better than 1e-12 over (0,1)).
double normal_quantile(double p);

}  // namespace sunsde
