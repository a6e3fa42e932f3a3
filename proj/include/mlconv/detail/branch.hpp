#pragma once

#include <cmath>
#include <complex>

#include "mlconv/special.hpp"

namespace mlconv::detail {

// e^{-i pi a} as the limit from below the real axis; never computed through
// pow(-1 + 0i, a), which would land on the wrong side of the branch cut.
inline std::complex<double> cis_neg_pi(double a) { return {cos_pi(a), -sin_pi(a)}; }

inline std::complex<double> cis_pos_pi(double a) { return {cos_pi(a), sin_pi(a)}; }

// (e^{-i pi} u)^p = exp(p (ln u - i pi)) for u > 0, principal branch.
inline std::complex<double> neg_axis_pow(double u, double p) {
  return std::exp(p * std::log(u)) * cis_neg_pi(p);
}

// Signed Im-kernel shared by the q-kernel forms and the large-argument
// Mittag-Leffler path:
//   (1/pi) Im[ (e^{-i pi} u)^{num_exp} / (y + e^{-i pi alpha} u^alpha)^{den_exp} ]
inline double im_ratio_kernel(double alpha, double num_exp, double den_exp, double y, double u) {
  const std::complex<double> num = neg_axis_pow(u, num_exp);
  const std::complex<double> base = y + cis_neg_pi(alpha) * std::pow(u, alpha);
  const std::complex<double> den = std::pow(base, den_exp);
  return (num / den).imag() / M_PI;
}

}  // namespace mlconv::detail
