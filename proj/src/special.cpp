#include "mlconv/special.hpp"

#include <cmath>
#include <limits>

namespace mlconv {

double log_gamma(double x) {
#if defined(__GLIBC__) || defined(__linux__)
  int sign = 0;
  return ::lgamma_r(x, &sign);
#else
  return std::lgamma(x);
#endif
}

double sin_pi(double x) {
  if (!std::isfinite(x)) return std::numeric_limits<double>::quiet_NaN();
  double r = std::remainder(x, 2.0);  // r in [-1, 1], exact
  if (r == 0.0 || r == 1.0 || r == -1.0) return 0.0;
  // fold into |r| <= 1/2 so the sin argument stays well away from pi
  if (r > 0.5)
    r = 1.0 - r;
  else if (r < -0.5)
    r = -1.0 - r;
  return std::sin(M_PI * r);
}

double cos_pi(double x) {
  if (!std::isfinite(x)) return std::numeric_limits<double>::quiet_NaN();
  double r = std::abs(std::remainder(x, 2.0));
  if (r == 0.5) return 0.0;
  double sign = 1.0;
  if (r > 0.5) {
    r = 1.0 - r;
    sign = -1.0;
  }
  return sign * std::cos(M_PI * r);
}

double recip_gamma(double x) {
  if (x >= 0.5) return std::exp(-log_gamma(x));
  if (x <= 0.0 && x == std::floor(x)) return 0.0;  // poles of Gamma
  // reflection: 1/Gamma(x) = sin(pi x) Gamma(1-x) / pi, in log space
  const double s = sin_pi(x);
  const double mag = std::log(std::abs(s)) - std::log(M_PI) + log_gamma(1.0 - x);
  return std::copysign(std::exp(mag), s);
}

double power_density(const PowerExponent& nu, double t) {
  if (!(t > 0.0)) throw std::domain_error("power_density: requires t > 0");
  if (nu.is_dirac())
    throw std::domain_error("power_density: nu = 0 is the Dirac unit, not a pointwise density");
  return std::exp((nu.nu - 1.0) * std::log(t) - log_gamma(nu.nu));
}

double power_density_ac(double nu, double t) {
  const double rg = recip_gamma(nu);
  if (rg == 0.0) return 0.0;
  const double mag = (nu - 1.0) * std::log(t) + std::log(std::abs(rg));
  return std::copysign(std::exp(mag), rg);
}

double beta_density(double a, double b, double u) {
  if (!(a > 0.0) || !(b > 0.0))
    throw std::invalid_argument("beta_density: requires a > 0 and b > 0");
  if (!(u > 0.0 && u < 1.0)) throw std::domain_error("beta_density: requires u in (0,1)");
  const double lg = log_gamma(a + b) - log_gamma(a) - log_gamma(b);
  return std::exp(lg + (a - 1.0) * std::log(u) + (b - 1.0) * std::log1p(-u));
}

}  // namespace mlconv
