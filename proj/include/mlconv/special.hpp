#pragma once

#include <stdexcept>

namespace mlconv {

// Exponent of the power kernel rho_nu(t) = t^{nu-1}/Gamma(nu). nu = 0 stands
// for the Dirac unit and is never evaluated pointwise; callers branch on it.
struct PowerExponent {
  double nu = 0.0;

  explicit PowerExponent(double nu_) : nu(nu_) {
    if (!(nu >= 0.0)) throw std::invalid_argument("PowerExponent: requires nu >= 0");
  }
  bool is_dirac() const { return nu == 0.0; }
};

// log |Gamma(x)|, thread-safe.
double log_gamma(double x);

// sin(pi x) / cos(pi x) with exact zeros at (half-)integers.
double sin_pi(double x);
double cos_pi(double x);

// 1/Gamma(x) on the whole real line; exactly 0 at nonpositive integers.
double recip_gamma(double x);

// rho_nu(t) = t^{nu-1}/Gamma(nu) for nu > 0, t > 0.
double power_density(const PowerExponent& nu, double t);

// Analytic continuation t^{nu-1} * recip_gamma(nu), defined for any real nu;
// this is what the reciprocal-gamma series terms use.
double power_density_ac(double nu, double t);

// Beta(a,b) density at u in (0,1).
double beta_density(double a, double b, double u);

}  // namespace mlconv
