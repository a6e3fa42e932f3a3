#pragma once

#include <complex>
#include <stdexcept>

#include "mlconv/quadrature.hpp"

namespace mlconv {

// Parameters of the Prabhakar function E^gamma_{alpha,beta}. alpha = 1 is
// admitted here (elementary/Kummer reductions) but rejected by the
// distribution modules.
struct PrabhakarParams {
  double alpha = 0.5;
  double beta = 1.0;
  double gamma_ = 1.0;

  PrabhakarParams(double alpha_, double beta_, double gamma_in)
      : alpha(alpha_), beta(beta_), gamma_(gamma_in) {
    if (!(alpha > 0.0 && alpha <= 1.0))
      throw std::invalid_argument("PrabhakarParams: requires 0 < alpha <= 1");
    if (!(beta > 0.0)) throw std::invalid_argument("PrabhakarParams: requires beta > 0");
    if (!(gamma_ > 0.0)) throw std::invalid_argument("PrabhakarParams: requires gamma > 0");
  }
};

// E^gamma_{alpha,beta}(-x) for x >= 0. Series below the switch point; above
// it the Laplace-integral (Im-form) path, which needs beta - alpha*gamma in
// (0, 1]. Outside that range the series is used with a cancellation guard.
double mittag_leffler(const PrabhakarParams& p, double x, const QuadratureSpec& quad = {});

// E_alpha(-x) (the 1-parameter function, beta = gamma = 1).
double mittag_leffler_one(double alpha, double x, const QuadratureSpec& quad = {});

// Kummer confluent hypergeometric M(a, b, x) for b > a > 0; equals the
// Laplace transform of a Beta(a, b-a) density at -x.
double kummer_m(double a, double b, double x);

namespace detail {
// Series evaluation at a complex argument, with a relative cancellation
// estimate; used by the mixture Im-integral forms.
std::complex<double> prabhakar_series(const PrabhakarParams& p, std::complex<double> z,
                                      int max_terms, double* cancellation);
double prabhakar_series_real(const PrabhakarParams& p, double minus_x, double* cancellation);
double prabhakar_integral(const PrabhakarParams& p, double x, const QuadratureSpec& quad);
}  // namespace detail

}  // namespace mlconv
