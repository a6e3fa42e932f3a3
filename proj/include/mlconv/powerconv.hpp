#pragma once

#include "mlconv/quadrature.hpp"
#include "mlconv/special.hpp"
#include "mlconv/stable.hpp"

namespace mlconv {

enum class ConvMethod {
  ReciprocalGammaSeries,    // sum_k (-lambda)^k/k! rho_{nu-alpha k}(t); large t^alpha/lambda
  ImIntegral,               // Im-form integral; requires nu < 1
  StableMixtureQuadrature,  // positive mixture over (1, inf); robust everywhere
  BetaMixtureQuadrature,    // beta-weighted form; requires 0 < nu < alpha
  TiltingClosedForm,        // t f_alpha(t|lambda)/(lambda alpha); nu = 1 - alpha only
  Auto,
};

// {rho_nu * f_alpha(.|lambda)}(t). nu = 0 is the Dirac unit and returns the
// stable density itself. Auto picks the series for t^alpha/lambda >= 1.5 and
// the positive stable-mixture quadrature otherwise (the Im form loses all
// relative accuracy there).
double powerconv_density(const PowerExponent& nu, const StableSpec& spec, double t,
                         ConvMethod method = ConvMethod::Auto, const QuadratureSpec& quad = {});

namespace detail {
double powerconv_series(double nu, double alpha, double lambda, double t, int max_terms,
                        double* cancellation = nullptr);
}

}  // namespace mlconv
