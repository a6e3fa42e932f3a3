#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "mlconv/quadrature.hpp"
#include "mlconv/rng.hpp"

namespace mlconv {

// One-sided alpha-stable law on (0,inf), defined by the Laplace transform
// e^{-lambda x^alpha}, 0 < alpha < 1.
struct StableSpec {
  double alpha = 0.5;
  double lambda = 1.0;

  StableSpec(double alpha_, double lambda_) : alpha(alpha_), lambda(lambda_) {
    if (!(alpha > 0.0 && alpha < 1.0))
      throw std::invalid_argument("StableSpec: requires 0 < alpha < 1");
    if (!(lambda > 0.0)) throw std::invalid_argument("StableSpec: requires lambda > 0");
  }
};

enum class StableMethod {
  PollardSeries,    // alternating series in t^{-alpha k - 1}; large t
  PollardIntegral,  // Im-form integral; moderate t
  ClosedFormHalf,   // Levy closed form, alpha = 1/2 only
  Auto,
};

// f_alpha(t | lambda). The scale is always reduced first through
// f_alpha(t|lambda) = f_alpha(t lambda^{-1/alpha}) lambda^{-1/alpha}.
// Auto picks the series for t^alpha/lambda >= 1.5 and otherwise a
// positive-integrand angular representation that keeps relative accuracy
// where the Pollard forms cancel catastrophically.
double stable_density(const StableSpec& spec, double t, StableMethod method = StableMethod::Auto,
                      const QuadratureSpec& quad = {});

// Exact sampler (Kanter's two-uniform method), scaled by lambda^{1/alpha}.
double stable_sample_one(const StableSpec& spec, Rng& rng);
std::vector<double> stable_sample(const StableSpec& spec, std::size_t n, Rng& rng);

// Residual of the tilting identity
//   t f_alpha(t|lambda) = lambda alpha {rho_{1-alpha} * f_alpha(.|lambda)}(t),
// with the convolution evaluated by direct quadrature over (0, t).
double tilting_residual(const StableSpec& spec, double t, const QuadratureSpec& quad = {});

namespace detail {
// Unit-scale (lambda = 1) building blocks, exposed for tests.
double stable_series_unit(double alpha, double t, int max_terms, double* cancellation = nullptr);
double stable_im_integral_unit(double alpha, double t, const QuadratureSpec& quad);
double stable_angular_unit(double alpha, double t, const QuadratureSpec& quad);
double levy_unit(double t);
}  // namespace detail

}  // namespace mlconv
