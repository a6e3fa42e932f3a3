#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "mlconv/powerconv.hpp"
#include "mlconv/quadrature.hpp"
#include "mlconv/rng.hpp"

namespace mlconv {

// ML(alpha, beta, gamma, theta): the 4-parameter Mittag-Leffler law with
// Laplace transform Gamma(beta+theta) E^{gamma+theta/alpha}_{alpha,beta+theta}(-x).
// Admissibility is -theta < alpha*gamma < beta, checked once at construction.
struct MLParams {
  double alpha = 0.5;
  double beta = 1.0;
  double gamma_ = 1.0;
  double theta = 0.0;

  MLParams(double alpha_, double beta_, double gamma_in, double theta_)
      : alpha(alpha_), beta(beta_), gamma_(gamma_in), theta(theta_) {
    if (!(alpha > 0.0 && alpha < 1.0))
      throw std::invalid_argument("MLParams: requires 0 < alpha < 1");
    if (!(alpha * gamma_ < beta))
      throw std::invalid_argument("MLParams: requires alpha*gamma < beta");
    if (!(-theta < alpha * gamma_))
      throw std::invalid_argument("MLParams: requires -theta < alpha*gamma");
  }

  double beta_eff() const { return beta + theta; }            // order of the LT prefactor
  double gamma_eff() const { return gamma_ + theta / alpha; } // power-kernel exponent
  double conv_order() const { return beta - alpha * gamma_; } // order of rho in the convolution

  bool is_one_parameter() const { return beta == 1.0 && gamma_ == 1.0 && theta == 0.0; }
  bool is_two_parameter() const { return beta == 1.0 && gamma_ == 1.0; }
};

// Parameters of the product representation T = V U with
// U ~ Beta(theta/alpha + gamma, beta/alpha - gamma) and V ~ ML(alpha, beta+theta).
struct ProductFactors {
  double beta_a = 0.0;
  double beta_b = 0.0;
  double ml2_theta = 0.0;
};

// Density of ML(alpha,beta,gamma,theta) at u > 0:
//   Gamma(beta+theta) rho_{gamma+theta/alpha}(u) {rho_{beta-alpha gamma} * f_alpha(.|u)}(1)
// For beta - alpha*gamma = 1 - alpha, Auto uses the reduction through the
// 1-parameter law: Gamma(beta+theta)/Gamma(gamma+theta/alpha) u^{...-1} p_alpha(u).
double ml_density(const MLParams& p, double u, ConvMethod method = ConvMethod::Auto,
                  const QuadratureSpec& quad = {});

// Density of the 1-parameter law, p_alpha(u) = f_alpha(u^{-1/alpha}) u^{-1/alpha-1} / alpha.
double ml_one_density(double alpha, double u, const QuadratureSpec& quad = {});

// Moment of general exponent r > -gamma - theta/alpha, in log-gamma space.
double ml_moment(const MLParams& p, double r);

// Normalising constant of the product representation,
//   Gamma(1+beta+theta) Gamma(1+theta/alpha) / (Gamma(1+(beta+theta)/alpha) Gamma(1+theta)).
double ml_norm_const(double alpha, double beta, double theta);

ProductFactors product_factors(const MLParams& p);

enum class SampleStrategy {
  Auto,
  StableTransform,   // U = S^{-alpha}; exact, (alpha,1,1,0) only
  TiltedMetropolis,  // independence chain, (alpha,1,1,theta) only
  BetaProduct,       // T = V U per the product representation; general
};

std::vector<double> ml_sample(const MLParams& p, std::size_t n, Rng& rng,
                              SampleStrategy strategy = SampleStrategy::Auto);

// One step of the Mittag-Leffler Markov chain: maps t_n ~ ML(alpha, theta+n)
// to t_{n-1} = t_n u_n ~ ML(alpha, theta+n-1) with
// u_n ~ Beta((theta+n-1)/alpha + 1, 1/alpha - 1).
double mlmc_step(double alpha, double theta, int n, double t_n, Rng& rng);

}  // namespace mlconv
