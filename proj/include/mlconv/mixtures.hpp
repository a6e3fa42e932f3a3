#pragma once

#include <functional>

#include "mlconv/mldist.hpp"
#include "mlconv/quadrature.hpp"

namespace mlconv {

// Mixture w_{sigma,alpha}(t | lambda, ml) = int f_sigma(t|lambda u) dP_ml(u),
// whose Laplace transform is Gamma(beta+theta) E^{gamma+theta/alpha}_{alpha,beta+theta}(-lambda x^sigma).
struct MixtureSpec {
  double sigma = 0.5;
  double lambda = 1.0;
  MLParams ml;

  MixtureSpec(double sigma_, double lambda_, const MLParams& ml_)
      : sigma(sigma_), lambda(lambda_), ml(ml_) {
    if (!(sigma > 0.0 && sigma < 1.0))
      throw std::invalid_argument("MixtureSpec: requires 0 < sigma < 1");
    if (!(lambda > 0.0)) throw std::invalid_argument("MixtureSpec: requires lambda > 0");
  }
};

enum class MixtureMethod {
  MomentSeries,       // asymptotic large-t expansion, stopped at the smallest term
  ImIntegral,         // Im-form with the complex Prabhakar series; needs t not too small
  MixQuadrature,      // direct mixture over the ML density; general workhorse
  ClosedFormLamperti, // sigma = alpha and ml = (alpha,1,1,0) only
  Auto,
};

double mixture_density(const MixtureSpec& spec, double t, MixtureMethod method = MixtureMethod::Auto,
                       const QuadratureSpec& quad = {});

// (sin(pi alpha)/pi) lambda t^{alpha-1} / (lambda^2 + 2 lambda t^alpha cos(pi alpha) + t^{2 alpha})
double lamperti_density(double alpha, double lambda, double t);

// Signed kernel whose Laplace transform is t^{beta+theta-1} E^{gamma+theta/alpha}_{alpha,beta+theta}(-y t^alpha).
// Nonnegative when beta+theta <= 1; genuinely signed otherwise.
struct QKernelParams {
  MLParams ml;
  double y = 1.0;

  QKernelParams(const MLParams& ml_, double y_) : ml(ml_), y(y_) {
    if (!(y > 0.0)) throw std::invalid_argument("QKernelParams: requires y > 0");
  }
};

double q_kernel(const QKernelParams& qp, double u);
inline bool q_kernel_nonneg_regime(const QKernelParams& qp) { return qp.ml.beta_eff() <= 1.0; }

// Laplace transform of the q measure at t. For beta - alpha*gamma < 1 this is
// the plain integral of e^{-tu} q(u); at the boundary beta - alpha*gamma = 1
// the Laplace-Stieltjes measure carries an atom y^{-(gamma+theta/alpha)} at
// u = 0, which is included here.
double q_kernel_laplace(const QKernelParams& qp, double t, const QuadratureSpec& quad = {});

// Generic Theorem-style mixture: int_0^inf f_sigma(t | lambda u) g(u) du.
double generic_mixture_density(double sigma, double lambda,
                               const std::function<double(double)>& mixing_density, double t,
                               const QuadratureSpec& quad = {});

namespace detail {
double mixture_moment_series(const MixtureSpec& spec, double t, double* est_error = nullptr);
double mixture_im_integral(const MixtureSpec& spec, double t, const QuadratureSpec& quad);
}  // namespace detail

}  // namespace mlconv
