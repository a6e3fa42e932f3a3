#include "mlconv/mixtures.hpp"

#include <cmath>
#include <complex>
#include <limits>

#include "mlconv/detail/branch.hpp"
#include "mlconv/mlfunc.hpp"
#include "mlconv/special.hpp"

namespace mlconv {

namespace {

constexpr double kMomentSeriesGate = 2.0;  // valid when t^sigma/lambda >= 2
constexpr double kImSeriesZMax = 6.0;      // complex-series radius for the Im form

bool lamperti_case(const MixtureSpec& s) {
  return s.sigma == s.ml.alpha && s.ml.is_one_parameter();
}

}  // namespace

double lamperti_density(double alpha, double lambda, double t) {
  const double ta = std::pow(t, alpha);
  const double den = lambda * lambda + 2.0 * lambda * ta * cos_pi(alpha) + ta * ta;
  return sin_pi(alpha) / M_PI * lambda * std::pow(t, alpha - 1.0) / den;
}

namespace detail {

double mixture_moment_series(const MixtureSpec& spec, double t, double* est_error) {
  // -(1/pi) sum_k (-lambda)^k sin(pi sigma k) M_k Gamma(sigma k + 1) / t^{sigma k + 1};
  // treated as an asymptotic expansion: stop at the smallest term, whose size
  // bounds the truncation error.
  const double sg = spec.sigma, lam = spec.lambda;
  if (std::pow(t, sg) / lam < kMomentSeriesGate)
    throw EvaluationError("mixture MomentSeries is a large-t expansion: t^sigma/lambda too small");
  const MLParams& p = spec.ml;
  const double lgb = log_gamma(p.beta_eff()), lgg = log_gamma(p.gamma_eff());
  const double logt = std::log(t), loglam = std::log(lam);
  double sum = 0.0, prev_abs = std::numeric_limits<double>::infinity();
  double smallest = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= 400; ++k) {
    const double s = sin_pi(sg * k);
    const double log_mk =
        lgb + log_gamma(p.gamma_eff() + k) - lgg - log_gamma(p.alpha * k + p.beta_eff());
    const double mag = k * loglam + log_mk + log_gamma(sg * k + 1.0) - (sg * k + 1.0) * logt;
    const double at = std::exp(mag);
    double term = 0.0;
    if (s != 0.0) {
      term = -s * at / M_PI;
      if (k % 2 == 1) term = -term;
    }
    if (at > prev_abs && k > 2) {  // smallest term reached: truncate
      if (est_error) *est_error = prev_abs / M_PI;
      return sum;
    }
    sum += term;
    prev_abs = at;
    smallest = std::min(smallest, at);
    if (at < 1e-17 * std::abs(sum)) {
      if (est_error) *est_error = at / M_PI;
      return sum;
    }
  }
  if (est_error) *est_error = smallest / M_PI;
  return sum;
}

double mixture_im_integral(const MixtureSpec& spec, double t, const QuadratureSpec& quad) {
  // (Gamma(beta+theta)/pi) Im int_0^{u_max} e^{-tu} E^{geff}_{alpha,beff}(-lambda e^{-i pi sigma} u^sigma) du
  // truncated where the complex series stops converging comfortably.
  const MLParams& p = spec.ml;
  const double sg = spec.sigma, lam = spec.lambda;
  const double u_max = std::pow(kImSeriesZMax / lam, 1.0 / sg);
  const double tail = std::exp(-t * u_max) / t;  // envelope bound on the cut tail
  if (tail > 10.0 * quad.abs_tol)
    throw EvaluationError("mixture ImIntegral: truncated tail too large at this t");
  const PrabhakarParams pp(p.alpha, p.beta_eff(), p.gamma_eff());
  const std::complex<double> rot = detail::cis_neg_pi(sg);
  const double pref = std::exp(log_gamma(p.beta_eff())) / M_PI;
  auto f = [&](double u) {
    if (u <= 0.0) return 0.0;
    const std::complex<double> z = -lam * std::pow(u, sg) * rot;
    const std::complex<double> e = detail::prabhakar_series(pp, z, 600, nullptr);
    return pref * std::exp(-t * u) * e.imag();
  };
  return integrate_finite(f, 0.0, u_max, quad).value;
}

}  // namespace detail

double mixture_density(const MixtureSpec& spec, double t, MixtureMethod method,
                       const QuadratureSpec& quad) {
  if (!(t > 0.0)) throw std::domain_error("mixture_density: requires t > 0");
  switch (method) {
    case MixtureMethod::MomentSeries:
      return detail::mixture_moment_series(spec, t, nullptr);
    case MixtureMethod::ImIntegral:
      return detail::mixture_im_integral(spec, t, quad);
    case MixtureMethod::MixQuadrature:
      return generic_mixture_density(
          spec.sigma, spec.lambda,
          [&](double u) { return ml_density(spec.ml, u, ConvMethod::Auto, quad); }, t, quad);
    case MixtureMethod::ClosedFormLamperti:
      if (!lamperti_case(spec))
        throw std::invalid_argument(
            "mixture_density: ClosedFormLamperti requires sigma = alpha and ml = (alpha,1,1,0)");
      return lamperti_density(spec.sigma, spec.lambda, t);
    case MixtureMethod::Auto:
      break;
  }
  if (lamperti_case(spec)) return lamperti_density(spec.sigma, spec.lambda, t);
  if (std::pow(t, spec.sigma) / spec.lambda >= 8.0) {
    double est = 0.0;
    const double v = detail::mixture_moment_series(spec, t, &est);
    if (est <= std::max(quad.abs_tol, 1e-9 * std::abs(v))) return v;
  }
  return mixture_density(spec, t, MixtureMethod::MixQuadrature, quad);
}

double q_kernel(const QKernelParams& qp, double u) {
  if (!(u > 0.0)) throw std::domain_error("q_kernel: requires u > 0");
  const MLParams& p = qp.ml;
  return detail::im_ratio_kernel(p.alpha, p.alpha * p.gamma_ - p.beta, p.gamma_eff(), qp.y, u);
}

double q_kernel_laplace(const QKernelParams& qp, double t, const QuadratureSpec& quad) {
  if (!(t > 0.0)) throw std::domain_error("q_kernel_laplace: requires t > 0");
  const MLParams& p = qp.ml;
  const double D = p.conv_order();
  if (!(D <= 1.0 + 1e-13))
    throw EvaluationError("q_kernel_laplace: requires beta - alpha*gamma <= 1");
  // same u -> w^{1/(1-D)} regularisation as the Prabhakar integral path
  const bool boundary = std::abs(D - 1.0) <= 1e-13;
  const std::complex<double> cisD =
      boundary ? std::complex<double>(-1.0, 0.0) : detail::cis_pos_pi(D);
  const std::complex<double> rot = detail::cis_neg_pi(p.alpha);
  const double ge = p.gamma_eff(), y = qp.y, alpha = p.alpha;
  auto h = [&](double u) {
    const std::complex<double> den =
        std::pow(std::complex<double>(y, 0.0) + rot * std::pow(u, alpha), ge);
    return (cisD / den).imag() / M_PI;
  };
  double head = 0.0, atom = 0.0;
  if (boundary) {
    atom = std::pow(y, -ge);
    const double limit0 = -ge * sin_pi(alpha) * std::pow(y, -ge - 1.0) / (alpha * M_PI);
    auto f = [&, limit0](double w) {
      if (w <= 0.0) return limit0;
      const double u = std::pow(w, 1.0 / alpha);
      if (u < 1e-200) return limit0;
      return std::exp(-t * u) * h(u) / (alpha * w);
    };
    head = integrate_finite(f, 0.0, 1.0, quad).value;
  } else {
    const double s = 1.0 / (1.0 - D);
    auto f = [&](double w) {
      if (w <= 0.0) return h(0.0);
      const double u = std::exp(s * std::log(w));
      return std::exp(-t * u) * h(u);
    };
    head = s * integrate_finite(f, 0.0, 1.0, quad).value;
  }
  auto tail = [&](double u) { return std::exp(-t * u - D * std::log(u)) * h(u); };
  return head + integrate_from(tail, 1.0, quad).value + atom;
}

double generic_mixture_density(double sigma, double lambda,
                               const std::function<double(double)>& mixing_density, double t,
                               const QuadratureSpec& quad) {
  if (!(t > 0.0)) throw std::domain_error("generic_mixture_density: requires t > 0");
  if (!(sigma > 0.0 && sigma < 1.0))
    throw std::invalid_argument("generic_mixture_density: requires 0 < sigma < 1");
  if (!(lambda > 0.0)) throw std::invalid_argument("generic_mixture_density: requires lambda > 0");
  auto f = [&](double u) {
    if (u <= 0.0) return 0.0;
    const double g = mixing_density(u);
    if (g == 0.0) return 0.0;
    return stable_density(StableSpec(sigma, lambda * u), t, StableMethod::Auto, quad) * g;
  };
  return integrate_semiinf(f, quad).value;
}

}  // namespace mlconv
