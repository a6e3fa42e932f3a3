#include "mlconv/powerconv.hpp"

#include <cmath>
#include <complex>
#include <limits>

#include "mlconv/detail/branch.hpp"

namespace mlconv {

namespace detail {

double powerconv_series(double nu, double alpha, double lambda, double t, int max_terms,
                        double* cancellation) {
  // sum_k (-lambda)^k/k! t^{nu - alpha k - 1} recip_gamma(nu - alpha k);
  // terms at nonpositive-integer gamma arguments vanish through recip_gamma.
  const double logt = std::log(t);
  const double loglam = std::log(lambda);
  double sum = 0.0, comp = 0.0, max_term = 0.0;
  int small_run = 0;  // pole terms vanish singly; require two small terms in a row
  for (int k = 0; k < max_terms; ++k) {
    const double rg = recip_gamma(nu - alpha * k);
    double term = 0.0;
    if (rg != 0.0) {
      const double mag =
          k * loglam - log_gamma(k + 1.0) + (nu - alpha * k - 1.0) * logt + std::log(std::abs(rg));
      term = std::copysign(std::exp(mag), rg);
      if (k % 2 == 1) term = -term;
      if (!std::isfinite(term))
        throw EvaluationError("reciprocal-gamma series overflowed; t^alpha/lambda too small");
    }
    const double y = term - comp;
    const double t2 = sum + y;
    comp = (t2 - sum) - y;
    sum = t2;
    max_term = std::max(max_term, std::abs(term));
    small_run = (std::abs(term) < 1e-17 * std::abs(sum) + 1e-300) ? small_run + 1 : 0;
    if (k > 4 && small_run >= 2) {
      if (cancellation)
        *cancellation = max_term * std::numeric_limits<double>::epsilon() /
                        std::max(std::abs(sum), 1e-300);
      return sum;
    }
  }
  throw EvaluationError("reciprocal-gamma series did not converge within the term budget");
}

namespace {

QuadResult powerconv_im_raw(double nu, double alpha, double lambda, double t,
                            const QuadratureSpec& quad) {
  // (1/pi) Im e^{i pi nu} int_0^inf e^{-tu} u^{-nu} e^{-lambda (e^{-i pi} u)^alpha} du
  //   = (1/pi) int e^{-tu - nu ln u - lambda u^alpha cos(pi alpha)}
  //                sin(pi nu + lambda u^alpha sin(pi alpha)) du
  if (!(nu < 1.0))
    throw std::invalid_argument("powerconv_density: ImIntegral requires nu < 1");
  const double ca = cos_pi(alpha), sa = sin_pi(alpha), pn = M_PI * nu;
  auto f = [=](double u) {
    if (u <= 0.0) return 0.0;
    const double ua = std::pow(u, alpha);
    const double expo = -t * u - nu * std::log(u) - lambda * ua * ca;
    if (expo < -745.0) return 0.0;
    return std::exp(expo) * std::sin(pn + lambda * ua * sa) / M_PI;
  };
  return integrate_semiinf(f, quad);
}

double powerconv_im(double nu, double alpha, double lambda, double t, const QuadratureSpec& quad) {
  return powerconv_im_raw(nu, alpha, lambda, t, quad).value;
}

double powerconv_mix(double nu, double alpha, double lambda, double t,
                     const QuadratureSpec& quad) {
  // lambda^{nu/alpha} int_0^inf f_alpha(t | lambda (1+v)) rho_{nu/alpha}(v) dv
  const double na = nu / alpha;
  const double lg = log_gamma(na);
  auto f = [&](double v) {
    if (v <= 0.0) return 0.0;
    const double sc = lambda * (1.0 + v);
    if (!std::isfinite(sc)) return 0.0;
    const StableSpec s(alpha, sc);
    const double rho = std::exp((na - 1.0) * std::log(v) - lg);
    return stable_density(s, t, StableMethod::Auto, quad) * rho;
  };
  const double integral = integrate_semiinf(f, quad).value;
  if (integral <= 0.0) return 0.0;
  return std::exp(na * std::log(lambda) + std::log(integral));
}

double powerconv_beta(double nu, double alpha, double lambda, double t,
                      const QuadratureSpec& quad) {
  // lambda^{nu/alpha}/Gamma(nu/alpha)
  //   int_0^1 f_alpha(t | lambda/u) u^{-nu/alpha} (1-u)^{nu/alpha - 1} du/u,
  // the beta-weighted form of the convolution; singular at u = 1.
  const double na = nu / alpha;
  if (!(na > 0.0 && na < 1.0))
    throw std::invalid_argument("powerconv_density: BetaMixtureQuadrature requires 0 < nu < alpha");
  // Direct piece on [1/2, 1], where the (1-u)^{na-1} endpoint singularity
  // lives and the stable factor is tame. The rule evaluates at u == 1 with
  // the exact complement in xc; never reject that point.
  auto f = [&](double u, double xc) {
    const double om = xc > 0.0 ? xc : 1.0 - u;
    if (!(om > 0.0)) return 0.0;
    const double d = stable_density(StableSpec(alpha, lambda / u), t, StableMethod::Auto, quad);
    if (d == 0.0) return 0.0;
    return d * std::exp(-(na + 1.0) * std::log(u) + (na - 1.0) * std::log(om));
  };
  const double direct = integrate_finite_sing(f, 0.5, 1.0, quad).value;
  // On (0, 1/2) the integrand has an essential singularity at u = 0 (the
  // stable factor dies like exp(-c u^{-alpha/(1-alpha)/alpha})); u -> 1/v
  // turns it into an analytic, decaying tail.
  auto g = [&](double v) {
    if (v <= 2.0) return 0.0;
    return stable_density(StableSpec(alpha, lambda * v), t, StableMethod::Auto, quad) *
           std::exp((na - 1.0) * std::log(v - 1.0));
  };
  const double folded = integrate_from(g, 2.0, quad).value;
  const double total = direct + folded;
  if (total <= 0.0) return 0.0;
  return std::exp(na * std::log(lambda) - log_gamma(na) + std::log(total));
}

constexpr double kSeriesGate = 1.5;
constexpr int kSeriesBudget = 300;

}  // namespace
}  // namespace detail

double powerconv_density(const PowerExponent& nu, const StableSpec& spec, double t,
                         ConvMethod method, const QuadratureSpec& quad) {
  if (!(t > 0.0)) throw std::domain_error("powerconv_density: requires t > 0");
  if (nu.is_dirac()) return stable_density(spec, t, StableMethod::Auto, quad);
  const double a = spec.alpha, lam = spec.lambda, v = nu.nu;
  switch (method) {
    case ConvMethod::ReciprocalGammaSeries:
      return detail::powerconv_series(v, a, lam, t, detail::kSeriesBudget, nullptr);
    case ConvMethod::ImIntegral:
      return detail::powerconv_im(v, a, lam, t, quad);
    case ConvMethod::StableMixtureQuadrature:
      return detail::powerconv_mix(v, a, lam, t, quad);
    case ConvMethod::BetaMixtureQuadrature:
      return detail::powerconv_beta(v, a, lam, t, quad);
    case ConvMethod::TiltingClosedForm: {
      if (std::abs(v - (1.0 - a)) > 1e-12)
        throw std::invalid_argument("powerconv_density: TiltingClosedForm requires nu = 1 - alpha");
      return t * stable_density(spec, t, StableMethod::Auto, quad) / (lam * a);
    }
    case ConvMethod::Auto:
      break;
  }
  if (std::pow(t, a) / lam >= detail::kSeriesGate)
    return detail::powerconv_series(v, a, lam, t, detail::kSeriesBudget, nullptr);
  // The Im form costs one plain quadrature; it only dies by cancellation deep
  // in the tail, where the value is tiny against the integrand's L1 mass.
  // Fall back to the positive (but nested, hence expensive) mixture there.
  if (v < 1.0) {
    const QuadResult r = detail::powerconv_im_raw(v, a, lam, t, quad);
    if (std::abs(r.value) >= 1e-8 * r.l1) return r.value;
  }
  return detail::powerconv_mix(v, a, lam, t, quad);
}

}  // namespace mlconv
