#include "mlconv/stable.hpp"

#include <cmath>
#include <complex>
#include <limits>

#include "mlconv/detail/branch.hpp"
#include "mlconv/special.hpp"

namespace mlconv {

namespace detail {

double levy_unit(double t) {
  // f_{1/2}(t|1) = 1/(2 sqrt(pi)) t^{-3/2} e^{-1/(4t)}
  return 0.5 / std::sqrt(M_PI) * std::pow(t, -1.5) * std::exp(-0.25 / t);
}

double stable_series_unit(double alpha, double t, int max_terms, double* cancellation) {
  // f_alpha(t) = -(1/pi) sum_{k>=1} (-1)^k/k! sin(pi alpha k) Gamma(alpha k+1) t^{-alpha k-1}
  const double logt = std::log(t);
  double sum = 0.0, comp = 0.0, max_term = 0.0;
  int small_run = 0;  // single terms vanish at integer alpha*k; need two in a row
  for (int k = 1; k <= max_terms; ++k) {
    const double s = sin_pi(alpha * k);
    double term = 0.0;
    if (s != 0.0) {
      const double mag =
          log_gamma(alpha * k + 1.0) - log_gamma(k + 1.0) - (alpha * k + 1.0) * logt;
      term = -s * std::exp(mag) / M_PI;
      if (k % 2 == 1) term = -term;  // (-1)^k
    }
    const double y = term - comp;
    const double t2 = sum + y;
    comp = (t2 - sum) - y;
    sum = t2;
    const double at = std::abs(term);
    max_term = std::max(max_term, at);
    small_run = (at < 1e-17 * std::abs(sum) + 1e-300) ? small_run + 1 : 0;
    if (k > 3 && small_run >= 2) {
      if (cancellation)
        *cancellation = max_term * std::numeric_limits<double>::epsilon() /
                        std::max(std::abs(sum), 1e-300);
      return sum;
    }
  }
  throw EvaluationError("stable series did not converge within the term budget");
}

double stable_im_integral_unit(double alpha, double t, const QuadratureSpec& quad) {
  // (1/pi) int_0^inf e^{-tu} Im[e^{-(e^{-i pi} u)^alpha}] du
  //   = (1/pi) int_0^inf exp(-tu - u^alpha cos(pi alpha)) sin(u^alpha sin(pi alpha)) du
  const double c = cos_pi(alpha), s = sin_pi(alpha);
  auto f = [=](double u) {
    if (u <= 0.0) return 0.0;
    const double ua = std::pow(u, alpha);
    const double expo = -t * u - ua * c;  // for alpha > 1/2 the second term grows; -tu wins
    if (expo < -745.0) return 0.0;
    return std::exp(expo) * std::sin(ua * s) / M_PI;
  };
  return integrate_semiinf(f, quad).value;
}

double stable_angular_unit(double alpha, double t, const QuadratureSpec& quad) {
  // Zolotarev-type positive-integrand form: with r = alpha/(1-alpha),
  //   f_alpha(t) = r t^{-1/(1-alpha)} (1/pi) int_0^pi A(phi) e^{-t^{-r} A(phi)} dphi,
  //   A(phi) = sin(alpha phi)^r sin((1-alpha) phi) / sin(phi)^{1+r}.
  const double r = alpha / (1.0 - alpha);
  const double c = std::exp(-r * std::log(t));
  auto f = [alpha, r, c](double phi) {
    if (phi <= 0.0 || phi >= M_PI) return 0.0;
    const double logA = r * std::log(std::sin(alpha * phi)) +
                        std::log(std::sin((1.0 - alpha) * phi)) -
                        (1.0 + r) * std::log(std::sin(phi));
    const double w = logA - c * std::exp(logA);
    return std::isfinite(w) ? std::exp(w) : 0.0;
  };
  const double integral = integrate_finite(f, 0.0, M_PI, quad).value;
  if (integral <= 0.0) return 0.0;  // genuine underflow deep in the left tail
  const double log_pref = std::log(r) - std::log(t) / (1.0 - alpha) - std::log(M_PI);
  return std::exp(log_pref + std::log(integral));
}

}  // namespace detail

namespace {

constexpr double kSeriesGate = 1.5;  // use the series when t^alpha/lambda >= 1.5
constexpr int kSeriesBudget = 200;

double density_unit(double alpha, double t, StableMethod method, const QuadratureSpec& quad) {
  switch (method) {
    case StableMethod::PollardSeries:
      return detail::stable_series_unit(alpha, t, kSeriesBudget, nullptr);
    case StableMethod::PollardIntegral:
      return detail::stable_im_integral_unit(alpha, t, quad);
    case StableMethod::ClosedFormHalf:
      if (alpha != 0.5)
        throw std::invalid_argument("stable_density: ClosedFormHalf requires alpha = 1/2");
      return detail::levy_unit(t);
    case StableMethod::Auto:
      break;
  }
  if (std::pow(t, alpha) >= kSeriesGate)
    return detail::stable_series_unit(alpha, t, kSeriesBudget, nullptr);
  return detail::stable_angular_unit(alpha, t, quad);
}

}  // namespace

double stable_density(const StableSpec& spec, double t, StableMethod method,
                      const QuadratureSpec& quad) {
  if (!(t > 0.0)) throw std::domain_error("stable_density: requires t > 0");
  const double scale = std::pow(spec.lambda, -1.0 / spec.alpha);
  const double tt = t * scale;
  // mixtures push the scale to extremes where t*scale under- or overflows;
  // the density there is far below the smallest double
  if (tt <= 0.0) return 0.0;
  const double d = density_unit(spec.alpha, tt, method, quad);
  if (d <= 0.0) return 0.0;
  return d * scale;
}

double stable_sample_one(const StableSpec& spec, Rng& rng) {
  // Kanter: X = (A(pi U)/E)^{(1-alpha)/alpha} has LT e^{-x^alpha}
  const double alpha = spec.alpha;
  const double r = alpha / (1.0 - alpha);
  const double u = rng.uniform_pos() * M_PI;
  const double e = rng.exponential();
  const double logA = r * std::log(std::sin(alpha * u)) + std::log(std::sin((1.0 - alpha) * u)) -
                      (1.0 + r) * std::log(std::sin(u));
  const double x = std::exp((logA - std::log(e)) * (1.0 - alpha) / alpha);
  return x * std::pow(spec.lambda, 1.0 / alpha);
}

std::vector<double> stable_sample(const StableSpec& spec, std::size_t n, Rng& rng) {
  std::vector<double> out(n);
  for (auto& x : out) x = stable_sample_one(spec, rng);
  return out;
}

double tilting_residual(const StableSpec& spec, double t, const QuadratureSpec& quad) {
  if (!(t > 0.0)) throw std::domain_error("tilting_residual: requires t > 0");
  const double alpha = spec.alpha;
  // {rho_{1-alpha} * f}(t) = int_0^t v^{-alpha}/Gamma(1-alpha) f(t-v) dv
  const double rg = recip_gamma(1.0 - alpha);
  auto f = [&](double v) {
    const double u = t - v;
    if (u <= 0.0 || v <= 0.0) return 0.0;
    return std::pow(v, -alpha) * rg * stable_density(spec, u, StableMethod::Auto, quad);
  };
  const double conv = integrate_finite(f, 0.0, t, quad).value;
  return t * stable_density(spec, t, StableMethod::Auto, quad) - spec.lambda * alpha * conv;
}

}  // namespace mlconv
