#include "mlconv/mlfunc.hpp"

#include <cmath>
#include <limits>

#include "mlconv/detail/branch.hpp"
#include "mlconv/special.hpp"

namespace mlconv {

namespace detail {

namespace {

constexpr int kSeriesBudget = 600;
constexpr double kSwitchX = 5.0;

long double lgammal_pos(long double x) {
#if defined(__GLIBC__) || defined(__linux__)
  int sign = 0;
  return ::lgammal_r(x, &sign);
#else
  return std::lgamma(x);
#endif
}

}  // namespace

std::complex<double> prabhakar_series(const PrabhakarParams& p, std::complex<double> z,
                                      int max_terms, double* cancellation) {
  // sum_k Gamma(gamma+k)/(Gamma(gamma) k! Gamma(alpha k + beta)) z^k,
  // accumulated in long double with the ratio recursion
  //   c_{k+1} = c_k (gamma+k)/(k+1) * Gamma(alpha k + beta)/Gamma(alpha k + alpha + beta)
  const long double lg_gamma = lgammal_pos(p.gamma_);
  std::complex<long double> zl(z.real(), z.imag());
  std::complex<long double> sum = 0.0L, zpow = 1.0L;
  long double max_abs = 0.0L;
  for (int k = 0; k < max_terms; ++k) {
    const long double lc = lgammal_pos(p.gamma_ + k) - lg_gamma - lgammal_pos(k + 1.0L) -
                           lgammal_pos(p.alpha * k + p.beta);
    const std::complex<long double> term = std::exp(lc) * zpow;
    sum += term;
    max_abs = std::max(max_abs, std::abs(term));
    if (k > 2 && std::abs(term) < 1e-20L * std::abs(sum) + 1e-4000L) {
      if (cancellation)
        *cancellation = (double)(max_abs * 1e-19L / std::max(std::abs(sum), (long double)1e-300));
      return {(double)sum.real(), (double)sum.imag()};
    }
    zpow *= zl;
    if (!std::isfinite((double)std::abs(zpow)))
      throw EvaluationError("Prabhakar series overflowed before converging");
  }
  throw EvaluationError("Prabhakar series did not converge within the term budget");
}

double prabhakar_series_real(const PrabhakarParams& p, double minus_x, double* cancellation) {
  return prabhakar_series(p, std::complex<double>(minus_x, 0.0), kSeriesBudget, cancellation)
      .real();
}

double prabhakar_integral(const PrabhakarParams& p, double x, const QuadratureSpec& quad) {
  // E^g_{a,b}(-x) = int_0^inf e^{-u} q_{a,b,g}(u|x) du with
  // q(u|x) = u^{-D} h(u), h(u) = (1/pi) Im[e^{i pi D}/(x + e^{-i pi a}u^a)^g],
  // D = b - a g in (0, 1]. The u -> w^{1/(1-D)} substitution removes the
  // endpoint singularity; at D = 1 the transform carries an atom x^{-g} at 0.
  const double alpha = p.alpha, gamma_ = p.gamma_;
  const double D = p.beta - alpha * gamma_;
  if (!(D > 0.0 && D <= 1.0 + 1e-13))
    throw EvaluationError("Prabhakar integral path requires beta - alpha*gamma in (0, 1]");
  const bool boundary = std::abs(D - 1.0) <= 1e-13;
  const std::complex<double> cisD =
      boundary ? std::complex<double>(-1.0, 0.0) : detail::cis_pos_pi(D);
  const std::complex<double> rot = detail::cis_neg_pi(alpha);
  auto h = [&](double u) {
    const std::complex<double> den =
        std::pow(std::complex<double>(x, 0.0) + rot * std::pow(u, alpha), gamma_);
    return (cisD / den).imag() / M_PI;
  };

  double head = 0.0, atom = 0.0;
  if (boundary) {
    atom = std::pow(x, -gamma_);
    // q(u) = h(u)/u with h(u) ~ c u^alpha near 0; u = w^{1/alpha} regularizes
    const double limit0 = -gamma_ * sin_pi(alpha) * std::pow(x, -gamma_ - 1.0) / (alpha * M_PI);
    auto f = [&, limit0](double w) {
      if (w <= 0.0) return limit0;
      const double u = std::pow(w, 1.0 / alpha);
      if (u < 1e-200) return limit0;
      return std::exp(-u) * h(u) / (alpha * w);
    };
    head = integrate_finite(f, 0.0, 1.0, quad).value;
  } else {
    const double s = 1.0 / (1.0 - D);
    auto f = [&](double w) {
      if (w <= 0.0) return h(0.0);
      const double u = std::exp(s * std::log(w));  // may underflow to 0: fine
      return std::exp(-u) * h(u);
    };
    head = s * integrate_finite(f, 0.0, 1.0, quad).value;
  }
  auto tail = [&](double u) { return std::exp(-u - D * std::log(u)) * h(u); };
  return head + integrate_from(tail, 1.0, quad).value + atom;
}

namespace {

// M(a,b,x) by direct series; terms are positive for x >= 0.
double kummer_series_raw(double a, double b, double x, double* cancellation) {
  long double sum = 1.0L, term = 1.0L, max_abs = 1.0L;
  for (int k = 0; k < 2000; ++k) {
    term *= (a + k) * (long double)x / ((b + k) * (k + 1.0L));
    sum += term;
    max_abs = std::max(max_abs, std::abs(term));
    if (std::abs(term) < 1e-20L * std::abs(sum)) {
      if (cancellation)
        *cancellation = (double)(max_abs * 1e-19L / std::max(std::abs(sum), (long double)1e-300));
      return (double)sum;
    }
  }
  throw EvaluationError("Kummer series did not converge within the term budget");
}

}  // namespace

}  // namespace detail

double kummer_m(double a, double b, double x) {
  if (!(b > a && a > 0.0))
    throw std::invalid_argument("kummer_m: requires b > a > 0");
  if (x == 0.0) return 1.0;
  if (x < 0.0) {
    // Kummer transform keeps the series positive: M(a,b,x) = e^x M(b-a,b,-x)
    if (b == a) return std::exp(x);
    return std::exp(x) * detail::kummer_series_raw(b - a, b, -x, nullptr);
  }
  return detail::kummer_series_raw(a, b, x, nullptr);
}

double mittag_leffler(const PrabhakarParams& p, double x, const QuadratureSpec& quad) {
  if (!(x >= 0.0)) throw std::domain_error("mittag_leffler: evaluates E(-x) for x >= 0");
  if (x == 0.0) return recip_gamma(p.beta);

  if (p.alpha == 1.0) {
    // E^g_{1,b}(-x) = M(g, b, -x)/Gamma(b)
    double m;
    if (p.beta > p.gamma_) {
      m = std::exp(-x) * detail::kummer_series_raw(p.beta - p.gamma_, p.beta, x, nullptr);
    } else if (p.beta == p.gamma_) {
      m = std::exp(-x);
    } else {
      double cancel = 0.0;
      m = detail::kummer_series_raw(p.gamma_, p.beta, -x, &cancel);
      if (cancel > 1e-9) throw EvaluationError("mittag_leffler: Kummer series cancellation");
    }
    return m * recip_gamma(p.beta);
  }

  const double D = p.beta - p.alpha * p.gamma_;
  const bool integral_ok = (D > 1e-12 && D <= 1.0 + 1e-13);
  if (x >= detail::kSwitchX && integral_ok) return detail::prabhakar_integral(p, x, quad);

  double cancel = 0.0;
  const double v = detail::prabhakar_series_real(p, -x, &cancel);
  const double target = std::max(1e-11, 10.0 * quad.rel_tol);
  if (cancel <= target) return v;
  if (integral_ok) return detail::prabhakar_integral(p, x, quad);
  throw EvaluationError(
      "mittag_leffler: series cancellation too large and the integral path needs "
      "beta - alpha*gamma in (0, 1]");
}

double mittag_leffler_one(double alpha, double x, const QuadratureSpec& quad) {
  return mittag_leffler(PrabhakarParams(alpha, 1.0, 1.0), x, quad);
}

}  // namespace mlconv
