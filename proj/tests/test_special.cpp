#include <doctest.h>

#include <cmath>

#include "mlconv/quadrature.hpp"
#include "mlconv/special.hpp"

using namespace mlconv;

TEST_CASE("recip_gamma basics") {
  CHECK(recip_gamma(1.0) == doctest::Approx(1.0));
  CHECK(recip_gamma(0.0) == 0.0);
  CHECK(recip_gamma(-1.0) == 0.0);
  CHECK(recip_gamma(-7.0) == 0.0);
  // reflection oracle: Gamma(-1/2) = -2 sqrt(pi)
  CHECK(recip_gamma(-0.5) == doctest::Approx(-1.0 / (2.0 * std::sqrt(M_PI))).epsilon(1e-13));
}

TEST_CASE("recip_gamma inverts tgamma") {
  for (double x : {0.1, 0.5, 1.5, 4.2, 10.0}) {
    CHECK(recip_gamma(x) * std::tgamma(x) == doctest::Approx(1.0).epsilon(1e-13));
  }
  // and through the reflection range
  for (double x : {-0.5, -1.5, -2.3, -5.7, 0.3}) {
    CHECK(recip_gamma(x) * std::tgamma(x) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("sin_pi and cos_pi exact zeros") {
  CHECK(sin_pi(3.0) == 0.0);
  CHECK(sin_pi(-41.0) == 0.0);
  CHECK(cos_pi(0.5) == 0.0);
  CHECK(cos_pi(7.5) == 0.0);
  CHECK(sin_pi(0.5) == doctest::Approx(1.0));
  CHECK(cos_pi(1.0) == doctest::Approx(-1.0));
  CHECK(sin_pi(0.25) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
}

TEST_CASE("power density") {
  CHECK(power_density(PowerExponent(1.0), 7.3) == doctest::Approx(1.0));
  CHECK(power_density(PowerExponent(0.5), 1.0) ==
        doctest::Approx(0.5641895835477563).epsilon(1e-13));  // 1/sqrt(pi)
  CHECK(power_density(PowerExponent(2.0), 3.0) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK_THROWS_AS(power_density(PowerExponent(0.5), -1.0), std::domain_error);
  CHECK_THROWS_AS(power_density(PowerExponent(0.0), 1.0), std::domain_error);
  CHECK_THROWS_AS(PowerExponent(-0.1), std::invalid_argument);
}

TEST_CASE("power density analytic continuation vanishes at poles") {
  CHECK(power_density_ac(0.0, 0.3) == 0.0);
  CHECK(power_density_ac(-2.0, 0.3) == 0.0);
  CHECK(power_density_ac(0.5, 2.0) ==
        doctest::Approx(power_density(PowerExponent(0.5), 2.0)).epsilon(1e-14));
}

TEST_CASE("beta density values") {
  CHECK(beta_density(1, 1, 0.3) == doctest::Approx(1.0));
  CHECK(beta_density(2, 1, 0.5) == doctest::Approx(1.0));
  // arcsine density 1/(pi sqrt(u(1-u)))
  CHECK(beta_density(0.5, 0.5, 0.5) == doctest::Approx(0.6366197723675814).epsilon(1e-13));
  CHECK_THROWS_AS(beta_density(1, 1, 0.0), std::domain_error);
  CHECK_THROWS_AS(beta_density(1, 1, 1.0), std::domain_error);
  CHECK_THROWS_AS(beta_density(-1, 1, 0.5), std::invalid_argument);
}

TEST_CASE("beta density integrates to one on a parameter grid") {
  QuadratureSpec spec;
  for (double a : {0.3, 1.0, 2.5, 5.0}) {
    for (double b : {0.4, 1.0, 3.0, 5.0}) {
      // the xc form keeps the complement 1-u exact against the endpoint
      // singularity when b < 1
      const double lg = log_gamma(a + b) - log_gamma(a) - log_gamma(b);
      auto f = [a, b, lg](double u, double xc) {
        const double om = xc > 0.0 ? xc : 1.0 - u;
        return std::exp(lg + (a - 1.0) * std::log(u) + (b - 1.0) * std::log(om));
      };
      const double total = integrate_finite_sing(f, 0.0, 1.0, spec).value;
      CHECK(std::abs(total - 1.0) < 1e-10);
    }
  }
}
