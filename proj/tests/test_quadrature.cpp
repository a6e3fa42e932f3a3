#include <doctest.h>

#include <cmath>

#include "mlconv/quadrature.hpp"
#include "mlconv/special.hpp"

using namespace mlconv;

TEST_CASE("semi-infinite quadrature hits the gamma-function oracle") {
  QuadratureSpec spec;
  // Gamma(s) = int_0^inf u^{s-1} e^{-u} du, s in {0.5, 1, 2.5}
  for (double s : {0.5, 1.0, 2.5}) {
    auto f = [s](double u) { return std::exp(-u + (s - 1.0) * std::log(u)); };
    const double got = integrate_semiinf(f, spec).value;
    const double want = std::exp(log_gamma(s));
    CHECK(std::abs(got - want) < 1e-10 * want);
  }
}

TEST_CASE("semi-infinite quadrature trivia") {
  QuadratureSpec spec;
  CHECK(integrate_semiinf([](double u) { return std::exp(-u); }, spec).value ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(integrate_semiinf([](double u) { return u * std::exp(-u); }, spec).value ==
        doctest::Approx(1.0).epsilon(1e-12));
  // Gamma(1/2) = sqrt(pi)
  CHECK(integrate_semiinf([](double u) { return std::exp(-u) / std::sqrt(u); }, spec).value ==
        doctest::Approx(1.7724538509055160).epsilon(1e-11));
}

TEST_CASE("finite quadrature handles endpoint singularities") {
  QuadratureSpec spec;
  // int_0^1 u^{-1/2} du = 2
  CHECK(integrate_finite([](double u) { return 1.0 / std::sqrt(u); }, 0.0, 1.0, spec).value ==
        doctest::Approx(2.0).epsilon(1e-11));
  // int_0^2 (2-u)^{-0.3} du = 2^{0.7}/0.7
  CHECK(integrate_finite([](double u) { return std::pow(2.0 - u, -0.3); }, 0.0, 2.0, spec).value ==
        doctest::Approx(std::pow(2.0, 0.7) / 0.7).epsilon(1e-11));
}

TEST_CASE("density integration folds heavy tails") {
  QuadratureSpec spec;
  // Cauchy-like density on (0,inf): 2/(pi (1+t^2)), integrates to 1
  auto f = [](double t) { return 2.0 / (M_PI * (1.0 + t * t)); };
  CHECK(integrate_density(f, spec).value == doctest::Approx(1.0).epsilon(1e-11));
}

TEST_CASE("spec validation") {
  QuadratureSpec spec;
  spec.max_nodes = 10;
  CHECK_THROWS_AS(integrate_semiinf([](double) { return 0.0; }, spec), std::invalid_argument);
  spec = {};
  spec.rel_tol = 2.0;
  CHECK_THROWS_AS(integrate_semiinf([](double) { return 0.0; }, spec), std::invalid_argument);
}

TEST_CASE("insufficient budget and hopeless integrands are reported") {
  QuadratureSpec tight;
  tight.max_nodes = 16;  // four refinement levels
  CHECK_THROWS_AS(
      integrate_finite([](double u) { return std::pow(u, -0.98); }, 0.0, 1.0, tight),
      QuadratureError);
  // non-integrable endpoint singularity
  QuadratureSpec spec;
  CHECK_THROWS_AS(integrate_finite([](double u) { return std::pow(u, -1.5); }, 0.0, 1.0, spec),
                  QuadratureError);
}

TEST_CASE("singularity-aware variant resolves the upper endpoint exactly") {
  QuadratureSpec spec;
  // int_0^1 (1-u)^{-0.7} du = 1/0.3; the one-argument form cannot represent
  // 1-u near 1, the xc form can
  auto f = [](double u, double xc) {
    const double one_minus = xc > 0.0 ? xc : 1.0 - u;
    return std::pow(one_minus, -0.7);
  };
  CHECK(integrate_finite_sing(f, 0.0, 1.0, spec).value ==
        doctest::Approx(1.0 / 0.3).epsilon(1e-12));
}
