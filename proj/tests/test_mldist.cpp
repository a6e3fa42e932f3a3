#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "mlconv/mldist.hpp"
#include "mlconv/mlfunc.hpp"
#include "mlconv/verify.hpp"
#include "oracles.hpp"

using namespace mlconv;

namespace {

// moment formula straight from lgamma; matches the paper's general-exponent form
double moment_oracle(double a, double b, double g, double th, double r) {
  const double ge = g + th / a, be = b + th;
  return std::exp(std::lgamma(be) + std::lgamma(ge + r) - std::lgamma(ge) -
                  std::lgamma(a * r + be));
}

// half-normal closed form of the 1-parameter law at alpha = 1/2
double p_half_oracle(double u) { return std::exp(-u * u / 4.0) / std::sqrt(M_PI); }

// 3-/4-parameter series with 1/Gamma through std::tgamma poles
double ml_series_oracle(double a, double b, double g, double th, double u) {
  const double ge = g + th / a, be = b + th, D = b - a * g;
  double s = 0.0;
  double fact = 1.0;
  for (int k = 0; k < 200; ++k) {
    if (k > 0) fact *= k;
    const double ga = std::tgamma(D - a * k);  // +-inf at poles -> term 0
    s += std::pow(-u, k) / fact / ga;
  }
  return std::exp(std::lgamma(be) - std::lgamma(ge)) * std::pow(u, ge - 1.0) * s;
}

const std::vector<MLParams> kParamSets = {
    {0.5, 1.0, 1.0, 0.0}, {0.5, 1.0, 1.0, 1.0}, {0.5, 1.2, 1.0, 0.0},
    {0.4, 1.0, 1.0, -0.2}, {0.5, 1.0, 0.0, 1.0}};

}  // namespace

TEST_CASE("admissibility is checked at construction") {
  CHECK_THROWS_AS(MLParams(1.0, 1, 1, 0), std::invalid_argument);
  CHECK_THROWS_AS(MLParams(0.5, 0.4, 1, 0), std::invalid_argument);   // beta <= alpha gamma
  CHECK_THROWS_AS(MLParams(0.5, 1, 1, -0.5), std::invalid_argument);  // -theta >= alpha gamma
  CHECK_THROWS_AS(MLParams(0.5, 1, 0, 0), std::invalid_argument);     // BML needs theta > 0
  CHECK_NOTHROW(MLParams(0.5, 1, 0, 1));
  CHECK_THROWS_AS(ml_density(MLParams(0.5, 1, 1, 0), 0.0), std::domain_error);
}

TEST_CASE("half-normal closed forms at alpha = 1/2") {
  const MLParams p0(0.5, 1, 1, 0);
  CHECK(ml_density(p0, 1e-8) == doctest::Approx(0.5641895835477563).epsilon(1e-7));
  CHECK(ml_density(p0, 1.0) == doctest::Approx(0.4393912894677224).epsilon(1e-10));
  for (double u : {0.3, 1.0, 2.5, 5.0}) {
    CHECK(ml_density(p0, u) == doctest::Approx(p_half_oracle(u)).epsilon(1e-9));
  }
  // tilted: p_{1/2,1}(u) = (1/2) u^2 e^{-u^2/4}/sqrt(pi)
  const MLParams p1(0.5, 1, 1, 1);
  CHECK(ml_density(p1, 1.0) == doctest::Approx(0.2196956447338612).epsilon(1e-9));
  // series route equals the closed form too
  CHECK(ml_density(p1, 1.0, ConvMethod::ReciprocalGammaSeries) ==
        doctest::Approx(0.5 * p_half_oracle(1.0)).epsilon(1e-8));
}

TEST_CASE("reduction chain against the transform route") {
  // generic alpha: the powerconv route (explicit method) must match the
  // stable-transform closed form f_alpha(u^{-1/alpha}) u^{-1/alpha-1}/alpha
  for (double alpha : {0.4, 0.6}) {
    const MLParams p(alpha, 1, 1, 0);
    for (double u : {0.4, 1.0, 2.0}) {
      const double transform_route = ml_one_density(alpha, u);
      const double conv_route = ml_density(p, u, ConvMethod::StableMixtureQuadrature);
      CHECK(conv_route == doctest::Approx(transform_route).epsilon(1e-8));
    }
  }
}

TEST_CASE("3-parameter and BML series reductions") {
  const MLParams p3(0.5, 1.2, 1.0, 0.0);
  const MLParams bml(0.5, 0.8, 0.0, 1.0);
  for (double u : {0.3, 1.0, 2.0}) {
    CHECK(ml_density(p3, u) ==
          doctest::Approx(ml_series_oracle(0.5, 1.2, 1.0, 0.0, u)).epsilon(1e-8));
    CHECK(ml_density(bml, u) ==
          doctest::Approx(ml_series_oracle(0.5, 0.8, 0.0, 1.0, u)).epsilon(1e-8));
  }
}

TEST_CASE("moments: trivial, gamma oracle, preconditions") {
  const MLParams p0(0.5, 1, 1, 0);
  CHECK(ml_moment(p0, 0.0) == doctest::Approx(1.0));
  CHECK(ml_moment(p0, 1.0) == doctest::Approx(1.1283791670955126).epsilon(1e-13));
  const MLParams p1(0.5, 1, 1, 1);
  CHECK(ml_moment(p1, 1.0) == doctest::Approx(2.2567583341910253).epsilon(1e-13));
  for (const auto& p : kParamSets) {
    for (double r : {-0.3, 0.5, 1.0, 2.0, 3.5}) {
      if (r <= -p.gamma_eff()) continue;
      CHECK(ml_moment(p, r) ==
            doctest::Approx(moment_oracle(p.alpha, p.beta, p.gamma_, p.theta, r)).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(ml_moment(p0, -1.0), std::domain_error);
}

TEST_CASE("normalising constant") {
  CHECK(ml_norm_const(0.5, 1.0, 0.0) == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(ml_norm_const(0.5, 1.0, 1.0) == doctest::Approx(1.0 / 6.0).epsilon(1e-13));
  // beta -> 0 cancels pairwise
  CHECK(ml_norm_const(0.7, 1e-14, 0.4) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK_THROWS_AS(ml_norm_const(0.5, -1.0, 0.5), std::invalid_argument);
}

TEST_CASE("product factors and the telescoping moment identity") {
  const ProductFactors f0 = product_factors(MLParams(0.5, 1, 1, 0));
  CHECK(f0.beta_a == doctest::Approx(1.0));
  CHECK(f0.beta_b == doctest::Approx(1.0));
  CHECK(f0.ml2_theta == doctest::Approx(1.0));
  const ProductFactors fb = product_factors(MLParams(0.5, 1, 0, 1));
  CHECK(fb.beta_a == doctest::Approx(2.0));
  CHECK(fb.beta_b == doctest::Approx(2.0));
  CHECK(fb.ml2_theta == doctest::Approx(2.0));
  // E[U] E[V] at k=1 for (0.5,1,1,1)
  const MLParams p(0.5, 1, 1, 1);
  const ProductFactors f = product_factors(p);
  const double eu = f.beta_a / (f.beta_a + f.beta_b);
  const double ev = moment_oracle(0.5, 1.0, 1.0, f.ml2_theta, 1.0);
  CHECK(eu * ev == doctest::Approx(2.2567583341910253).epsilon(1e-12));
  // full identity k = 0..6 in log-gamma space over a parameter grid
  for (const auto& pp : kParamSets) {
    if (!(pp.beta / pp.alpha - pp.gamma_ > 0.0)) continue;
    const ProductFactors g = product_factors(pp);
    for (int k = 0; k <= 6; ++k) {
      const double lg_u = std::lgamma(g.beta_a + g.beta_b) + std::lgamma(g.beta_a + k) -
                          std::lgamma(g.beta_a) - std::lgamma(g.beta_a + g.beta_b + k);
      const double lhs = std::exp(lg_u) * moment_oracle(pp.alpha, 1.0, 1.0, g.ml2_theta, k);
      const double rhs = ml_moment(pp, k);
      CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
    }
  }
  // the degenerate beta factor beta/alpha - gamma <= 0 would need
  // beta <= alpha*gamma, which admissibility already excludes
  CHECK_THROWS_AS(MLParams(0.5, 0.6, 1.2, 0.8), std::invalid_argument);
}

TEST_CASE("normalization and moment-density consistency") {
  QuadratureSpec quad;
  for (const auto& p : kParamSets) {
    auto f = [&](double u) { return ml_density(p, u, ConvMethod::Auto, quad); };
    const double total = integrate_density(f, quad).value;
    CHECK(std::abs(total - 1.0) < 1e-7);
    for (int k = 1; k <= 3; ++k) {
      auto fk = [&](double u) {
        const double d = f(u);
        if (d == 0.0) return 0.0;  // tail underflow before the power blows up
        return std::pow(u, k) * d;
      };
      const double mk = integrate_density(fk, quad).value;
      const double want = ml_moment(p, k);
      CHECK(std::abs(mk - want) < 1e-5 * std::max(1.0, want));
    }
  }
}

TEST_CASE("Laplace duality against the Mittag-Leffler function") {
  QuadratureSpec quad;
  for (const auto& p : kParamSets) {
    const PrabhakarParams q(p.alpha, p.beta_eff(), p.gamma_eff());
    const double pref = std::exp(std::lgamma(p.beta_eff()));
    auto f = [&](double u) { return ml_density(p, u, ConvMethod::Auto, quad); };
    for (double x : {0.5, 1.0, 2.0, 5.0}) {
      const double lt = numeric_laplace(f, x, quad);
      const double want = pref * mittag_leffler(q, x, quad);
      CHECK(std::abs(lt - want) < 1e-6 * std::max(1.0, std::abs(want)));
    }
  }
}

TEST_CASE("stable-transform sampler hits the mean") {
  const MLParams p(0.5, 1, 1, 0);
  Rng rng(2024);
  const auto draws = ml_sample(p, 100000, rng);
  const double m = oracles::mean(draws);
  const double se = oracles::std_error(draws);
  CHECK(std::abs(m - 1.1283791670955126) < 4.0 * se);
}

TEST_CASE("tilted Metropolis matches the first two moments") {
  const MLParams p(0.5, 1, 1, 1);
  Rng rng(7);
  const auto draws = ml_sample(p, 100000, rng, SampleStrategy::TiltedMetropolis);
  for (int k : {1, 2}) {
    std::vector<double> powd(draws.size());
    for (std::size_t i = 0; i < draws.size(); ++i) powd[i] = std::pow(draws[i], k);
    const double se = oracles::batch_means_se(powd, 200);
    const double want = moment_oracle(0.5, 1, 1, 1, k);
    CHECK(std::abs(oracles::mean(powd) - want) < 4.0 * se);
  }
}

TEST_CASE("beta-product sampler for a general parameter set") {
  const MLParams p(0.5, 1.2, 1.0, 0.7);
  Rng rng(11);
  const auto draws = ml_sample(p, 100000, rng, SampleStrategy::BetaProduct);
  for (int k : {1, 2}) {
    std::vector<double> powd(draws.size());
    for (std::size_t i = 0; i < draws.size(); ++i) powd[i] = std::pow(draws[i], k);
    const double se = oracles::batch_means_se(powd, 200);
    const double want = ml_moment(p, k);
    CHECK(std::abs(oracles::mean(powd) - want) < 4.0 * se);
  }
}

TEST_CASE("sampling is deterministic under a fixed seed") {
  const MLParams p(0.5, 1.2, 1.0, 0.7);
  Rng r1(99), r2(99);
  CHECK(ml_sample(p, 200, r1) == ml_sample(p, 200, r2));
  CHECK_THROWS_AS(ml_sample(MLParams(0.5, 1.2, 1, 0.7), 10, r1, SampleStrategy::StableTransform),
                  std::invalid_argument);
  CHECK_THROWS_AS(ml_sample(MLParams(0.5, 1.2, 1, 0.7), 10, r1, SampleStrategy::TiltedMetropolis),
                  std::invalid_argument);
}

TEST_CASE("one MLMC step maps ML(alpha,theta+n) to ML(alpha,theta+n-1)") {
  // exact ML(1/2, m) draws via T = 2 sqrt(Gamma(m + 1/2)): the density is
  // proportional to t^{2m} e^{-t^2/4}
  Rng rng(31337);
  const int n = 1;
  const double theta = 0.0, alpha = 0.5;
  std::vector<double> out(100000);
  for (auto& x : out) {
    const double t_n = 2.0 * std::sqrt(rng.gamma(theta + n + 0.5));
    x = mlmc_step(alpha, theta, n, t_n, rng);
  }
  const double m = oracles::mean(out);
  const double se = oracles::std_error(out);
  CHECK(std::abs(m - 1.1283791670955126) < 4.0 * se);  // ML(1/2,0) mean = 2/sqrt(pi)

  // degenerate beta limit: b -> 0 gives u = 1
  Rng rng2(5);
  const double step = mlmc_step(1.0 - 1e-12, 0.0, 1, 3.14, rng2);
  CHECK(step == doctest::Approx(3.14).epsilon(1e-9));
  CHECK_THROWS_AS(mlmc_step(0.5, -1.2, 1, 1.0, rng2), std::invalid_argument);
  CHECK_THROWS_AS(mlmc_step(0.5, 0.0, 0, 1.0, rng2), std::invalid_argument);
  CHECK_THROWS_AS(mlmc_step(0.5, 0.0, 1, -1.0, rng2), std::domain_error);
}
