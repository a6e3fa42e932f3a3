#include "mlconv/mldist.hpp"

#include <cmath>

#include "mlconv/special.hpp"

namespace mlconv {

namespace {

constexpr double kReductionTol = 1e-12;
constexpr std::size_t kBurnIn = 1000;

bool has_stable_reduction(const MLParams& p) {
  return std::abs(p.conv_order() - (1.0 - p.alpha)) <= kReductionTol;
}

double tilt_log_weight(double exponent, double t_new, double t_old) {
  return exponent * (std::log(t_new) - std::log(t_old));
}

// Independence Metropolis chain for the polynomially tilted law
// t^{theta/alpha} p_alpha(t), proposing from p_alpha via the stable transform.
class TiltedChain {
 public:
  TiltedChain(double alpha, double tilt_exponent, Rng& rng)
      : spec_(alpha, 1.0), exponent_(tilt_exponent), rng_(rng) {
    state_ = propose();
    for (std::size_t i = 0; i < kBurnIn; ++i) step();
  }

  double step() {
    const double cand = propose();
    const double logw = tilt_log_weight(exponent_, cand, state_);
    if (logw >= 0.0 || std::log(rng_.uniform_pos()) < logw) state_ = cand;
    return state_;
  }

 private:
  double propose() { return std::pow(stable_sample_one(spec_, rng_), -spec_.alpha); }

  StableSpec spec_;
  double exponent_;
  Rng& rng_;
  double state_;
};

}  // namespace

double ml_one_density(double alpha, double u, const QuadratureSpec& quad) {
  if (!(u > 0.0)) throw std::domain_error("ml_one_density: requires u > 0");
  const StableSpec s(alpha, 1.0);
  const double arg = std::pow(u, -1.0 / alpha);
  if (!(arg > 0.0) || !std::isfinite(arg)) return 0.0;  // u outside the transform's range
  const double d = stable_density(s, arg, StableMethod::Auto, quad);
  if (d <= 0.0) return 0.0;
  return std::exp(std::log(d) + std::log(arg) - std::log(alpha) - std::log(u));
}

double ml_density(const MLParams& p, double u, ConvMethod method, const QuadratureSpec& quad) {
  if (!(u > 0.0)) throw std::domain_error("ml_density: requires u > 0");
  const double ge = p.gamma_eff();
  const double log_pref = log_gamma(p.beta_eff()) + (ge - 1.0) * std::log(u) - log_gamma(ge);
  double base;
  if (method == ConvMethod::Auto && has_stable_reduction(p)) {
    base = ml_one_density(p.alpha, u, quad);
  } else {
    base = powerconv_density(PowerExponent(p.conv_order()), StableSpec(p.alpha, u), 1.0, method,
                             quad);
  }
  // deep in the tail the convolution underflows while the prefactor grows;
  // assemble in log space and keep inf * 0 out
  if (base <= 0.0) return 0.0;
  return std::exp(log_pref + std::log(base));
}

double ml_moment(const MLParams& p, double r) {
  const double ge = p.gamma_eff();
  if (!(r > -ge))
    throw std::domain_error("ml_moment: requires r > -gamma - theta/alpha");
  const double be = p.beta_eff();
  return std::exp(log_gamma(be) + log_gamma(ge + r) - log_gamma(ge) -
                  log_gamma(p.alpha * r + be));
}

double ml_norm_const(double alpha, double beta, double theta) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("ml_norm_const: requires 0 < alpha < 1");
  if (!(beta + theta > 0.0))
    throw std::invalid_argument("ml_norm_const: requires beta + theta > 0");
  if (!(theta / alpha > -1.0))
    throw std::invalid_argument("ml_norm_const: requires theta/alpha > -1");
  return std::exp(log_gamma(1.0 + beta + theta) + log_gamma(1.0 + theta / alpha) -
                  log_gamma(1.0 + (beta + theta) / alpha) - log_gamma(1.0 + theta));
}

ProductFactors product_factors(const MLParams& p) {
  ProductFactors f;
  f.beta_a = p.theta / p.alpha + p.gamma_;
  f.beta_b = p.beta / p.alpha - p.gamma_;
  f.ml2_theta = p.beta + p.theta;
  if (!(f.beta_a > 0.0))
    throw std::domain_error("product_factors: requires theta/alpha + gamma > 0");
  if (!(f.beta_b > 0.0))
    throw std::domain_error("product_factors: requires beta/alpha - gamma > 0 (degenerate beta factor)");
  return f;
}

std::vector<double> ml_sample(const MLParams& p, std::size_t n, Rng& rng,
                              SampleStrategy strategy) {
  if (strategy == SampleStrategy::Auto) {
    if (p.is_one_parameter())
      strategy = SampleStrategy::StableTransform;
    else if (p.is_two_parameter())
      strategy = SampleStrategy::TiltedMetropolis;
    else
      strategy = SampleStrategy::BetaProduct;
  }
  std::vector<double> out(n);
  switch (strategy) {
    case SampleStrategy::StableTransform: {
      if (!p.is_one_parameter())
        throw std::invalid_argument("ml_sample: StableTransform requires (alpha,1,1,0)");
      const StableSpec s(p.alpha, 1.0);
      for (auto& x : out) x = std::pow(stable_sample_one(s, rng), -p.alpha);
      return out;
    }
    case SampleStrategy::TiltedMetropolis: {
      if (!p.is_two_parameter())
        throw std::invalid_argument("ml_sample: TiltedMetropolis requires (alpha,1,1,theta)");
      TiltedChain chain(p.alpha, p.theta / p.alpha, rng);
      for (auto& x : out) x = chain.step();
      return out;
    }
    case SampleStrategy::BetaProduct: {
      const ProductFactors f = product_factors(p);
      TiltedChain chain(p.alpha, f.ml2_theta / p.alpha, rng);
      for (auto& x : out) x = chain.step() * rng.beta(f.beta_a, f.beta_b);
      return out;
    }
    case SampleStrategy::Auto:
      break;
  }
  throw std::invalid_argument("ml_sample: unknown strategy");
}

double mlmc_step(double alpha, double theta, int n, double t_n, Rng& rng) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("mlmc_step: requires 0 < alpha < 1");
  if (n < 1) throw std::invalid_argument("mlmc_step: requires n >= 1");
  if (!(t_n > 0.0)) throw std::domain_error("mlmc_step: requires t_n > 0");
  const double a = (theta + n - 1.0) / alpha + 1.0;
  const double b = 1.0 / alpha - 1.0;
  if (!(a > 0.0)) throw std::invalid_argument("mlmc_step: requires theta + n - 1 > -alpha");
  return t_n * rng.beta(a, b);
}

}  // namespace mlconv
