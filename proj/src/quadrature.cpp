#include "mlconv/quadrature.hpp"

#include <algorithm>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <memory>
#include <vector>

namespace mlconv {

namespace {

int refinements_for(int max_nodes) {
  // tanh_sinh roughly doubles the node count per level
  int levels = 4;
  while ((1 << levels) < max_nodes && levels < 15) ++levels;
  return levels;
}

// err and l1 are the absolute error estimate and L1 norm reported by the rule.
// The gate is deliberately loose (~7 digits relative): nested quadratures sit
// on the inner rule's noise floor long before the requested tolerance, and the
// returned error field stays authoritative for callers that need more.
bool acceptable(double value, double err, double l1, const QuadratureSpec& spec) {
  if (err <= 100.0 * spec.abs_tol) return true;
  if (err <= 10.0 * spec.rel_tol * l1) return true;
  return err <= 1e-7 * std::max(std::abs(value), l1);
}

template <class Call>
QuadResult run_rule(const QuadratureSpec& spec, Call&& call) {
  spec.validate();
  double err = 0.0, l1 = 0.0;
  std::size_t levels = 0;
  double value;
  try {
    value = call(std::clamp(spec.rel_tol, 1e-15, 0.1), err, l1, levels);
  } catch (const std::exception& e) {
    throw QuadratureError(std::string("quadrature failed: ") + e.what());
  }
  if (!std::isfinite(value))
    throw QuadratureError("quadrature produced a non-finite value");
  if (!acceptable(value, err, l1, spec) && (int)levels >= refinements_for(spec.max_nodes) - 1)
    throw QuadratureError("quadrature did not converge within the node budget");
  return {value, err, l1};
}

}  // namespace

// Nested integrals are everywhere here (mixtures integrate densities that are
// themselves quadratures), and boost's rules extend their node caches during
// integrate(), so a recursive call must never reuse the instance the outer
// call is iterating over. Each thread keeps one instance per nesting depth.
template <class Rule>
class RulePool {
 public:
  class Lease {
   public:
    Lease(RulePool& pool, int max_levels) : pool_(pool) {
      if (pool_.depth_ == (int)pool_.stack_.size())
        pool_.stack_.emplace_back(std::make_unique<Rule>(15));
      rule_ = max_levels >= 15 ? pool_.stack_[pool_.depth_].get() : nullptr;
      if (!rule_) owned_ = std::make_unique<Rule>(max_levels), rule_ = owned_.get();
      ++pool_.depth_;
    }
    ~Lease() { --pool_.depth_; }
    Rule& rule() { return *rule_; }

   private:
    RulePool& pool_;
    Rule* rule_ = nullptr;
    std::unique_ptr<Rule> owned_;
  };

 private:
  std::vector<std::unique_ptr<Rule>> stack_;
  int depth_ = 0;
};

using TanhSinh = boost::math::quadrature::tanh_sinh<double>;
using ExpSinh = boost::math::quadrature::exp_sinh<double>;

thread_local RulePool<TanhSinh> tanh_sinh_pool;
thread_local RulePool<ExpSinh> exp_sinh_pool;

template <class F>
static double tanh_sinh_run(const F& f, double a, double b, const QuadratureSpec& spec,
                            double tol, double& err, double& l1, std::size_t& levels) {
  RulePool<TanhSinh>::Lease lease(tanh_sinh_pool, refinements_for(spec.max_nodes));
  return lease.rule().integrate(f, a, b, tol, &err, &l1, &levels);
}

template <class F>
static double exp_sinh_run(const F& f, double tol, double& err, double& l1) {
  RulePool<ExpSinh>::Lease lease(exp_sinh_pool, 15);
  return lease.rule().integrate(f, tol, &err, &l1);
}

QuadResult integrate_finite(const std::function<double(double)>& f, double a, double b,
                            const QuadratureSpec& spec) {
  if (!(a < b)) throw std::invalid_argument("integrate_finite: requires a < b");
  return run_rule(spec, [&](double tol, double& err, double& l1, std::size_t& levels) {
    return tanh_sinh_run(f, a, b, spec, tol, err, l1, levels);
  });
}

QuadResult integrate_finite_sing(const std::function<double(double, double)>& f, double a,
                                 double b, const QuadratureSpec& spec) {
  if (!(a < b)) throw std::invalid_argument("integrate_finite_sing: requires a < b");
  return run_rule(spec, [&](double tol, double& err, double& l1, std::size_t& levels) {
    return tanh_sinh_run(f, a, b, spec, tol, err, l1, levels);
  });
}

QuadResult integrate_semiinf(const std::function<double(double)>& f, const QuadratureSpec& spec) {
  QuadResult head = run_rule(spec, [&](double tol, double& err, double& l1, std::size_t& levels) {
    return tanh_sinh_run(f, 0.0, 1.0, spec, tol, err, l1, levels);
  });
  QuadResult tail = run_rule(spec, [&](double tol, double& err, double& l1, std::size_t& levels) {
    double v = exp_sinh_run([&f](double u) { return f(u + 1.0); }, tol, err, l1);
    levels = 5;  // exp_sinh does not report levels
    return v;
  });
  return {head.value + tail.value, head.error + tail.error, head.l1 + tail.l1};
}

QuadResult integrate_from(const std::function<double(double)>& f, double a,
                          const QuadratureSpec& spec) {
  return run_rule(spec, [&](double tol, double& err, double& l1, std::size_t& levels) {
    double v = exp_sinh_run([&f, a](double u) { return f(u + a); }, tol, err, l1);
    levels = 5;
    return v;
  });
}

QuadResult integrate_density(const std::function<double(double)>& f, const QuadratureSpec& spec) {
  QuadResult head = run_rule(spec, [&](double tol, double& err, double& l1, std::size_t& levels) {
    return tanh_sinh_run(f, 0.0, 1.0, spec, tol, err, l1, levels);
  });
  // below v ~ 1e-150 the folded tail is beyond t ~ 1e150 and contributes
  // nothing an integrable density could accumulate
  const auto folded = [&f](double v) {
    if (v < 1e-150) return 0.0;
    return f(1.0 / v) / (v * v);
  };
  QuadResult tail = run_rule(spec, [&](double tol, double& err, double& l1, std::size_t& levels) {
    return tanh_sinh_run(folded, 0.0, 1.0, spec, tol, err, l1, levels);
  });
  return {head.value + tail.value, head.error + tail.error, head.l1 + tail.l1};
}

}  // namespace mlconv
