#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

namespace mlconv {

// Tolerances and budget for the adaptive quadratures used throughout the
// library. Semi-infinite integrals are truncated where the exponential
// envelope drops below abs_tol * tail_cut_factor.
struct QuadratureSpec {
  double rel_tol = 1e-11;
  double abs_tol = 1e-14;
  int max_nodes = 32768;
  double tail_cut_factor = 0.1;

  void validate() const {
    if (!(rel_tol > 0.0 && rel_tol < 1.0))
      throw std::invalid_argument("QuadratureSpec: rel_tol must be in (0,1)");
    if (!(abs_tol > 0.0 && abs_tol < 1.0))
      throw std::invalid_argument("QuadratureSpec: abs_tol must be in (0,1)");
    if (max_nodes < 15)
      throw std::invalid_argument("QuadratureSpec: max_nodes must be >= 15");
    if (!(tail_cut_factor > 0.0))
      throw std::invalid_argument("QuadratureSpec: tail_cut_factor must be > 0");
  }
};

class QuadratureError : public std::runtime_error {
 public:
  explicit QuadratureError(const std::string& what) : std::runtime_error(what) {}
};

class EvaluationError : public std::runtime_error {
 public:
  explicit EvaluationError(const std::string& what) : std::runtime_error(what) {}
};

struct QuadResult {
  double value = 0.0;
  double error = 0.0;  // absolute error estimate
  double l1 = 0.0;     // L1 mass seen by the rule; |value|/l1 gauges cancellation
};

// Integral of f over (a, b). Endpoint singularities are fine as long as f is
// integrable; f is never called at the endpoints themselves.
QuadResult integrate_finite(const std::function<double(double)>& f, double a, double b,
                            const QuadratureSpec& spec);

// Variant for integrands singular at an endpoint: f receives (x, xc) with
// xc = nearest_endpoint - x, so near b the exact complement b - x is xc and
// near a it is -xc. Needed when 1 - u underflows against the singularity.
QuadResult integrate_finite_sing(const std::function<double(double, double)>& f, double a,
                                 double b, const QuadratureSpec& spec);

// Integral of f over (0, inf) for integrands with a (sub)exponentially
// decaying envelope. A possible power singularity at 0 is handled by a
// double-exponential rule on (0,1); the tail uses an exp-sinh rule.
QuadResult integrate_semiinf(const std::function<double(double)>& f, const QuadratureSpec& spec);

// Integral of f over (a, inf), f smooth there with decaying envelope.
QuadResult integrate_from(const std::function<double(double)>& f, double a,
                          const QuadratureSpec& spec);

// Integral of a density-like f over (0, inf) that may have a heavy algebraic
// tail: folds (1, inf) onto (0, 1) through t -> 1/t.
QuadResult integrate_density(const std::function<double(double)>& f, const QuadratureSpec& spec);

}  // namespace mlconv
