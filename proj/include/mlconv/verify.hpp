#pragma once

#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "mlconv/quadrature.hpp"

namespace mlconv {

// One density <-> Laplace-transform correspondence from the paper's tables,
// replayed as a numeric residual check. Evaluators are wired by name through
// a registry; unknown handles are reported at wiring time.
struct GoldenCase {
  enum class Kind {
    LaplaceDuality,   // numeric LT of density vs transform on x_grid
    QKernelDuality,   // LT of the signed q kernel (atom-aware) vs transform
    ProductMoments,   // E[U^k]E[V^k] vs the moment formula, k from x_grid
  };

  std::string id;
  Kind kind = Kind::LaplaceDuality;
  std::string density_handle;
  std::vector<double> density_params;
  std::string transform_handle;
  std::vector<double> transform_params;
  std::vector<double> x_grid;
  double tol = 1e-6;
  std::string source;  // table/row citation

  void validate() const;
};

struct VerifyReport {
  std::string id;
  std::string source;
  std::vector<double> residuals;
  double max_residual = 0.0;
  bool pass = false;
  double wall_ms = 0.0;
  std::string note;  // non-empty when the case failed to evaluate
};

// int_0^inf e^{-xt} density(t) dt, evaluated on the e^{-s} scale via t = s/x.
double numeric_laplace(const std::function<double(double)>& density, double x,
                       const QuadratureSpec& quad = {});

struct EmpiricalLaplace {
  double estimate = 0.0;
  double std_error = 0.0;
};

EmpiricalLaplace empirical_laplace(std::span<const double> samples, double x);

// Residual metric: |lt - transform| / max(1, |transform|).
double duality_residual(double lt, double transform);

std::vector<VerifyReport> run_golden(const std::vector<GoldenCase>& cases,
                                     const QuadratureSpec& quad = {});

// Built-in suites replaying the paper's tables. Valid names:
// table1..table5, all.
std::vector<GoldenCase> builtin_suite(const std::string& name);

void write_reports_jsonl(std::ostream& os, const std::vector<VerifyReport>& reports);
std::string summary_table(const std::vector<VerifyReport>& reports);

namespace detail {
std::function<double(double)> make_density(const std::string& handle,
                                           const std::vector<double>& params,
                                           const QuadratureSpec& quad);
std::function<double(double)> make_transform(const std::string& handle,
                                             const std::vector<double>& params,
                                             const QuadratureSpec& quad);
}  // namespace detail

}  // namespace mlconv
