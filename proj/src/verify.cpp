#include "mlconv/verify.hpp"

#include <chrono>
#include <cmath>
#include <json.hpp>
#include <limits>
#include <sstream>

#include "mlconv/mixtures.hpp"
#include "mlconv/mlfunc.hpp"
#include "mlconv/special.hpp"

namespace mlconv {

void GoldenCase::validate() const {
  if (x_grid.empty()) throw std::invalid_argument("GoldenCase '" + id + "': empty x_grid");
  for (double x : x_grid)
    if (!(x > 0.0))
      throw std::invalid_argument("GoldenCase '" + id + "': x_grid must be strictly positive");
  if (!(tol > 0.0 && tol < 0.1))
    throw std::invalid_argument("GoldenCase '" + id + "': tol must be in (0, 0.1)");
}

double numeric_laplace(const std::function<double(double)>& density, double x,
                       const QuadratureSpec& quad) {
  if (!(x > 0.0)) throw std::domain_error("numeric_laplace: requires x > 0");
  auto f = [&](double s) {
    if (s <= 0.0) return 0.0;
    return std::exp(-s) * density(s / x);
  };
  return integrate_semiinf(f, quad).value / x;
}

EmpiricalLaplace empirical_laplace(std::span<const double> samples, double x) {
  if (samples.empty()) throw std::invalid_argument("empirical_laplace: empty sample");
  double mean = 0.0;
  for (double s : samples) mean += std::exp(-x * s);
  mean /= (double)samples.size();
  double var = 0.0;
  for (double s : samples) {
    const double d = std::exp(-x * s) - mean;
    var += d * d;
  }
  var /= std::max<std::size_t>(1, samples.size() - 1);
  return {mean, std::sqrt(var / (double)samples.size())};
}

double duality_residual(double lt, double transform) {
  return std::abs(lt - transform) / std::max(1.0, std::abs(transform));
}

namespace detail {

namespace {

void need(const std::vector<double>& p, std::size_t n, const std::string& handle) {
  if (p.size() != n)
    throw std::invalid_argument("evaluator '" + handle + "' expects " + std::to_string(n) +
                                " parameters, got " + std::to_string(p.size()));
}

}  // namespace

std::function<double(double)> make_density(const std::string& handle,
                                           const std::vector<double>& params,
                                           const QuadratureSpec& quad) {
  if (handle == "stable") {
    need(params, 2, handle);
    const StableSpec s(params[0], params[1]);
    return [s, quad](double t) { return stable_density(s, t, StableMethod::Auto, quad); };
  }
  if (handle == "ml") {
    need(params, 4, handle);
    const MLParams p(params[0], params[1], params[2], params[3]);
    return [p, quad](double u) { return ml_density(p, u, ConvMethod::Auto, quad); };
  }
  if (handle == "ml_reduction") {
    // Gamma(beta+theta) rho_{gamma+theta/alpha}(t) p_alpha(t); requires
    // beta - alpha*gamma = 1 - alpha
    need(params, 4, handle);
    const MLParams p(params[0], params[1], params[2], params[3]);
    if (std::abs(p.conv_order() - (1.0 - p.alpha)) > 1e-12)
      throw std::invalid_argument("ml_reduction requires beta - alpha*gamma = 1 - alpha");
    return [p, quad](double t) {
      const double pref = std::exp(log_gamma(p.beta_eff()) - log_gamma(p.gamma_eff()) +
                                   (p.gamma_eff() - 1.0) * std::log(t));
      return pref * ml_one_density(p.alpha, t, quad);
    };
  }
  if (handle == "lamperti") {
    need(params, 2, handle);
    const double alpha = params[0], lambda = params[1];
    return [alpha, lambda](double t) { return lamperti_density(alpha, lambda, t); };
  }
  if (handle == "mixture") {
    need(params, 6, handle);
    const MixtureSpec s(params[0], params[1], MLParams(params[2], params[3], params[4], params[5]));
    return [s, quad](double t) { return mixture_density(s, t, MixtureMethod::MixQuadrature, quad); };
  }
  if (handle == "powerconv") {
    need(params, 3, handle);
    const PowerExponent nu(params[0]);
    const StableSpec s(params[1], params[2]);
    return [nu, s, quad](double t) { return powerconv_density(nu, s, t, ConvMethod::Auto, quad); };
  }
  throw std::invalid_argument("unknown density evaluator handle '" + handle + "'");
}

std::function<double(double)> make_transform(const std::string& handle,
                                             const std::vector<double>& params,
                                             const QuadratureSpec& quad) {
  if (handle == "prabhakar") {
    // pref * E^g_{a,b}(-x); params: a, b, g, pref
    need(params, 4, handle);
    const PrabhakarParams p(params[0], params[1], params[2]);
    const double pref = params[3];
    return [p, pref, quad](double x) { return pref * mittag_leffler(p, x, quad); };
  }
  if (handle == "prabhakar_comp") {
    // pref * E^g_{a,b}(-lambda x^sigma); params: a, b, g, pref, lambda, sigma
    need(params, 6, handle);
    const PrabhakarParams p(params[0], params[1], params[2]);
    const double pref = params[3], lambda = params[4], sigma = params[5];
    return [p, pref, lambda, sigma, quad](double x) {
      return pref * mittag_leffler(p, lambda * std::pow(x, sigma), quad);
    };
  }
  if (handle == "power_prabhakar") {
    // t^{b-1} E^g_{a,b}(-y t^a); params: a, b, g, y
    need(params, 4, handle);
    const PrabhakarParams p(params[0], params[1], params[2]);
    const double y = params[3];
    return [p, y, quad](double t) {
      return std::pow(t, p.beta - 1.0) * mittag_leffler(p, y * std::pow(t, p.alpha), quad);
    };
  }
  if (handle == "exp_stable") {
    // e^{-lambda x^alpha}; params: alpha, lambda
    need(params, 2, handle);
    const double alpha = params[0], lambda = params[1];
    return [alpha, lambda](double x) { return std::exp(-lambda * std::pow(x, alpha)); };
  }
  throw std::invalid_argument("unknown transform evaluator handle '" + handle + "'");
}

namespace {

VerifyReport run_case(const GoldenCase& c, const QuadratureSpec& quad) {
  VerifyReport r;
  r.id = c.id;
  r.source = c.source;
  const auto start = std::chrono::steady_clock::now();
  try {
    c.validate();
    if (c.kind == GoldenCase::Kind::ProductMoments) {
      const MLParams p(c.density_params[0], c.density_params[1], c.density_params[2],
                       c.density_params[3]);
      const ProductFactors f = product_factors(p);
      for (double kf : c.x_grid) {
        // log-gamma telescoping: Beta and ML(alpha, beta+theta) moments vs the 4-par formula
        const double lg_u = log_gamma(f.beta_a + f.beta_b) + log_gamma(f.beta_a + kf) -
                            log_gamma(f.beta_a) - log_gamma(f.beta_a + f.beta_b + kf);
        const MLParams v(p.alpha, 1.0, 1.0, f.ml2_theta);
        const double mu = std::exp(lg_u) * ml_moment(v, kf);
        const double target = ml_moment(p, kf);
        r.residuals.push_back(std::abs(mu - target) / std::max(1.0, std::abs(target)));
      }
    } else {
      const auto transform = detail::make_transform(c.transform_handle, c.transform_params, quad);
      if (c.kind == GoldenCase::Kind::QKernelDuality) {
        const QKernelParams qp(MLParams(c.density_params[0], c.density_params[1],
                                        c.density_params[2], c.density_params[3]),
                               c.density_params[4]);
        for (double x : c.x_grid)
          r.residuals.push_back(duality_residual(q_kernel_laplace(qp, x, quad), transform(x)));
      } else {
        const auto density = detail::make_density(c.density_handle, c.density_params, quad);
        for (double x : c.x_grid)
          r.residuals.push_back(duality_residual(numeric_laplace(density, x, quad), transform(x)));
      }
    }
    r.max_residual = 0.0;
    for (double v : r.residuals) r.max_residual = std::max(r.max_residual, v);
    r.pass = r.max_residual <= c.tol;
  } catch (const std::exception& e) {
    r.pass = false;
    r.max_residual = std::numeric_limits<double>::infinity();
    r.note = e.what();
  }
  r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                  .count();
  return r;
}

}  // namespace
}  // namespace detail

std::vector<VerifyReport> run_golden(const std::vector<GoldenCase>& cases,
                                     const QuadratureSpec& quad) {
  // resolve handles up front so wiring errors surface synchronously
  for (const auto& c : cases) {
    c.validate();
    if (c.kind == GoldenCase::Kind::LaplaceDuality)
      (void)detail::make_density(c.density_handle, c.density_params, quad);
    if (c.kind != GoldenCase::Kind::ProductMoments)
      (void)detail::make_transform(c.transform_handle, c.transform_params, quad);
  }
  std::vector<VerifyReport> reports(cases.size());
#ifdef MLCONV_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (std::ptrdiff_t i = 0; i < (std::ptrdiff_t)cases.size(); ++i)
    reports[i] = detail::run_case(cases[i], quad);
  return reports;
}

namespace {

GoldenCase duality(std::string id, std::string src, std::string dh, std::vector<double> dp,
                   std::string th, std::vector<double> tp, std::vector<double> grid,
                   double tol = 1e-6) {
  GoldenCase c;
  c.id = std::move(id);
  c.kind = GoldenCase::Kind::LaplaceDuality;
  c.density_handle = std::move(dh);
  c.density_params = std::move(dp);
  c.transform_handle = std::move(th);
  c.transform_params = std::move(tp);
  c.x_grid = std::move(grid);
  c.tol = tol;
  c.source = std::move(src);
  return c;
}

GoldenCase qduality(std::string id, std::string src, std::vector<double> qparams,
                    std::vector<double> tp, std::vector<double> grid, double tol = 1e-6) {
  GoldenCase c;
  c.id = std::move(id);
  c.kind = GoldenCase::Kind::QKernelDuality;
  c.density_params = std::move(qparams);  // alpha, beta, gamma, theta, y
  c.transform_handle = "power_prabhakar";
  c.transform_params = std::move(tp);
  c.x_grid = std::move(grid);
  c.tol = tol;
  c.source = std::move(src);
  return c;
}

GoldenCase product_moments(std::string id, std::string src, std::vector<double> mlparams) {
  GoldenCase c;
  c.id = std::move(id);
  c.kind = GoldenCase::Kind::ProductMoments;
  c.density_params = std::move(mlparams);
  c.x_grid = {1, 2, 3, 4, 5, 6};
  c.tol = 1e-12;
  c.source = std::move(src);
  return c;
}

double gamma_pos(double x) { return std::exp(log_gamma(x)); }

std::vector<GoldenCase> table1() {
  const std::vector<double> grid{0.5, 1.0, 2.0};
  return {
      duality("t1r1-a05", "Table 1, row 1", "ml", {0.5, 1, 1, 0}, "prabhakar", {0.5, 1, 1, 1},
              grid),
      duality("t1r1-a06", "Table 1, row 1", "ml", {0.6, 1, 1, 0}, "prabhakar", {0.6, 1, 1, 1},
              grid),
      duality("t1r2-s04a06", "Table 1, row 2", "mixture", {0.4, 1.0, 0.6, 1, 1, 0},
              "prabhakar_comp", {0.6, 1, 1, 1, 1.0, 0.4}, grid, 2e-6),
      duality("t1r2a-a05", "Table 1, row 2a", "lamperti", {0.5, 1.0}, "prabhakar_comp",
              {0.5, 1, 1, 1, 1.0, 0.5}, grid),
      duality("t1r2a-a03l2", "Table 1, row 2a", "lamperti", {0.3, 2.0}, "prabhakar_comp",
              {0.3, 1, 1, 1, 2.0, 0.3}, grid),
  };
}

std::vector<GoldenCase> table2() {
  const std::vector<double> grid{0.5, 1.0, 2.0};
  const double a = 0.5, b = 1.2, g = 1.0;
  return {
      duality("t2r1", "Table 2, row 1", "ml", {a, b, g, 0}, "prabhakar", {a, b, g, gamma_pos(b)},
              grid),
      duality("t2r2", "Table 2, row 2", "mixture", {0.4, 1.0, a, b, g, 0}, "prabhakar_comp",
              {a, b, g, gamma_pos(b), 1.0, 0.4}, grid, 2e-6),
      duality("t2r2a", "Table 2, row 2a", "mixture", {a, 1.0, a, b, g, 0}, "prabhakar_comp",
              {a, b, g, gamma_pos(b), 1.0, a}, grid, 2e-6),
  };
}

std::vector<GoldenCase> table3() {
  const std::vector<double> grid{0.5, 1.0, 2.0};
  const double a = 0.5, b = 1.2, g = 1.0, th = 0.7;
  const double be = b + th, ge = g + th / a;
  std::vector<GoldenCase> cases{
      duality("t3r1", "Table 3, row 1", "ml", {a, b, g, th}, "prabhakar", {a, be, ge, gamma_pos(be)},
              grid),
      duality("t3r1a-bml", "Table 3, row 1a", "ml", {0.5, 0.8, 0, 1.0}, "prabhakar",
              {0.5, 1.8, 2.0, gamma_pos(1.8)}, grid),
      duality("t3r2-red", "Table 3, row 2", "ml_reduction", {0.5, 1.0, 1.0, 0.6}, "prabhakar",
              {0.5, 1.6, 2.2, gamma_pos(1.6)}, grid),
      duality("t3r2a-ml2", "Table 3, row 2a", "ml", {0.5, 1.0, 1.0, 1.0}, "prabhakar",
              {0.5, 2.0, 3.0, gamma_pos(2.0)}, grid),
      duality("t3r3-comp", "Table 3, row 3", "mixture", {0.4, 1.0, a, b, g, th}, "prabhakar_comp",
              {a, be, ge, gamma_pos(be), 1.0, 0.4}, grid, 2e-6),
      duality("t3r3a-comp", "Table 3, row 3a", "mixture", {a, 1.0, a, b, g, th}, "prabhakar_comp",
              {a, be, ge, gamma_pos(be), 1.0, a}, grid, 2e-6),
  };
  return cases;
}

std::vector<GoldenCase> table4() {
  return {
      product_moments("t4r1-general", "Table 4, row 1", {0.5, 1.2, 1.0, 0.7}),
      product_moments("t4r2-bml", "Table 4, row 2", {0.5, 0.8, 0.0, 1.0}),
      product_moments("t4r3-stablered", "Table 4, row 3", {0.5, 1.2, 1.4, 0.3}),
      product_moments("t4r4-mlmc", "Table 4, row 4 (n=2, theta=0.3)", {0.5, 1.0, 1.0, 1.3}),
  };
}

std::vector<GoldenCase> table5() {
  const std::vector<double> grid{0.5, 1.0, 2.0};
  return {
      qduality("t5r1", "Table 5, row 1", {0.5, 1, 1, 0, 1.0}, {0.5, 1, 1, 1.0}, grid),
      qduality("t5r2", "Table 5, row 2", {0.5, 1.2, 1, 0, 1.0}, {0.5, 1.2, 1, 1.0}, grid),
      qduality("t5r2-signed", "Table 5, row 2 (signed regime)", {0.5, 1.4, 1, 0, 1.0},
               {0.5, 1.4, 1, 1.0}, grid),
      qduality("t5r2-boundary", "Table 5, row 2 (beta - alpha gamma = 1, atom at 0)",
               {0.5, 1.5, 1, 0, 1.0}, {0.5, 1.5, 1, 1.0}, grid),
      qduality("t5r3", "Table 5, row 3", {0.5, 1.2, 1, 0.7, 1.0}, {0.5, 1.9, 2.4, 1.0}, grid),
  };
}

}  // namespace

std::vector<GoldenCase> builtin_suite(const std::string& name) {
  if (name == "table1") return table1();
  if (name == "table2") return table2();
  if (name == "table3") return table3();
  if (name == "table4") return table4();
  if (name == "table5") return table5();
  if (name == "all") {
    std::vector<GoldenCase> all;
    for (const auto* t : {"table1", "table2", "table3", "table4", "table5"}) {
      auto cases = builtin_suite(t);
      all.insert(all.end(), cases.begin(), cases.end());
    }
    return all;
  }
  throw std::invalid_argument("unknown suite '" + name +
                              "' (expected table1..table5 or all)");
}

void write_reports_jsonl(std::ostream& os, const std::vector<VerifyReport>& reports) {
  for (const auto& r : reports) {
    nlohmann::json j{{"schema_version", 1},
                     {"case", r.id},
                     {"source", r.source},
                     {"residuals", r.residuals},
                     {"max_residual", r.max_residual},
                     {"pass", r.pass},
                     {"wall_ms", r.wall_ms}};
    if (!r.note.empty()) j["note"] = r.note;
    os << j.dump() << "\n";
  }
}

std::string summary_table(const std::vector<VerifyReport>& reports) {
  std::ostringstream os;
  std::size_t passed = 0;
  for (const auto& r : reports) {
    os << (r.pass ? "PASS" : "FAIL") << "  " << r.id;
    for (std::size_t i = r.id.size(); i < 28; ++i) os << ' ';
    os << " max_residual=";
    os.setf(std::ios::scientific);
    os.precision(3);
    os << r.max_residual << "  (" << r.source << ")";
    if (!r.note.empty()) os << "  [" << r.note << "]";
    os << "\n";
    if (r.pass) ++passed;
  }
  os << passed << "/" << reports.size() << " cases passed\n";
  return os.str();
}

}  // namespace mlconv
