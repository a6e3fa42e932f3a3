#include "mlconv/batch.hpp"

#include <exception>
#include <limits>
#include <stdexcept>

#include "mlconv/verify.hpp"

namespace mlconv::batch {

namespace {

void check_sizes(std::size_t in, std::size_t out) {
  if (in != out) throw std::invalid_argument("batch: input and output spans differ in size");
}

// Exceptions cannot cross an OpenMP region; capture the first one and rethrow.
template <class Fn>
void parallel_map(std::span<const double> in, std::span<double> out, Fn&& fn) {
  check_sizes(in.size(), out.size());
  std::exception_ptr first_error = nullptr;
#ifdef MLCONV_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (std::ptrdiff_t i = 0; i < (std::ptrdiff_t)in.size(); ++i) {
    try {
      out[i] = fn(in[i]);
    } catch (...) {
#ifdef MLCONV_HAVE_OPENMP
#pragma omp critical
#endif
      {
        if (!first_error) first_error = std::current_exception();
      }
      out[i] = std::numeric_limits<double>::quiet_NaN();
    }
  }
  if (first_error) std::rethrow_exception(first_error);
}

template <class Fn>
void serial_map(std::span<const double> in, std::span<double> out, Fn&& fn) {
  check_sizes(in.size(), out.size());
  for (std::size_t i = 0; i < in.size(); ++i) out[i] = fn(in[i]);
}

}  // namespace

void stable_density_grid(const StableSpec& spec, StableMethod method, const QuadratureSpec& quad,
                         std::span<const double> t, std::span<double> out) {
  parallel_map(t, out, [&](double x) { return stable_density(spec, x, method, quad); });
}

void stable_density_grid_serial(const StableSpec& spec, StableMethod method,
                                const QuadratureSpec& quad, std::span<const double> t,
                                std::span<double> out) {
  serial_map(t, out, [&](double x) { return stable_density(spec, x, method, quad); });
}

void ml_density_grid(const MLParams& p, ConvMethod method, const QuadratureSpec& quad,
                     std::span<const double> u, std::span<double> out) {
  parallel_map(u, out, [&](double x) { return ml_density(p, x, method, quad); });
}

void ml_density_grid_serial(const MLParams& p, ConvMethod method, const QuadratureSpec& quad,
                            std::span<const double> u, std::span<double> out) {
  serial_map(u, out, [&](double x) { return ml_density(p, x, method, quad); });
}

void mixture_density_grid(const MixtureSpec& spec, MixtureMethod method,
                          const QuadratureSpec& quad, std::span<const double> t,
                          std::span<double> out) {
  parallel_map(t, out, [&](double x) { return mixture_density(spec, x, method, quad); });
}

void mixture_density_grid_serial(const MixtureSpec& spec, MixtureMethod method,
                                 const QuadratureSpec& quad, std::span<const double> t,
                                 std::span<double> out) {
  serial_map(t, out, [&](double x) { return mixture_density(spec, x, method, quad); });
}

void prabhakar_grid(const PrabhakarParams& p, const QuadratureSpec& quad,
                    std::span<const double> x, std::span<double> out) {
  parallel_map(x, out, [&](double v) { return mittag_leffler(p, v, quad); });
}

void prabhakar_grid_serial(const PrabhakarParams& p, const QuadratureSpec& quad,
                           std::span<const double> x, std::span<double> out) {
  serial_map(x, out, [&](double v) { return mittag_leffler(p, v, quad); });
}

void powerconv_grid(const PowerExponent& nu, const StableSpec& spec, ConvMethod method,
                    const QuadratureSpec& quad, std::span<const double> t, std::span<double> out) {
  parallel_map(t, out, [&](double x) { return powerconv_density(nu, spec, x, method, quad); });
}

void powerconv_grid_serial(const PowerExponent& nu, const StableSpec& spec, ConvMethod method,
                           const QuadratureSpec& quad, std::span<const double> t,
                           std::span<double> out) {
  serial_map(t, out, [&](double x) { return powerconv_density(nu, spec, x, method, quad); });
}

void qkernel_grid(const QKernelParams& qp, std::span<const double> u, std::span<double> out) {
  parallel_map(u, out, [&](double x) { return q_kernel(qp, x); });
}

void qkernel_grid_serial(const QKernelParams& qp, std::span<const double> u,
                         std::span<double> out) {
  serial_map(u, out, [&](double x) { return q_kernel(qp, x); });
}

void laplace_grid(const std::function<double(double)>& density, const QuadratureSpec& quad,
                  std::span<const double> x, std::span<double> out) {
  parallel_map(x, out, [&](double v) { return numeric_laplace(density, v, quad); });
}

void laplace_grid_serial(const std::function<double(double)>& density, const QuadratureSpec& quad,
                         std::span<const double> x, std::span<double> out) {
  serial_map(x, out, [&](double v) { return numeric_laplace(density, v, quad); });
}

}  // namespace mlconv::batch
