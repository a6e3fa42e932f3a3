#pragma once

#include <functional>
#include <span>

#include "mlconv/mixtures.hpp"
#include "mlconv/mldist.hpp"
#include "mlconv/mlfunc.hpp"
#include "mlconv/powerconv.hpp"
#include "mlconv/stable.hpp"

// Grid evaluation kernels. Every scalar evaluator in the library is pure, so
// points are independent and the loops parallelize with OpenMP. The *_serial
// variants are the reference implementations the parallel ones are tested
// against (outputs must match bit for bit); the bench target compares their
// throughput.
namespace mlconv::batch {

void stable_density_grid(const StableSpec& spec, StableMethod method, const QuadratureSpec& quad,
                         std::span<const double> t, std::span<double> out);
void stable_density_grid_serial(const StableSpec& spec, StableMethod method,
                                const QuadratureSpec& quad, std::span<const double> t,
                                std::span<double> out);

void ml_density_grid(const MLParams& p, ConvMethod method, const QuadratureSpec& quad,
                     std::span<const double> u, std::span<double> out);
void ml_density_grid_serial(const MLParams& p, ConvMethod method, const QuadratureSpec& quad,
                            std::span<const double> u, std::span<double> out);

void mixture_density_grid(const MixtureSpec& spec, MixtureMethod method,
                          const QuadratureSpec& quad, std::span<const double> t,
                          std::span<double> out);
void mixture_density_grid_serial(const MixtureSpec& spec, MixtureMethod method,
                                 const QuadratureSpec& quad, std::span<const double> t,
                                 std::span<double> out);

void prabhakar_grid(const PrabhakarParams& p, const QuadratureSpec& quad,
                    std::span<const double> x, std::span<double> out);
void prabhakar_grid_serial(const PrabhakarParams& p, const QuadratureSpec& quad,
                           std::span<const double> x, std::span<double> out);

void powerconv_grid(const PowerExponent& nu, const StableSpec& spec, ConvMethod method,
                    const QuadratureSpec& quad, std::span<const double> t, std::span<double> out);
void powerconv_grid_serial(const PowerExponent& nu, const StableSpec& spec, ConvMethod method,
                           const QuadratureSpec& quad, std::span<const double> t,
                           std::span<double> out);

void qkernel_grid(const QKernelParams& qp, std::span<const double> u, std::span<double> out);
void qkernel_grid_serial(const QKernelParams& qp, std::span<const double> u,
                         std::span<double> out);

// Numeric Laplace transform of an arbitrary density on an x grid. The
// callback must be reentrant.
void laplace_grid(const std::function<double(double)>& density, const QuadratureSpec& quad,
                  std::span<const double> x, std::span<double> out);
void laplace_grid_serial(const std::function<double(double)>& density, const QuadratureSpec& quad,
                         std::span<const double> x, std::span<double> out);

}  // namespace mlconv::batch
