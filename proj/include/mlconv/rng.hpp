#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace mlconv {

// Seedable generator with a platform-independent stream: the engine is the
// standard-specified mt19937_64 and all variate transforms below are our own,
// so a given (seed, algorithm) pair always yields the same sequence.
// Instances are single-owner; never share one across threads.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  static constexpr std::string_view algorithm() { return "mt19937_64"; }

  std::uint64_t next_u64() { return gen_(); }

  // uniform on [0,1) with 53 random bits
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  // uniform on (0,1)
  double uniform_pos() {
    double u;
    do {
      u = uniform();
    } while (u == 0.0);
    return u;
  }

  double exponential() { return -std::log(uniform_pos()); }

  double normal();

  // Gamma(shape, scale 1), shape > 0
  double gamma(double shape);

  // Beta(a, b) via two gammas
  double beta(double a, double b);

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace mlconv
