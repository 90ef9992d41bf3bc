#ifndef FFSM_RANDOM_HPP
#define FFSM_RANDOM_HPP

#include "ffsm/tensor_core.hpp"

#include <cstdint>
#include <random>

namespace ffsm {

/// All sampling goes through mt19937_64 and explicit inverse-CDF transforms so
/// that a seed fixes every drawn value independently of the standard library's
/// distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return double(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller.
  double normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * pi * u2);
  }

  /// Modulus uniform in [lo, hi], phase uniform in [0, 2 pi).
  cplx polar(double lo = 0.5, double hi = 2.0) { return std::polar(uniform(lo, hi), uniform(0.0, 2.0 * pi)); }

  CMatrix matrix(Eigen::Index r, Eigen::Index c) {
    CMatrix M(r, c);
    for (Eigen::Index i = 0; i < r; ++i)
      for (Eigen::Index j = 0; j < c; ++j) M(i, j) = cplx(normal(), normal());
    return M;
  }

  /// Derived seed for trial i of a suite: splitmix64 of (seed, i).
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t i) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (i + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace ffsm

#endif  // FFSM_RANDOM_HPP
