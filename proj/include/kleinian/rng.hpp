#pragma once

#include <cstdint>

#include "kleinian/quaternion.hpp"

namespace kleinian {

// Counter-based splitmix64 stream.  Sampling scans index into independent
// streams keyed by (seed, index), so results are identical whether a scan
// runs serially or split across threads.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed * 0x9e3779b97f4a7c15ULL + 1) {}
  Rng(uint64_t seed, uint64_t stream)
      : Rng(seed ^ (0xbf58476d1ce4e5b9ULL * (stream + 0x2545f4914f6cdd1dULL))) {}

  uint64_t next_u64() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in (0, 1].
  double next_uniform() {
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller; implementation-defined library
  // distributions are avoided so fixtures reproduce across platforms.
  double next_normal() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    const double u1 = next_uniform();
    const double u2 = next_uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 6.283185307179586476925286766559 * u2;
    cached_ = r * std::sin(theta);
    have_cached_ = true;
    return r * std::cos(theta);
  }

  Complex next_normal_complex() {
    const double re = next_normal();
    const double im = next_normal();
    return {re, im};
  }

  Quaternion next_normal_quaternion() {
    const double a = next_normal();
    const double b = next_normal();
    const double c = next_normal();
    const double d = next_normal();
    return {a, b, c, d};
  }

  Quaternion next_unit_quaternion() {
    Quaternion q = next_normal_quaternion();
    while (q.norm() < 1e-6) q = next_normal_quaternion();
    return q / q.norm();
  }

 private:
  uint64_t state_;
  bool have_cached_ = false;
  double cached_ = 0.0;
};

}  // namespace kleinian
