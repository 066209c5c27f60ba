#pragma once

#include <cmath>
#include <cstdint>

namespace kraichnan {

/// Counter-based stream generator (splitmix64).  Each path derives its own
/// stream from (master seed, path index), so draws are independent of thread
/// scheduling and worker count.
class Rng {
 public:
  Rng(std::uint64_t master_seed, std::uint64_t stream) {
    state_ = mix(master_seed ^ mix(stream + 0x9e3779b97f4a7c15ULL));
    cached_ = false;
  }

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix(state_);
  }

  /// Uniform in (0,1].
  double next_uniform() {
    return (next_u64() >> 11) * 0x1.0p-53 + 0x1.0p-54;
  }

  /// Standard normal via Box-Muller.
  double next_normal() {
    if (cached_) {
      cached_ = false;
      return cache_;
    }
    double u1 = next_uniform();
    double u2 = next_uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 6.283185307179586476925286766559 * u2;
    cache_ = r * std::sin(a);
    cached_ = true;
    return r * std::cos(a);
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
  double cache_ = 0.0;
  bool cached_;
};

}  // namespace kraichnan
