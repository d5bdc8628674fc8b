// SPDX-License-Identifier: Apache-2.0
#pragma once

// The one random stream used wherever a seed is accepted.
//
//   engine : std::mt19937_64 seeded with the 64-bit seed (its output
//            sequence is fixed by the C++ standard)
//   double : (engine() >> 11) * 2^-53, uniform on [0, 1)
//
// The standard library's distributions are implementation-defined, so
// none are used: a seed means the same numbers on every platform.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace hilbert_cone {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1).
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform index in [0, n). n must be positive.
  std::size_t index(std::size_t n) {
    const auto i = static_cast<std::size_t>(uniform() * static_cast<double>(n));
    return i < n ? i : n - 1;
  }

  /// Weights exp(U[-spread, spread]); strictly positive.
  std::vector<double> log_uniform_weights(std::size_t n, double spread = 3.0) {
    std::vector<double> w(n);
    for (double& v : w) v = std::exp(uniform(-spread, spread));
    return w;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace hilbert_cone
