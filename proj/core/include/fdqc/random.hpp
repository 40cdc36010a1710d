#pragma once

// Deterministic randomness for the simulator. All draws go through explicit
// integer-based conversions (no std::*_distribution), so a seed reproduces the
// same stream on any platform.

#include <cmath>
#include <cstdint>
#include <random>

#include "fdqc/qsim.hpp"

namespace fdqc {

class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  int bit() { return static_cast<int>(engine_() >> 63); }

  // Uniform in [0, 1) with 53 bits of precision.
  double real01() { return double(engine_() >> 11) * 0x1.0p-53; }

  // Uniform in [0, bound) without modulo bias.
  std::uint64_t below(std::uint64_t bound);

  // Standard normal via Box-Muller.
  double gaussian();

  // Haar-random pure state: normalized vector of complex Gaussians.
  Statevector haar_state(int n_qubits);

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

inline std::uint64_t RandomSource::below(std::uint64_t bound) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % bound;
}

inline double RandomSource::gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1, u2;
  do {
    u1 = real01();
  } while (u1 <= 0.0);
  u2 = real01();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * 3.14159265358979323846 * u2;
  spare_ = radius * std::sin(angle);
  have_spare_ = true;
  return radius * std::cos(angle);
}

inline Statevector RandomSource::haar_state(int n_qubits) {
  const std::size_t dim = std::size_t{1} << n_qubits;
  std::vector<cplx> amps(dim);
  double norm2 = 0.0;
  do {
    norm2 = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
      const double re = gaussian();
      const double im = gaussian();
      amps[i] = cplx{re, im};
      norm2 += re * re + im * im;
    }
  } while (norm2 < 1e-12);
  const double inv = 1.0 / std::sqrt(norm2);
  for (cplx& a : amps) a *= inv;
  return Statevector(n_qubits, std::move(amps));
}

}  // namespace fdqc
