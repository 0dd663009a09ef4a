#pragma once

#include <array>
#include <cstdint>

#include "caz/types.hpp"

namespace caz {

/// Philox4x32 with 10 rounds (Salmon, Moraes, Dror, Shaw; SC'11).
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key);

/// Counter-based stream of standard complex Gaussians.
///
/// The key is the 64-bit seed; the 128-bit counter packs the draw index
/// (low words) and the stream index (high words), so every draw is a pure
/// function of (seed, stream, draw). Draws have density exp(-|z|^2)/pi:
/// E|z|^2 = 1 and each of the real and imaginary parts has variance 1/2.
class ComplexGaussianStream {
 public:
  ComplexGaussianStream(std::uint64_t seed, std::uint64_t stream_index)
      : seed_(seed), stream_(stream_index) {}

  Complex next();
  /// Uniform on the open interval (0, 1).
  double uniform();

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }
  std::uint64_t position() const { return counter_; }
  void seek(std::uint64_t draw) { counter_ = draw; }

 private:
  std::array<std::uint32_t, 4> block();

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
};

}  // namespace caz
