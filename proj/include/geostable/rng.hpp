#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>

namespace geostable {

std::uint64_t splitmix64(std::uint64_t& state);

/// mt19937_64 with portable variate generators (no std:: distributions,
/// so output is identical across standard libraries).
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream_id, std::uint64_t chunk = 0);

  /// Uniform on the open interval (0,1).
  double uniform();
  double normal();
  double exponential();
  /// ln of a Gamma(shape, 1) variate; finite even when the variate underflows.
  double log_gamma_variate(double shape);
  double gamma(double shape, double scale = 1.0);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

struct RngStream {
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;

  Rng make(std::uint64_t chunk = 0) const { return Rng(seed, stream_id, chunk); }
  RngStream substream(std::uint64_t k) const;
};

/// Paths are drawn in fixed-size chunks, each with its own generator, so
/// results do not depend on the thread count.
inline constexpr std::size_t kChunkSize = 8192;

/// Calls fn(rng, begin, end) over [0,n) in chunks, on up to `threads` threads.
void for_each_chunk(std::size_t n, const RngStream& stream, int threads,
                    const std::function<void(Rng&, std::size_t, std::size_t)>& fn);

}  // namespace geostable
