#include "geostable/rng.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "geostable/errors.hpp"

namespace geostable {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Rng::Rng(std::uint64_t seed, std::uint64_t stream_id, std::uint64_t chunk) {
  std::uint64_t s = seed;
  std::uint64_t a = splitmix64(s);
  s ^= stream_id * 0xD1B54A32D192ED03ULL;
  std::uint64_t b = splitmix64(s);
  s ^= chunk * 0x8CB92BA72F3D8DD7ULL;
  std::uint64_t c = splitmix64(s);
  std::uint64_t d = splitmix64(s);
  std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                    static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32),
                    static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(c >> 32),
                    static_cast<std::uint32_t>(d), static_cast<std::uint32_t>(d >> 32)};
  engine_.seed(seq);
}

double Rng::uniform() {
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double m = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * m;
  has_spare_ = true;
  return u * m;
}

double Rng::exponential() { return -std::log(uniform()); }

double Rng::log_gamma_variate(double shape) {
  if (!(shape > 0.0)) throw DomainError("gamma variate: shape must be positive");
  if (shape < 1.0) {
    // G_a = G_{a+1} U^{1/a}, kept in logs.
    return log_gamma_variate(shape + 1.0) + std::log(uniform()) / shape;
  }
  // Marsaglia–Tsang squeeze.
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return std::log(d * v);
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return std::log(d * v);
  }
}

double Rng::gamma(double shape, double scale) { return scale * std::exp(log_gamma_variate(shape)); }

RngStream RngStream::substream(std::uint64_t k) const {
  std::uint64_t s = stream_id ^ (0x5851F42D4C957F2DULL * (k + 1));
  return {seed, splitmix64(s)};
}

void for_each_chunk(std::size_t n, const RngStream& stream, int threads,
                    const std::function<void(Rng&, std::size_t, std::size_t)>& fn) {
  const std::size_t n_chunks = (n + kChunkSize - 1) / kChunkSize;
  auto run_chunk = [&](std::size_t c) {
    Rng rng = stream.make(c);
    const std::size_t begin = c * kChunkSize;
    fn(rng, begin, std::min(n, begin + kChunkSize));
  };
  const std::size_t workers =
      std::min<std::size_t>(n_chunks, static_cast<std::size_t>(std::max(1, threads)));
  if (workers <= 1) {
    for (std::size_t c = 0; c < n_chunks; ++c) run_chunk(c);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t c = next.fetch_add(1);
        if (c >= n_chunks) return;
        try {
          run_chunk(c);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = n_chunks;
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace geostable
