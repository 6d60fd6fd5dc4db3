#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <string_view>

namespace ghmc {

/// Reproducible, splittable random stream.
///
/// A stream is just a 64-bit key. `split(i)` derives the key of child i with
/// splitmix64, so work divided into fixed chunks draws the same numbers no
/// matter how the chunks are scheduled across threads.
class RngStream {
 public:
  using Engine = std::mt19937_64;

  explicit RngStream(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t seed() const { return seed_; }
  static constexpr std::string_view algorithm() { return "mt19937_64+splitmix64"; }

  RngStream split(std::uint64_t index) const;
  Engine engine() const;

  friend bool operator==(const RngStream&, const RngStream&) = default;

 private:
  std::uint64_t seed_;
};

std::uint64_t splitmix64(std::uint64_t x);

/// Number of worker threads used by ensemble routines; 0 means
/// hardware_concurrency. Results do not depend on this value.
void set_worker_threads(unsigned threads);
unsigned worker_threads();

/// Runs body(chunk) for chunk in [0, chunks) on the worker pool. Each chunk
/// must write only to its own output slots.
void parallel_chunks(std::size_t chunks, const std::function<void(std::size_t)>& body);

}  // namespace ghmc
