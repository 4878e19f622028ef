#pragma once

#include <cstdint>

namespace dppt {

// Seeded, splittable random stream. Same (seed, stream) gives the same
// sequence on every platform; distinct stream ids give independent
// sequences, so Monte Carlo replicates can run in parallel and still
// reduce deterministically.
//
// Generator: xoshiro256++ with SplitMix64 state expansion.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next_u64();

  // uniform in [0, 1), 53-bit resolution
  double next_double();

  // uniform in {0, ..., n-1}, exact (rejection)
  int next_index(int n);

  bool next_bernoulli(double p);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

 private:
  std::uint64_t s_[4];
  std::uint64_t seed_;
  std::uint64_t stream_;
};

}  // namespace dppt
