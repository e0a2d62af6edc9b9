#pragma once

#include <array>
#include <cstdint>

namespace tailgof::rng {

// SplitMix64 step; also used to derive independent substream seeds.
std::uint64_t splitmix64(std::uint64_t& state);

// Derives the seed of substream `stream` from a master seed. Used for
// per-path / per-replication streams so that parallel schedules cannot
// change the sampled values.
std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t stream);

// xoshiro256++ with explicit scalar distributions. The standard library's
// distribution objects are implementation-defined; hand-rolled transforms
// keep every sampled byte reproducible across toolchains.
class Engine {
 public:
  explicit Engine(std::uint64_t seed);

  std::uint64_t next_u64();
  double uniform();      // strictly inside (0,1)
  double normal();       // standard normal, Box-Muller pair with cache
  double exponential();  // unit mean
  double cauchy();       // standard Cauchy

 private:
  std::array<std::uint64_t, 4> s_;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

}  // namespace tailgof::rng

namespace tailgof {
using rng::Engine;
using rng::splitmix64;
using rng::substream_seed;
}  // namespace tailgof
