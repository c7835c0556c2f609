#include "ivnoise/rng.hpp"

#include "ivnoise/stats.hpp"

namespace ivnoise {

std::uint64_t splitmix64_next(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  std::uint64_t state = base;
  const std::uint64_t h = splitmix64_next(state);
  state = h ^ (stream * 0xD6E8FEB86659FD93ULL + 0x2545F4914F6CDD1DULL);
  return splitmix64_next(state);
}

double NormalStream::next() { return inverse_normal_cdf(next_uniform()); }

}  // namespace ivnoise
