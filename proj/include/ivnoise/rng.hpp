#pragma once

#include <cstdint>
#include <random>

namespace ivnoise {

/// One step of the splitmix64 sequence; advances `state`.
std::uint64_t splitmix64_next(std::uint64_t& state);

/// Derives an independent substream seed from (base, stream).
/// Pure function, so replication r of a Monte Carlo run can be
/// seeded as derive_seed(base_seed, r) regardless of scheduling.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

/// Deterministic standard-normal stream. Uniforms come from
/// mt19937_64 (whose output sequence the standard pins down) and are
/// mapped through the inverse normal CDF, so identical seeds produce
/// bit-identical draws on every platform.
class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed) : engine_(seed) {}

  /// Uniform draw in the open interval (0,1).
  double next_uniform() {
    const std::uint64_t bits = engine_();
    return (static_cast<double>(bits >> 11) + 0.5) * 0x1p-53;
  }

  /// Standard normal draw.
  double next();

 private:
  std::mt19937_64 engine_;
};

}  // namespace ivnoise
