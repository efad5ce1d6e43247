#pragma once

#include <cstdint>

namespace subgc {

/// Counter-based uniform random stream keyed by (seed, stream index).
///
/// Output i is a bijective mix of key + i, so draws are a pure function
/// of (seed, stream, i): any trial can be regenerated in isolation and
/// results do not depend on how trials are scheduled across workers.
class RngStream {
  public:
    RngStream(std::uint64_t seed, std::uint64_t stream)
        : key_(mix(mix(seed + kGamma) ^ mix(stream + kGamma2))), counter_(0) {}

    std::uint64_t next_u64() { return mix(key_ + (++counter_) * kGamma); }

    /// Uniform double in [0, 1), 53 random bits.
    double next_unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

  private:
    // splitmix64 finalizer
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ull;
    static constexpr std::uint64_t kGamma2 = 0xd1b54a32d192ed03ull;

    std::uint64_t key_;
    std::uint64_t counter_;
};

}  // namespace subgc
