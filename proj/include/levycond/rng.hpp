#pragma once

#include <cstdint>
#include <cmath>

namespace levycond {

inline constexpr std::uint64_t kGolden64 = 0x9E3779B97F4A7C15ull;

/// SplitMix64 step: advances `state` and returns the next output word.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += kGolden64;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// Stateless 64-bit finalizer (one SplitMix64 output for a given input).
inline std::uint64_t mix64(std::uint64_t x) {
    std::uint64_t s = x;
    return splitmix64(s);
}

/// Identifier of one reproducible random stream.
///
/// The pair (master_seed, stream_index) fully determines the generated
/// sequence; distinct stream indices give statistically independent streams.
struct RngStream {
    std::uint64_t master_seed = 0;
    std::uint64_t stream_index = 0;

    /// Deterministically derived child stream (used for per-chunk streams).
    RngStream substream(std::uint64_t k) const {
        return RngStream{master_seed, mix64(stream_index ^ (kGolden64 * (k + 1)))};
    }

    friend bool operator==(const RngStream&, const RngStream&) = default;
};

/// xoshiro256++ engine seeded from an RngStream.
///
/// Hand-rolled so that draws are bit-reproducible across platforms and
/// standard libraries (std::* distributions are not portable).
class Xoshiro256 {
  public:
    explicit Xoshiro256(RngStream id) {
        std::uint64_t h = mix64(id.master_seed) ^ mix64(~id.stream_index);
        std::uint64_t chain = h;
        for (auto& word : s_) word = splitmix64(chain);
        if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = kGolden64;
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform on [0,1), 53-bit resolution.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform on the open interval (0,1); safe as a log() argument.
    double uniform_open01() {
        return (static_cast<double>(next_u64() >> 12) + 0.5) * 0x1.0p-52;
    }

    /// Uniform angle on (-pi/2, pi/2), endpoints excluded.
    double uniform_angle() { return (uniform_open01() - 0.5) * M_PI; }

    /// Standard exponential, strictly positive.
    double exponential() { return -std::log(uniform_open01()); }

    /// Fair coin: +1 or -1.
    double sign_flip() { return (next_u64() & 1u) ? 1.0 : -1.0; }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }
    std::uint64_t s_[4];
};

}  // namespace levycond
