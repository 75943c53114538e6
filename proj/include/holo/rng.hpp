#pragma once

#include <cstdint>

namespace holo {

/// SplitMix64 (Steele, Lea, Flood 2014). The state advances by the golden-gamma
/// increment 0x9E3779B97F4A7C15 and each output is the state run through the
/// mixer
///
///     z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///     z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///     z =  z ^ (z >> 31)
///
/// Doubles take the top 53 bits: (next() >> 11) * 2^-53, giving [0, 1).
/// Bounded integers use the multiply-high reduction (next() * n) >> 64.
/// Both are exact integer/IEEE operations, so streams reproduce bit for bit
/// on any platform.
class SplitMix64 {
public:
    static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

    explicit SplitMix64(std::uint64_t seed = 0) noexcept : state_(seed) {}

    static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t next() noexcept {
        state_ += kGamma;
        return mix(state_);
    }

    /// Uniform on [0, 1).
    double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform on [0, n). n must be non-zero.
    std::uint64_t below(std::uint64_t n) noexcept {
        __extension__ using u128 = unsigned __int128;
        return static_cast<std::uint64_t>((static_cast<u128>(next()) * n) >> 64);
    }

    std::uint64_t state() const noexcept { return state_; }

private:
    std::uint64_t state_;
};

/// Independent sub-streams of one master seed. Stream k starts from state
/// mix(master ^ (k * 0xD1B54A32D192ED03)).
enum class Stream : std::uint64_t {
    PhaseRandomization = 1,
    Proposal = 2,
    Selection = 3,
    Acceptance = 4,
};

inline SplitMix64 substream(std::uint64_t master, Stream which) noexcept {
    constexpr std::uint64_t kStride = 0xD1B54A32D192ED03ULL;
    return SplitMix64(SplitMix64::mix(master ^ (static_cast<std::uint64_t>(which) * kStride)));
}

}  // namespace holo
