#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <limits>

namespace tensorjl {

/// Tag written to experiment output so results can be attributed to a generator.
inline constexpr const char* kRngTag = "xoshiro256**/splitmix64";

struct Seed {
    std::uint64_t value = 0;
    friend bool operator==(Seed, Seed) = default;
};

[[nodiscard]] constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Child seed for the sub-stream identified by `path` (e.g. {row, core}).
/// Depends only on the master seed and the path, so adding rows or cores never
/// perturbs the streams of existing ones.
[[nodiscard]] constexpr Seed derive_seed(Seed master, std::initializer_list<std::uint64_t> path) noexcept {
    std::uint64_t h = splitmix64(master.value ^ 0x6a09e667f3bcc909ULL);
    for (std::uint64_t component : path) h = splitmix64(h ^ splitmix64(component + 0x3c6ef372fe94f82bULL));
    return Seed{h};
}

/// xoshiro256** (Blackman & Vigna), period 2^256 - 1. State is filled from a
/// 64-bit seed with splitmix64, which makes per-stream seeding cheap.
class Xoshiro256 {
public:
    using result_type = std::uint64_t;

    explicit Xoshiro256(Seed seed) noexcept {
        std::uint64_t x = seed.value;
        for (auto& s : state_) {
            s = splitmix64(x);
            x += 0x9e3779b97f4a7c15ULL;
        }
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform double in [0, 1) from the top 53 bits.
    double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept { return (x << k) | (x >> (64 - k)); }

    std::array<std::uint64_t, 4> state_{};
};

}  // namespace tensorjl
