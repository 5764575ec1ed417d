#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace orbitint {

// Algorithm identifier emitted in reports so fuzz cases can be reproduced by
// an independent implementation of the same generator.
inline constexpr std::string_view rng_algorithm_id = "xoshiro256starstar-1.0";

// splitmix64 step; used for seeding and for hashing seeds together.
inline constexpr std::uint64_t splitmix64_next(std::uint64_t& state) noexcept {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// xoshiro256** by Blackman and Vigna; deterministic, seedable, and fully
// specified here so reports stay reproducible across platforms.
class xoshiro256ss {
  public:
    explicit xoshiro256ss(std::uint64_t seed) noexcept {
        std::uint64_t sm = seed;
        for (auto& word : s_) word = splitmix64_next(sm);
    }

    std::uint64_t next() noexcept {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform-enough value in [0, n); the tiny modulo bias is irrelevant for
    // test-case generation and keeps the mapping trivially reproducible.
    std::uint64_t below(std::uint64_t n) noexcept { return n == 0 ? 0 : next() % n; }

    // Inclusive integer range.
    long long range(long long lo, long long hi) noexcept {
        return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    bool coin() noexcept { return (next() & 1) != 0; }

  private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
        return (x << k) | (x >> (64 - k));
    }
    std::array<std::uint64_t, 4> s_;
};

} // namespace orbitint
