#pragma once

// Reproducible random streams. A stream is keyed by (seed, substream_index);
// identical keys give identical draws regardless of thread or platform, since
// every distribution here is implemented in this file rather than taken from
// <random>, whose distributions are implementation-defined.

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>

namespace telegraph {

constexpr std::uint64_t splitmix64(std::uint64_t& state) noexcept {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

namespace detail {

struct ZigguratTables {
    static constexpr int kLayers = 256;
    std::array<double, kLayers + 1> x{};  // layer right edges, x[0] is the base strip width
    std::array<double, kLayers + 1> f{};  // exp(-x^2/2) at the edges
};

/// Built during static initialization; read directly by the inlined sampler.
extern const ZigguratTables kZiggurat;

const ZigguratTables& ziggurat_tables() noexcept;

double log_factorial(std::uint64_t k) noexcept;

}  // namespace detail

/// xoshiro256++ generator seeded from a (seed, substream_index) pair.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t substream_index) noexcept
        : seed_(seed), substream_(substream_index) {
        std::uint64_t sm = seed;
        const std::uint64_t a = splitmix64(sm);
        std::uint64_t sub = substream_index ^ 0x5851f42d4c957f2dULL;
        const std::uint64_t b = splitmix64(sub);
        std::uint64_t key = a ^ (b * 0xd1342543de82ef95ULL);
        for (auto& word : s_) word = splitmix64(key);
    }

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t substream_index() const noexcept { return substream_; }

    std::uint64_t next_u64() noexcept {
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

    /// Uniform on [0, 1).
    double uniform() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform on the open interval (0, 1).
    double uniform_open() noexcept {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// +1 or -1 with probability 1/2 each.
    int sign() noexcept { return (next_u64() >> 63) ? -1 : 1; }

    double exponential(double rate) noexcept { return -std::log(uniform_open()) / rate; }

    /// Standard normal via the 256-layer ziggurat.
    double normal() noexcept {
        const auto& zt = detail::kZiggurat;
        for (;;) {
            const std::uint64_t bits = next_u64();
            const unsigned layer = static_cast<unsigned>(bits & 0xffu);
            const std::uint64_t sign_bit = (bits & 0x100u) << 55;
            const bool negative = sign_bit != 0;
            const double u = static_cast<double>(bits >> 11) * 0x1.0p-53;
            const double x = u * zt.x[layer];
            if (x < zt.x[layer + 1]) return std::bit_cast<double>(std::bit_cast<std::uint64_t>(x) ^ sign_bit);
            if (layer == 0) {
                const double tail = normal_tail(zt.x[1]);
                return negative ? -tail : tail;
            }
            const double y = zt.f[layer] + uniform() * (zt.f[layer + 1] - zt.f[layer]);
            if (y < std::exp(-0.5 * x * x)) return negative ? -x : x;
        }
    }

    /// Exact Poisson draw: inversion below mean 10, PTRS transformed rejection above.
    std::uint64_t poisson(double mean) noexcept;

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
        return (x << k) | (x >> (64 - k));
    }

    double normal_tail(double r) noexcept {
        for (;;) {
            const double ex = -std::log(uniform_open()) / r;
            const double ey = -std::log(uniform_open());
            if (2.0 * ey >= ex * ex) return r + ex;
        }
    }

    std::uint64_t seed_;
    std::uint64_t substream_;
    std::array<std::uint64_t, 4> s_{};
};

}  // namespace telegraph
