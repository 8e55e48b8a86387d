#include "telegraph/rng.hpp"

#include <numbers>

namespace telegraph {

namespace detail {

namespace {

// Marsaglia-Tsang constants for 256 equal-area layers.
constexpr double kZigR = 3.6541528853610088;
constexpr double kZigV = 0.00492867323399;

ZigguratTables build_ziggurat() {
    ZigguratTables t;
    const auto density = [](double x) { return std::exp(-0.5 * x * x); };
    t.x[0] = kZigV / density(kZigR);
    t.x[1] = kZigR;
    for (int i = 1; i < ZigguratTables::kLayers - 1; ++i) {
        const double arg = kZigV / t.x[i] + density(t.x[i]);
        t.x[i + 1] = arg < 1.0 ? std::sqrt(-2.0 * std::log(arg)) : 0.0;
    }
    t.x[ZigguratTables::kLayers] = 0.0;
    for (int i = 0; i <= ZigguratTables::kLayers; ++i) t.f[i] = density(t.x[i]);
    return t;
}

constexpr std::uint64_t kLogFactorialTable = 256;

std::array<double, kLogFactorialTable> build_log_factorials() {
    std::array<double, kLogFactorialTable> table{};
    table[0] = 0.0;
    for (std::uint64_t k = 1; k < kLogFactorialTable; ++k) {
        table[k] = table[k - 1] + std::log(static_cast<double>(k));
    }
    return table;
}

}  // namespace

const ZigguratTables kZiggurat = build_ziggurat();

const ZigguratTables& ziggurat_tables() noexcept { return kZiggurat; }

double log_factorial(std::uint64_t k) noexcept {
    static const auto table = build_log_factorials();
    if (k < kLogFactorialTable) return table[k];
    // Stirling series for ln Gamma(z), z = k + 1 >= 257.
    const double z = static_cast<double>(k) + 1.0;
    const double inv = 1.0 / z;
    const double inv2 = inv * inv;
    return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * std::numbers::pi) +
           inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 / 1260.0));
}

}  // namespace detail

std::uint64_t RngStream::poisson(double mean) noexcept {
    if (!(mean > 0.0)) return 0;
    if (mean < 10.0) {
        // Sequential-search inversion.
        const double u = uniform();
        double p = std::exp(-mean);
        double cdf = p;
        std::uint64_t k = 0;
        while (u > cdf && k < 1000) {
            ++k;
            p *= mean / static_cast<double>(k);
            cdf += p;
        }
        return k;
    }

    // Hormann (1993) PTRS.
    const double slam = std::sqrt(mean);
    const double loglam = std::log(mean);
    const double b = 0.931 + 2.53 * slam;
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double vr = 0.9277 - 3.6224 / (b - 2.0);
    for (;;) {
        const double u = uniform() - 0.5;
        const double v = uniform();
        const double us = 0.5 - std::abs(u);
        const double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
        if (us >= 0.07 && v <= vr) return static_cast<std::uint64_t>(k);
        if (k < 0.0 || (us < 0.013 && v > us)) continue;
        const auto ki = static_cast<std::uint64_t>(k);
        if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
            -mean + k * loglam - detail::log_factorial(ki)) {
            return ki;
        }
    }
}

}  // namespace telegraph
