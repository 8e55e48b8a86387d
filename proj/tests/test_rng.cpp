#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "telegraph/rng.hpp"

using namespace telegraph;

TEST_CASE("identical keys give identical streams") {
    RngStream a(42, 7), b(42, 7);
    for (int k = 0; k < 1000; ++k) REQUIRE(a.next_u64() == b.next_u64());
    RngStream c(42, 7), d(42, 7);
    for (int k = 0; k < 1000; ++k) REQUIRE(c.normal() == d.normal());
}

TEST_CASE("neighbouring substreams and seeds differ") {
    RngStream a(42, 0), b(42, 1), c(43, 0);
    int same_ab = 0, same_ac = 0;
    for (int k = 0; k < 100; ++k) {
        const auto x = a.next_u64(), y = b.next_u64(), z = c.next_u64();
        same_ab += x == y;
        same_ac += x == z;
    }
    CHECK(same_ab == 0);
    CHECK(same_ac == 0);
}

TEST_CASE("uniform ranges") {
    RngStream rng(1, 0);
    for (int k = 0; k < 100000; ++k) {
        const double u = rng.uniform();
        const double o = rng.uniform_open();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        REQUIRE(o > 0.0);
        REQUIRE(o < 1.0);
    }
}

TEST_CASE("ziggurat normal: moments and Kolmogorov-Smirnov") {
    RngStream rng(2024, 3);
    constexpr int n = 400000;
    std::vector<double> xs(n);
    double m1 = 0, m2 = 0, m4 = 0;
    for (auto& x : xs) {
        x = rng.normal();
        m1 += x;
        m2 += x * x;
        m4 += x * x * x * x;
    }
    m1 /= n;
    m2 /= n;
    m4 /= n;
    CHECK(std::abs(m1) < 4.0 / std::sqrt(n));
    CHECK(std::abs(m2 - 1.0) < 4.0 * std::sqrt(2.0 / n));
    CHECK(std::abs(m4 - 3.0) < 4.0 * std::sqrt(96.0 / n));

    std::sort(xs.begin(), xs.end());
    double d = 0.0;
    for (int i = 0; i < n; ++i) {
        const double cdf = 0.5 * std::erfc(-xs[i] / std::sqrt(2.0));
        d = std::max({d, std::abs(cdf - double(i) / n), std::abs(cdf - double(i + 1) / n)});
    }
    // 1% critical value of the KS statistic.
    CHECK(d < 1.63 / std::sqrt(n));

    // Tail beyond the base-strip edge is reached and correctly weighted.
    const auto beyond = std::count_if(xs.begin(), xs.end(), [](double x) { return std::abs(x) > 3.6541528853610088; });
    const double p_tail = std::erfc(3.6541528853610088 / std::sqrt(2.0));
    CHECK(std::abs(beyond - n * p_tail) < 5.0 * std::sqrt(n * p_tail) + 1.0);
}

TEST_CASE("exponential mean") {
    RngStream rng(5, 5);
    constexpr int n = 200000;
    double sum = 0.0;
    for (int k = 0; k < n; ++k) sum += rng.exponential(4.0);
    CHECK(std::abs(sum / n - 0.25) < 4.0 * 0.25 / std::sqrt(n));
}

namespace {

double poisson_pmf(double mean, int k) {
    return std::exp(-mean + k * std::log(mean) - std::lgamma(k + 1.0));
}

// Pearson chi-square of the empirical counts against the exact pmf, with
// cells pooled so that every expected count is at least 20.
struct ChiSquare {
    double statistic;
    int dof;
};

ChiSquare poisson_chi_square(double mean, int n, std::uint64_t seed) {
    RngStream rng(seed, 0);
    const int k_max = static_cast<int>(mean * 3 + 50);
    std::vector<double> counts(k_max + 1, 0.0);
    for (int i = 0; i < n; ++i) ++counts[std::min<std::uint64_t>(rng.poisson(mean), k_max)];

    std::vector<double> probs(k_max + 1);
    double head = 0.0;
    for (int k = 0; k < k_max; ++k) head += probs[k] = poisson_pmf(mean, k);
    probs[k_max] = 1.0 - head;

    double stat = 0.0, obs = 0.0, exp = 0.0;
    int cells = 0;
    for (int k = 0; k <= k_max; ++k) {
        obs += counts[k];
        exp += probs[k] * n;
        if (exp >= 20.0 || k == k_max) {
            stat += (obs - exp) * (obs - exp) / exp;
            ++cells;
            obs = exp = 0.0;
        }
    }
    return {stat, cells - 1};
}

}  // namespace

TEST_CASE("poisson sampler matches the exact pmf across both regimes") {
    for (double mean : {0.3, 2.0, 9.5, 10.0, 25.0, 200.0}) {
        CAPTURE(mean);
        const auto chi = poisson_chi_square(mean, 400000, 17);
        CAPTURE(chi.dof);
        // Four standard deviations above the chi-square mean.
        CHECK(chi.statistic < chi.dof + 4.0 * std::sqrt(2.0 * chi.dof));
    }
}

TEST_CASE("poisson mean and variance at 200") {
    RngStream rng(9, 1);
    constexpr int n = 200000;
    double s = 0, s2 = 0;
    for (int i = 0; i < n; ++i) {
        const double k = static_cast<double>(rng.poisson(200.0));
        s += k;
        s2 += k * k;
    }
    const double mean = s / n;
    const double var = s2 / n - mean * mean;
    CHECK(std::abs(mean - 200.0) < 4.0 * std::sqrt(200.0 / n));
    CHECK(std::abs(var - 200.0) < 4.0 * 200.0 * std::sqrt(2.0 / n));
    CHECK(rng.poisson(0.0) == 0);
}

TEST_CASE("log_factorial table and Stirling branch agree with lgamma") {
    for (std::uint64_t k : {0ull, 1ull, 5ull, 255ull, 256ull, 257ull, 1000ull, 123456ull}) {
        CHECK(detail::log_factorial(k) == doctest::Approx(std::lgamma(double(k) + 1.0)).epsilon(1e-13));
    }
}
