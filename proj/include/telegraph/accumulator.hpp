#pragma once

#include <cmath>
#include <cstdint>

namespace telegraph {

struct MCEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t n = 0;
};

/// Single-pass mean/variance (Welford) with an associative merge (Chan et al.).
class MomentAccumulator {
public:
    void add(double x) noexcept {
        ++count_;
        const double delta = x - mean_;
        mean_ += delta / static_cast<double>(count_);
        m2_ += delta * (x - mean_);
    }

    void merge(const MomentAccumulator& other) noexcept {
        if (other.count_ == 0) return;
        if (count_ == 0) {
            *this = other;
            return;
        }
        const double n_a = static_cast<double>(count_);
        const double n_b = static_cast<double>(other.count_);
        const double n = n_a + n_b;
        const double delta = other.mean_ - mean_;
        mean_ += delta * (n_b / n);
        m2_ += other.m2_ + delta * delta * (n_a * n_b / n);
        count_ += other.count_;
    }

    std::uint64_t count() const noexcept { return count_; }
    double mean() const noexcept { return mean_; }
    /// Unbiased sample variance; 0 for fewer than two samples.
    double variance() const noexcept {
        return count_ > 1 ? m2_ / static_cast<double>(count_ - 1) : 0.0;
    }

    MCEstimate estimate() const noexcept {
        const double se = count_ > 0 ? std::sqrt(variance() / static_cast<double>(count_)) : 0.0;
        return {mean_, se, count_};
    }

private:
    std::uint64_t count_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

}  // namespace telegraph
