#pragma once

// Deterministic Monte Carlo estimation, the lambda-convergence experiment,
// the log-log regression and the MGF validation harness.
//
// Replicate i of a run draws from RngStream(seed, substream_index(domain, i)),
// so a result depends only on (task, n, seed, domain). The parallel kernel
// splits replicates into fixed-size blocks, reduces each block in index order
// and merges block accumulators in block order; the outcome is bitwise
// identical for every worker count. mc_estimate_serial is the plain
// single-accumulator reference used in tests and benchmarks.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "telegraph/accumulator.hpp"
#include "telegraph/model.hpp"
#include "telegraph/parallel.hpp"
#include "telegraph/rng.hpp"

namespace telegraph {

inline constexpr unsigned kReplicateBits = 40;
inline constexpr std::uint64_t kMaxReplicates = std::uint64_t{1} << kReplicateBits;
inline constexpr std::uint64_t kReplicateBlock = 4096;

/// Substreams of distinct domains never coincide: the domain occupies the
/// bits above kReplicateBits.
constexpr std::uint64_t substream_index(std::uint64_t domain, std::uint64_t replicate) noexcept {
    return (domain << kReplicateBits) | replicate;
}

class NonFiniteSampleError : public std::runtime_error {
public:
    NonFiniteSampleError(std::uint64_t replicate, double value)
        : std::runtime_error("non-finite sample " + std::to_string(value) + " at replicate " +
                             std::to_string(replicate)),
          replicate_(replicate) {}

    std::uint64_t replicate() const noexcept { return replicate_; }

private:
    std::uint64_t replicate_;
};

namespace detail {

inline void check_replicate_count(std::uint64_t n) {
    if (n < 2) throw std::invalid_argument("Monte Carlo estimate needs n >= 2 samples");
    if (n > kMaxReplicates) throw std::invalid_argument("replicate count exceeds 2^40");
}

template <class Task>
double run_replicate(const Task& task, std::uint64_t seed, std::uint64_t domain, std::uint64_t i) {
    RngStream rng(seed, substream_index(domain, i));
    const double x = task(rng);
    if (!std::isfinite(x)) throw NonFiniteSampleError(i, x);
    return x;
}

}  // namespace detail

/// OpenMP estimator. `task` is called concurrently as double(RngStream&).
template <class Task>
MCEstimate mc_estimate(const Task& task, std::uint64_t n, std::uint64_t seed, std::uint64_t domain = 0,
                       int workers = 0) {
    detail::check_replicate_count(n);
    const std::uint64_t n_blocks = (n + kReplicateBlock - 1) / kReplicateBlock;
    std::vector<MomentAccumulator> partial(n_blocks);
    std::vector<std::exception_ptr> failure(n_blocks);
    [[maybe_unused]] const int threads = resolve_workers(workers);

#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (std::int64_t blk = 0; blk < static_cast<std::int64_t>(n_blocks); ++blk) {
        const std::uint64_t begin = static_cast<std::uint64_t>(blk) * kReplicateBlock;
        const std::uint64_t end = std::min(n, begin + kReplicateBlock);
        try {
            MomentAccumulator acc;
            for (std::uint64_t i = begin; i < end; ++i) acc.add(detail::run_replicate(task, seed, domain, i));
            partial[blk] = acc;
        } catch (...) {
            failure[blk] = std::current_exception();
        }
    }

    for (const auto& f : failure) {
        if (f) std::rethrow_exception(f);
    }
    MomentAccumulator total;
    for (const auto& acc : partial) total.merge(acc);
    return total.estimate();
}

/// Serial reference: one accumulator, replicates in index order.
template <class Task>
MCEstimate mc_estimate_serial(const Task& task, std::uint64_t n, std::uint64_t seed,
                              std::uint64_t domain = 0) {
    detail::check_replicate_count(n);
    MomentAccumulator acc;
    for (std::uint64_t i = 0; i < n; ++i) acc.add(detail::run_replicate(task, seed, domain, i));
    return acc.estimate();
}

// ---------------------------------------------------------------------------
// Convergence experiment

enum class BrownianScaling {
    KacDiffusivity,  // sigma_B^2 = v0^2 / (lambda L^2)
    Standard,        // sigma_B^2 = 1
};

std::vector<double> default_lambda_grid();

struct ExperimentConfig {
    std::vector<double> strikes{0.7, 1.0, 1.3};
    std::vector<double> sigmas{0.3, 0.5, 0.7};
    std::vector<double> lambda_grid = default_lambda_grid();
    std::uint64_t n_samples = 10'000'000;
    std::size_t n_grid_steps = 10'000;
    SimVariant variant = SimVariant::Alternating;
    bool pin_initial_sign = false;
    std::uint64_t seed = 1;
    double C = 1.0;
    BrownianScaling brownian_scaling = BrownianScaling::KacDiffusivity;
    double v0 = 1.0;
    double T = 1.0;
    double L = 1.0;
    int workers = 0;

    void validate() const;
};

/// One (K, sigma, lambda) combination; index is its position in row order
/// (strikes outermost, lambda innermost).
struct ExperimentCell {
    double K;
    double sigma;
    double lambda;
    std::uint64_t index;
};

struct ExperimentRow {
    double K = 0.0;
    double sigma = 0.0;
    double lambda = 0.0;
    std::uint64_t n = 0;
    MCEstimate brownian;
    MCEstimate telegraph;
    double error = 0.0;        // brownian.mean - telegraph.mean
    double bound_per_C = 0.0;  // total_error_bound_sym at C = 1
    SimVariant variant = SimVariant::Alternating;
    std::uint64_t seed = 0;

    friend bool operator==(const ExperimentRow& x, const ExperimentRow& y) noexcept;
};

std::vector<ExperimentCell> experiment_cells(const ExperimentConfig& config);

/// a = sigma sqrt(lambda), b = -sigma^2 / 2, f = identity, g = max{x, 0}
/// (applied to avg - K).
ObservableSpec experiment_observable(double sigma, double lambda);

double brownian_diffusivity(const ExperimentConfig& config, double lambda);

/// Seed domains of the two estimators of a cell.
constexpr std::uint64_t telegraph_domain(std::uint64_t cell) noexcept { return 2 * cell; }
constexpr std::uint64_t brownian_domain(std::uint64_t cell) noexcept { return 2 * cell + 1; }

MCEstimate estimate_telegraph_cell(const ExperimentConfig& config, const ExperimentCell& cell);
MCEstimate estimate_brownian_cell(const ExperimentConfig& config, const ExperimentCell& cell);

using RowSink = std::function<void(const ExperimentRow&)>;

/// One row per cell, in cell order. `on_row` sees each row as soon as it is done.
std::vector<ExperimentRow> run_experiment(const ExperimentConfig& config, const RowSink& on_row = {});

// ---------------------------------------------------------------------------
// Regression and MGF validation

struct RegressionFit {
    double intercept = 0.0;
    double slope = 0.0;
    std::size_t n_points = 0;
    double r_squared = 0.0;
    std::size_t n_nonpositive = 0;  // points whose error was <= 0 (fitted on |error|)
};

/// OLS of ln|error| on ln(lambda).
RegressionFit ols_loglog(const std::vector<std::pair<double, double>>& points);

struct MgfCheck {
    double s = 0.0;
    double empirical = 0.0;
    double std_error = 0.0;
    double analytic = 0.0;
    double z_score = 0.0;  // 0 when std_error == 0
};

struct MgfCheckConfig {
    double lambda = 1.0;
    double a = 0.5;
    std::vector<double> s_list{0.25, 0.5, 1.0};
    std::uint64_t n = 1'000'000;
    std::uint64_t seed = 1;
    SimVariant variant = SimVariant::Alternating;
    double v0 = 1.0;
    double L = 1.0;
    int workers = 0;
};

std::vector<MgfCheck> validate_mgf(const MgfCheckConfig& config);

}  // namespace telegraph
