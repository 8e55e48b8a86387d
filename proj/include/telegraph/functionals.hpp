#pragma once

// The exponential observable F_{a,b} and its weight W_{a,b}, evaluated in
// closed form on exact telegraph paths and by left-endpoint Riemann sums on
// grid paths.

#include <cstddef>
#include <stdexcept>

#include "telegraph/model.hpp"
#include "telegraph/paths.hpp"
#include "telegraph/rng.hpp"

namespace telegraph {

/// Raised when a closed-form evaluation is asked for a nonlinear f.
class NonlinearFunctionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Integral of exp(coeff * (s - left) + prefix_exponent) over one velocity segment.
struct SegmentIntegralTerm {
    std::size_t index = 0;  // 1-based
    double coeff = 0.0;     // s_i a v / L + b
    double left = 0.0;
    double right = 0.0;
    double prefix_exponent = 0.0;  // a X(left) / L + b left

    double value() const;
};

/// expm1(x)/x with the removable singularity at 0 filled in.
double expm1_ratio(double x) noexcept;

/// (1/T) int_0^T exp(a X(s)/L + b s) ds on the exact path.
/// Throws std::overflow_error when an exponent exceeds 700.
double exact_exp_avg_integral(const TelegraphPath& path, double a, double b, double L);

/// g(ell_f * avg - strike_shift) with avg as above. f must be linear
/// (Identity or Affine); CallFloor f raises NonlinearFunctionError.
double exact_functional(const TelegraphPath& path, const ObservableSpec& spec, double L,
                        double strike_shift = 0.0);

/// W_{a,b}(X / L)^2, i.e. exact_exp_avg_integral(path, 2a, 2b, L).
double weight_squared_exact(const TelegraphPath& path, double a, double b, double L);

/// g( (1/T) sum_{i<n} f(exp(a x_i + b t_i)) dt - strike_shift ). Positions are
/// used as given (already scaled by 1/L).
double grid_functional(const GridPath& path, const ObservableSpec& spec, double strike_shift = 0.0);

/// grid_functional(sample_bm_grid(sigma2, drift, T, n_steps, rng), spec, strike_shift)
/// computed without materializing the grid. Bitwise identical to the two-step
/// route, including the number of draws consumed.
double brownian_grid_functional(const ObservableSpec& spec, double sigma2, double drift, double T,
                                std::size_t n_steps, double strike_shift, RngStream& rng);

}  // namespace telegraph
