#include "telegraph/functionals.hpp"

#include <cmath>
#include <string>

namespace telegraph {

namespace {

constexpr double kMaxExponent = 700.0;

void check_exponent(double exponent) {
    if (exponent > kMaxExponent) {
        throw std::overflow_error("exponent " + std::to_string(exponent) +
                                  " exceeds 700; parameters are outside the representable range");
    }
}

}  // namespace

double expm1_ratio(double x) noexcept {
    const double ax = std::abs(x);
    if (ax < 1e-12) return 1.0;
    if (ax < 1e-8) return 1.0 + x * (0.5 + x / 6.0);
    return std::expm1(x) / x;
}

double SegmentIntegralTerm::value() const {
    const double width = right - left;
    const double growth = coeff * width;
    check_exponent(prefix_exponent);
    check_exponent(prefix_exponent + growth);
    return std::exp(prefix_exponent) * width * expm1_ratio(growth);
}

double exact_exp_avg_integral(const TelegraphPath& path, double a, double b, double L) {
    const double slope = a * path.v / L;
    double position = 0.0;
    double left = 0.0;
    double sign = path.initial_sign;
    double total = 0.0;
    SegmentIntegralTerm term;
    const std::size_t segments = path.jump_times.size() + 1;
    for (std::size_t i = 0; i < segments; ++i) {
        const double right = i + 1 < segments ? path.jump_times[i] : path.T;
        term.index = i + 1;
        term.coeff = sign * slope + b;
        term.left = left;
        term.right = right;
        term.prefix_exponent = a * position / L + b * left;
        total += term.value();
        position += sign * path.v * (right - left);
        left = right;
        sign = -sign;
    }
    return total / path.T;
}

double exact_functional(const TelegraphPath& path, const ObservableSpec& spec, double L,
                        double strike_shift) {
    if (!spec.f.is_linear()) {
        throw NonlinearFunctionError(
            "exact_functional needs a linear f (identity or affine); use grid_functional for call-floor f");
    }
    const double ell = spec.f.tag == FunctionKind::Tag::Identity ? 1.0 : spec.f.slope;
    return eval_g(spec, ell * exact_exp_avg_integral(path, spec.a, spec.b, L) - strike_shift);
}

double weight_squared_exact(const TelegraphPath& path, double a, double b, double L) {
    return exact_exp_avg_integral(path, 2.0 * a, 2.0 * b, L);
}

double grid_functional(const GridPath& path, const ObservableSpec& spec, double strike_shift) {
    if (path.n_steps == 0 || path.positions.size() != path.n_steps + 1) {
        throw std::invalid_argument("grid_functional: malformed grid path");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < path.n_steps; ++i) {
        const double t = static_cast<double>(i) * path.dt;
        sum += eval_f(spec, std::exp(spec.a * path.positions[i] + spec.b * t));
    }
    return eval_g(spec, sum * path.dt / path.horizon() - strike_shift);
}

double brownian_grid_functional(const ObservableSpec& spec, double sigma2, double drift, double T,
                                std::size_t n_steps, double strike_shift, RngStream& rng) {
    if (!(sigma2 >= 0.0) || n_steps == 0 || !(T > 0.0)) {
        throw std::invalid_argument("brownian_grid_functional requires sigma2 >= 0, T > 0, n_steps >= 1");
    }
    const double dt = T / static_cast<double>(n_steps);
    const double step_drift = drift * dt;
    const double step_sd = std::sqrt(sigma2 * dt);
    double x = 0.0;
    double sum = 0.0;
    for (std::size_t i = 0; i < n_steps; ++i) {
        const double t = static_cast<double>(i) * dt;
        sum += eval_f(spec, std::exp(spec.a * x + spec.b * t));
        x = x + step_drift + step_sd * rng.normal();
    }
    const double horizon = dt * static_cast<double>(n_steps);
    return eval_g(spec, sum * dt / horizon - strike_shift);
}

}  // namespace telegraph
