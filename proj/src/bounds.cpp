#include "telegraph/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace telegraph {

namespace {

void require_positive(double value, const char* name) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw std::invalid_argument(std::string(name) + " must be positive and finite");
    }
}

double brownian_moment_series(double x) noexcept {
    if (std::abs(x) < 1e-8) return 1.0 + x * (0.5 + x / 6.0);
    return std::expm1(x) / x;
}

}  // namespace

double w2_bound_sym(double T_star, double L_star, double C) {
    require_positive(T_star, "T_star");
    require_positive(L_star, "L_star");
    require_positive(C, "C");
    const double ratio = T_star / (L_star * L_star);
    const double bracket = std::sqrt(std::log(T_star + 3.0)) + std::pow(T_star, -0.75);
    return C * std::sqrt(ratio) * std::pow(T_star, -0.25) * bracket + C / L_star;
}

double w2_bound_asym(const ModelParams& params, double C) {
    if (params.is_symmetric()) {
        throw std::invalid_argument("w2_bound_asym requires asymmetric same-rate parameters");
    }
    const Scalings s = derive_scalings(params);
    return w2_bound_sym(s.T_star, s.L_star, C);
}

double brownian_weight_moment(double a, double b, double T, double sigma2) {
    if (!(T > 0.0) || !(sigma2 >= 0.0)) {
        throw std::invalid_argument("brownian_weight_moment requires T > 0 and sigma2 >= 0");
    }
    return brownian_moment_series(2.0 * T * (a * a * sigma2 + b));
}

double telegraph_weight_moment_bound(double a, double b, double lambda, double T_star, double L_star) {
    require_positive(lambda, "lambda");
    require_positive(T_star, "T_star");
    require_positive(L_star, "L_star");
    const double a2_over_l2 = a * a / (L_star * L_star);
    const double q = std::sqrt(1.0 + 4.0 * a2_over_l2);
    const double exponent = 2.0 * T_star * b / lambda + 4.0 * a2_over_l2 * T_star / (1.0 + q);
    return (1.0 + 1.0 / q) * std::exp(std::max(0.0, exponent));
}

double telegraph_weight_moment_bound_simple(double a, double T_star, double L_star) {
    require_positive(T_star, "T_star");
    require_positive(L_star, "L_star");
    const double exponent = 4.0 * a * a * T_star / (L_star * L_star);
    if (exponent > 700.0) {
        throw std::overflow_error("telegraph_weight_moment_bound_simple: exponent exceeds 700");
    }
    return 2.0 * std::exp(std::max(0.0, exponent));
}

double risk_neutral_b(double a, double sigma2) noexcept { return -0.5 * a * a * sigma2; }

double telegraph_mgf(double a, double lambda, double v0, double L, double s) {
    require_positive(lambda, "lambda");
    if (!(s >= 0.0)) throw std::invalid_argument("telegraph_mgf requires s >= 0");
    const double theta_v = 2.0 * a * v0 / L;
    const double rho = std::sqrt(lambda * lambda + theta_v * theta_v);
    const double ratio = lambda / rho;
    // e^{-lambda s}(cosh(rho s) + (lambda/rho) sinh(rho s))
    //   = ((1 + ratio) e^{s(rho - lambda)} + (1 - ratio) e^{-s(rho + lambda)}) / 2
    return 0.5 * ((1.0 + ratio) * std::exp(s * (rho - lambda)) +
                  (1.0 - ratio) * std::exp(-s * (rho + lambda)));
}

BoundReport total_error_bound_sym(const ObservableSpec& spec, const ModelParams& params, double C) {
    if (!params.is_symmetric()) {
        throw std::invalid_argument("total_error_bound_sym requires symmetric parameters");
    }
    const Scalings s = derive_scalings(params);
    BoundReport r;
    r.C = C;
    r.w2_bound = w2_bound_sym(s.T_star, s.L_star, C);
    r.m_brownian = brownian_weight_moment(spec.a, spec.b, params.T(), s.sigma2);
    r.m_telegraph_bound = telegraph_weight_moment_bound(spec.a, spec.b, params.lambda(), s.T_star, s.L_star);
    r.prefactor = std::abs(spec.a) * spec.kappa_f() * spec.kappa_g();
    r.total = r.prefactor * r.w2_bound * (std::sqrt(r.m_telegraph_bound) + std::sqrt(r.m_brownian));
    return r;
}

BoundReport total_error_bound_asym(const ObservableSpec& spec, const ModelParams& params, double C) {
    if (params.is_symmetric()) {
        throw std::invalid_argument("total_error_bound_asym requires asymmetric same-rate parameters");
    }
    const Scalings s = derive_scalings(params);
    const double shifted_b = spec.b + spec.a * s.drift;
    BoundReport r;
    r.C = C;
    r.w2_bound = w2_bound_sym(s.T_star, s.L_star, C);
    r.m_brownian = brownian_weight_moment(spec.a, shifted_b, params.T(), s.sigma2);
    r.m_telegraph_bound =
        telegraph_weight_moment_bound(spec.a, shifted_b, params.lambda(), s.T_star, s.L_star);
    r.prefactor = std::sqrt(2.0) * std::abs(spec.a) * spec.kappa_f() * spec.kappa_g();
    r.total = r.prefactor * r.w2_bound * (std::sqrt(r.m_telegraph_bound) + std::sqrt(r.m_brownian));
    return r;
}

IntegrabilityThresholds integrability_thresholds(double T_star, double L_star) {
    require_positive(T_star, "T_star");
    require_positive(L_star, "L_star");
    const double inv_scale = L_star * L_star / T_star;
    return {0.5 * inv_scale, 1.5 * inv_scale};
}

}  // namespace telegraph
