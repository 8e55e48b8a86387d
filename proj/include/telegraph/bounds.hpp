#pragma once

// Closed-form Wasserstein bounds, weight moments, the telegraph MGF and the
// assembled weak-error bounds. The absolute constant C of the W2 bound is
// unknown and is always an explicit argument; every W2 value is "bound/C"
// when C = 1.

#include "telegraph/model.hpp"

namespace telegraph {

struct BoundReport {
    double C = 1.0;
    double w2_bound = 0.0;           // includes the factor C
    double m_brownian = 0.0;         // E[W^2(B)], exact
    double m_telegraph_bound = 0.0;  // upper bound on E[W^2(X / L)]
    double prefactor = 0.0;          // |a| kf kg (symmetric) or sqrt(2) |a| kf kg
    double total = 0.0;              // prefactor * w2 * (sqrt(m_tel) + sqrt(m_bm))
};

/// C sqrt(T*/L*^2) T*^{-1/4} (sqrt(ln(T* + 3)) + T*^{-3/4}) + C / L*.
double w2_bound_sym(double T_star, double L_star, double C);

/// Same formula at (lambda T, lambda L / |v|), v = (v0 + v0_star) / 2.
double w2_bound_asym(const ModelParams& params, double C);

/// E[(1/T) int_0^T exp(2a B(s) + 2bs) ds] for B with diffusivity sigma2:
/// expm1(x)/x with x = 2T(a^2 sigma2 + b).
double brownian_weight_moment(double a, double b, double T, double sigma2);

/// Upper bound on E[W_{a,b}(X/L)^2] for the symmetric process.
double telegraph_weight_moment_bound(double a, double b, double lambda, double T_star, double L_star);

/// The cruder 2 max{1, exp(4 a^2 T* / L*^2)}.
double telegraph_weight_moment_bound_simple(double a, double T_star, double L_star);

/// b = -a^2 sigma2 / 2.
double risk_neutral_b(double a, double sigma2) noexcept;

/// E[exp(2a X(s) / L)] for the symmetric process with flip rate lambda and
/// speed v0, evaluated in a form that does not overflow for large lambda s.
double telegraph_mgf(double a, double lambda, double v0, double L, double s);

BoundReport total_error_bound_sym(const ObservableSpec& spec, const ModelParams& params, double C);

/// Asymmetric same-rate bound. Weight moments are those of the symmetric
/// process with speed v = (v0 + v0_star)/2 and time-drift b + a d, where
/// d = (v0 - v0_star)/(2L): with X/L = d s + Y(s) the exponent
/// 2a X/L + 2bs equals 2aY + 2(b + a d)s.
BoundReport total_error_bound_asym(const ObservableSpec& spec, const ModelParams& params, double C);

struct IntegrabilityThresholds {
    double a_low;   // E[W^2(B)] < infinity for 0 < a < a_low
    double a_high;  // E[W^2(B)] = infinity for a > a_high
};

/// Thresholds (1/2) L*^2 / T* and (3/2) L*^2 / T*.
IntegrabilityThresholds integrability_thresholds(double T_star, double L_star);

}  // namespace telegraph
