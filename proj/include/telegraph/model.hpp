#pragma once

// Model parameters, derived Kac-regime scalings and the exponential
// observable specification shared by every other part of the library.

#include <string_view>

namespace telegraph {

/// Raw inputs of the two-velocity telegraph process.
///
/// The velocity alternates between v0 and -v0_star. Rates carry units of
/// 1/time, speeds length/time; units are documentation only. The start
/// point is always the origin.
class ModelParams {
public:
    enum class Mode { Symmetric, AsymmetricSameRate };

    /// Symmetric process with speeds +/-v0 (lambda_star = lambda, v0_star = -v0).
    static ModelParams symmetric(double lambda, double v0, double T, double L);

    /// Same-rate asymmetric process; requires v0 + v0_star != 0.
    static ModelParams asymmetric(double lambda, double v0, double v0_star, double T, double L);

    double lambda() const noexcept { return lambda_; }
    double lambda_star() const noexcept { return lambda_star_; }
    double v0() const noexcept { return v0_; }
    double v0_star() const noexcept { return v0_star_; }
    double T() const noexcept { return T_; }
    double L() const noexcept { return L_; }
    Mode mode() const noexcept { return mode_; }
    bool is_symmetric() const noexcept { return mode_ == Mode::Symmetric; }

private:
    ModelParams(double lambda, double v0, double v0_star, double T, double L, Mode mode);

    double lambda_;
    double lambda_star_;
    double v0_;
    double v0_star_;
    double T_;
    double L_;
    Mode mode_;
};

/// Dimensionless time/length scales and Brownian-limit coefficients.
struct Scalings {
    double T_star;  // lambda * T
    double L_star;  // lambda * L / |v_eff|
    double sigma2;  // lambda / L_star^2 == v_eff^2 / (lambda L^2)
    double drift;   // (v0 - v0_star) / (2L); exactly 0 in symmetric mode
    double v_eff;   // v0 (symmetric) or (v0 + v0_star) / 2
};

Scalings derive_scalings(const ModelParams& params);

/// Closed set of Lipschitz maps used for f and g.
struct FunctionKind {
    enum class Tag { Identity, Affine, CallFloor };

    Tag tag = Tag::Identity;
    double slope = 1.0;  // ell
    double floor = 0.0;  // c, CallFloor only

    static FunctionKind identity() { return {}; }
    static FunctionKind affine(double ell) { return {Tag::Affine, ell, 0.0}; }
    static FunctionKind call_floor(double ell, double c) { return {Tag::CallFloor, ell, c}; }

    double operator()(double x) const noexcept {
        switch (tag) {
            case Tag::Identity:
                return x;
            case Tag::Affine:
                return slope * x;
            case Tag::CallFloor:
                return slope * x < floor ? floor : slope * x;
        }
        return x;
    }
    /// Best Lipschitz constant: 1 for Identity, |ell| otherwise.
    double lipschitz() const noexcept;
    bool is_linear() const noexcept { return tag != Tag::CallFloor; }
};

std::string_view to_string(FunctionKind::Tag tag) noexcept;

/// F_{a,b}(X) = g( (1/T) int_0^T f(exp(a X(s) + b s)) ds ).
struct ObservableSpec {
    double a = 0.0;
    double b = 0.0;
    FunctionKind f = FunctionKind::identity();
    FunctionKind g = FunctionKind::identity();

    double kappa_f() const noexcept { return f.lipschitz(); }
    double kappa_g() const noexcept { return g.lipschitz(); }
};

/// kappa = 2 |a| kappa_f kappa_g.
double lipschitz_kappa(const ObservableSpec& spec) noexcept;

inline double eval_f(const ObservableSpec& spec, double x) noexcept { return spec.f(x); }
inline double eval_g(const ObservableSpec& spec, double x) noexcept { return spec.g(x); }

/// How jump times of a symmetric path are generated.
///   Collated:    n ~ Poisson(2 lambda T), sorted uniforms (flip rate 2 lambda).
///   Alternating: i.i.d. Exp(lambda) dwell times (flip rate lambda).
enum class SimVariant { Collated, Alternating };

std::string_view to_string(SimVariant variant) noexcept;
SimVariant parse_variant(std::string_view name);

}  // namespace telegraph
