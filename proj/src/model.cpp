#include "telegraph/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace telegraph {

namespace {

void require_positive(double value, const char* name) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw std::invalid_argument(std::string(name) + " must be positive and finite, got " +
                                    std::to_string(value));
    }
}

}  // namespace

ModelParams::ModelParams(double lambda, double v0, double v0_star, double T, double L, Mode mode)
    : lambda_(lambda), lambda_star_(lambda), v0_(v0), v0_star_(v0_star), T_(T), L_(L), mode_(mode) {
    require_positive(lambda, "lambda");
    require_positive(T, "T");
    require_positive(L, "L");
    if (!std::isfinite(v0) || !std::isfinite(v0_star)) {
        throw std::invalid_argument("speeds must be finite");
    }
}

ModelParams ModelParams::symmetric(double lambda, double v0, double T, double L) {
    if (v0 == 0.0) {
        throw std::invalid_argument("symmetric mode requires v0 != 0");
    }
    return ModelParams(lambda, v0, -v0, T, L, Mode::Symmetric);
}

ModelParams ModelParams::asymmetric(double lambda, double v0, double v0_star, double T, double L) {
    if (v0 + v0_star == 0.0) {
        throw std::invalid_argument("asymmetric same-rate mode requires v0 + v0_star != 0");
    }
    return ModelParams(lambda, v0, v0_star, T, L, Mode::AsymmetricSameRate);
}

Scalings derive_scalings(const ModelParams& params) {
    Scalings s{};
    if (params.is_symmetric()) {
        s.v_eff = params.v0();
        s.drift = 0.0;
    } else {
        s.v_eff = 0.5 * (params.v0() + params.v0_star());
        s.drift = (params.v0() - params.v0_star()) / (2.0 * params.L());
    }
    if (s.v_eff == 0.0) {
        throw std::invalid_argument("effective speed is zero: no motion scale");
    }
    s.T_star = params.lambda() * params.T();
    s.L_star = params.lambda() * params.L() / std::abs(s.v_eff);
    s.sigma2 = params.lambda() / (s.L_star * s.L_star);
    return s;
}

double FunctionKind::lipschitz() const noexcept {
    return tag == Tag::Identity ? 1.0 : std::abs(slope);
}

std::string_view to_string(FunctionKind::Tag tag) noexcept {
    switch (tag) {
        case FunctionKind::Tag::Identity:
            return "identity";
        case FunctionKind::Tag::Affine:
            return "affine";
        case FunctionKind::Tag::CallFloor:
            return "call-floor";
    }
    return "?";
}

double lipschitz_kappa(const ObservableSpec& spec) noexcept {
    return 2.0 * std::abs(spec.a) * spec.kappa_f() * spec.kappa_g();
}

std::string_view to_string(SimVariant variant) noexcept {
    return variant == SimVariant::Collated ? "collated" : "alternating";
}

SimVariant parse_variant(std::string_view name) {
    if (name == "collated") return SimVariant::Collated;
    if (name == "alternating") return SimVariant::Alternating;
    throw std::invalid_argument("unknown variant '" + std::string(name) +
                                "' (expected collated|alternating)");
}

}  // namespace telegraph
