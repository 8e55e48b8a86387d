#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "oracles.hpp"
#include "telegraph/bounds.hpp"
#include "telegraph/functionals.hpp"
#include "telegraph/mc_engine.hpp"

using namespace telegraph;

namespace {

ObservableSpec experiment_spec() {
    ObservableSpec spec;
    spec.a = 3.0;
    spec.b = -0.045;
    spec.g = FunctionKind::call_floor(1.0, 0.0);
    return spec;
}

}  // namespace

TEST_CASE("w2_bound_sym spot values") {
    CHECK(w2_bound_sym(100.0, 100.0, 1.0) == doctest::Approx(0.0790788439107895).epsilon(1e-12));
    CHECK(w2_bound_sym(1.0, 1.0, 1.0) == doctest::Approx(3.17741002251547).epsilon(1e-12));
    CHECK_THROWS_AS(w2_bound_sym(0.0, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(w2_bound_sym(1.0, -1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(w2_bound_sym(1.0, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("w2_bound_sym is linear in C and strictly decreasing in L_star") {
    std::mt19937_64 gen(1);
    std::uniform_real_distribution<double> u(0.01, 500.0);
    for (int k = 0; k < 10000; ++k) {
        const double T = u(gen), L = u(gen), C = u(gen) / 100.0;
        REQUIRE(w2_bound_sym(T, L, 2.0 * C) == doctest::Approx(2.0 * w2_bound_sym(T, L, C)).epsilon(1e-14));
        REQUIRE(w2_bound_sym(T, L * 1.01, C) < w2_bound_sym(T, L, C));
    }
}

TEST_CASE("w2_bound_asym reduces to the symmetric formula") {
    CHECK(w2_bound_asym(ModelParams::asymmetric(100.0, 2.0, 0.0, 1.0, 1.0), 1.0) ==
          doctest::Approx(0.0790788439107895).epsilon(1e-12));
    CHECK(w2_bound_asym(ModelParams::asymmetric(4.0, 3.0, 1.0, 1.0, 1.0), 1.0) ==
          doctest::Approx(w2_bound_sym(4.0, 2.0, 1.0)).epsilon(1e-15));
    CHECK(w2_bound_sym(4.0, 2.0, 1.0) == doctest::Approx(1.73638485112438).epsilon(1e-12));
    CHECK_THROWS_AS(ModelParams::asymmetric(1.0, 1.0, -1.0, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(w2_bound_asym(ModelParams::symmetric(1.0, 1.0, 1.0, 1.0), 1.0), std::invalid_argument);
}

TEST_CASE("brownian_weight_moment") {
    CHECK(brownian_weight_moment(0.0, 0.0, 1.0, 1.0) == 1.0);
    CHECK(brownian_weight_moment(3.0, -0.045, 1.0, 0.01) == doctest::Approx(1.04638093005789).epsilon(1e-12));
    // Risk-neutral b collapses x to a^2 sigma2 T, i.e. a^2 T* / L*^2.
    const double a = 3.0, sigma2 = 0.01;
    const double x = a * a * 100.0 / (100.0 * 100.0);
    CHECK(brownian_weight_moment(a, risk_neutral_b(a, sigma2), 1.0, sigma2) ==
          doctest::Approx(std::expm1(x) / x).epsilon(1e-14));
    // Continuity across x = 0.
    for (double eps : {1e-14, -1e-14, 1e-9, -1e-9, 1e-7, -1e-7}) {
        CHECK(brownian_weight_moment(0.0, eps / 2.0, 1.0, 1.0) == doctest::Approx(1.0 + eps / 2.0).epsilon(1e-14));
    }
    CHECK_THROWS_AS(brownian_weight_moment(1.0, 0.0, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(brownian_weight_moment(1.0, 0.0, 1.0, -1.0), std::invalid_argument);
}

TEST_CASE("telegraph weight moment bounds") {
    CHECK(telegraph_weight_moment_bound(0.0, 0.0, 1.0, 1.0, 1.0) == 2.0);
    CHECK(telegraph_weight_moment_bound(3.0, -0.045, 100.0, 100.0, 100.0) ==
          doctest::Approx(2.18603082592224).epsilon(1e-12));
    CHECK(telegraph_weight_moment_bound_simple(0.0, 1.0, 1.0) == 2.0);
    CHECK(telegraph_weight_moment_bound_simple(3.0, 100.0, 100.0) ==
          doctest::Approx(2.86665882912068).epsilon(1e-12));
    CHECK_THROWS_AS(telegraph_weight_moment_bound_simple(100.0, 100.0, 1.0), std::overflow_error);
}

TEST_CASE("simple bound dominates at the risk-neutral drift") {
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> ua(-4.0, 4.0), ulam(0.1, 200.0), uT(0.05, 3.0), uL(0.2, 5.0), uv(0.1, 3.0);
    for (int k = 0; k < 10000; ++k) {
        const double a = ua(gen), lambda = ulam(gen), T = uT(gen), L = uL(gen), v0 = uv(gen);
        const Scalings s = derive_scalings(ModelParams::symmetric(lambda, v0, T, L));
        if (4.0 * a * a * s.T_star / (s.L_star * s.L_star) > 700.0) continue;
        const double b = risk_neutral_b(a, s.sigma2);
        REQUIRE(telegraph_weight_moment_bound(a, b, lambda, s.T_star, s.L_star) <=
                telegraph_weight_moment_bound_simple(a, s.T_star, s.L_star));
    }
}

TEST_CASE("risk_neutral_b") {
    CHECK(risk_neutral_b(3.0, 0.01) == doctest::Approx(-0.045).epsilon(1e-15));
    CHECK(risk_neutral_b(0.0, 7.0) == 0.0);
    CHECK(risk_neutral_b(2.0, 1.0) == -2.0);
}

TEST_CASE("telegraph_mgf") {
    for (double s : {0.0, 0.3, 1.0, 50.0}) {
        for (double lambda : {0.5, 1.0, 1000.0}) CHECK(telegraph_mgf(0.0, lambda, 1.0, 1.0, s) == doctest::Approx(1.0));
    }
    CHECK(telegraph_mgf(0.5, 1.0, 1.0, 1.0, 1.0) == doctest::Approx(1.30467797396402).epsilon(1e-12));
    std::mt19937_64 gen(9);
    std::uniform_real_distribution<double> u(0.01, 5.0);
    for (int k = 0; k < 10000; ++k) {
        const double a = u(gen), lambda = u(gen), s = u(gen);
        REQUIRE(telegraph_mgf(a, lambda, 1.0, 1.0, s) == telegraph_mgf(-a, lambda, 1.0, 1.0, s));
    }
    // Large lambda s stays finite and tends to the Brownian limit exp(2 a^2 s / lambda).
    const double big = telegraph_mgf(3.0, 1e6, 1.0, 1.0, 1e3);
    CHECK(std::isfinite(big));
    CHECK(big == doctest::Approx(std::exp(2.0 * 9.0 * 1e3 / 1e6)).epsilon(1e-6));
    CHECK_THROWS_AS(telegraph_mgf(1.0, 1.0, 1.0, 1.0, -1.0), std::invalid_argument);
}

TEST_CASE("telegraph_mgf matches Monte Carlo over alternating paths") {
    for (double a : {0.5, 1.0}) {
        for (double lambda : {1.0, 4.0}) {
            for (double s : {0.25, 0.5, 1.0}) {
                CAPTURE(a);
                CAPTURE(lambda);
                CAPTURE(s);
                auto task = [&](RngStream& rng) {
                    const auto path = sample_sym_path(lambda, 1.0, s, SimVariant::Alternating, rng);
                    return std::exp(2.0 * a * position_at(path, s));
                };
                const MCEstimate est = mc_estimate(task, 200000, 3);
                CHECK(std::abs(est.mean - telegraph_mgf(a, lambda, 1.0, 1.0, s)) <= 3.0 * est.std_error);
            }
        }
    }
}

TEST_CASE("telegraph weight moment bound dominates Monte Carlo") {
    for (double a : {1.0, 3.0}) {
        for (double b : {-0.045, 0.0}) {
            for (double lambda : {1.0, 10.0}) {
                CAPTURE(a);
                CAPTURE(b);
                CAPTURE(lambda);
                const Scalings s = derive_scalings(ModelParams::symmetric(lambda, 1.0, 1.0, 1.0));
                auto task = [&](RngStream& rng) {
                    return weight_squared_exact(sample_sym_path(lambda, 1.0, 1.0, SimVariant::Alternating, rng), a, b,
                                                1.0);
                };
                const MCEstimate est = mc_estimate(task, 100000, 4);
                CHECK(est.mean <= telegraph_weight_moment_bound(a, b, lambda, s.T_star, s.L_star) + 3.0 * est.std_error);
            }
        }
    }
}

TEST_CASE("total_error_bound_sym") {
    const auto params = ModelParams::symmetric(100.0, 1.0, 1.0, 1.0);
    const BoundReport r = total_error_bound_sym(experiment_spec(), params, 1.0);
    CHECK(r.prefactor == 3.0);
    CHECK(r.total == doctest::Approx(0.593435516326572).epsilon(1e-10));
    CHECK(r.total == doctest::Approx(r.prefactor * r.w2_bound *
                                     (std::sqrt(r.m_telegraph_bound) + std::sqrt(r.m_brownian))));
    CHECK(total_error_bound_sym(experiment_spec(), params, 2.0).total == doctest::Approx(2.0 * r.total).epsilon(1e-14));

    ObservableSpec zero = experiment_spec();
    zero.a = 0.0;
    CHECK(total_error_bound_sym(zero, params, 1.0).total == 0.0);
    CHECK_THROWS_AS(total_error_bound_sym(experiment_spec(), ModelParams::asymmetric(1.0, 2.0, 1.0, 1.0, 1.0), 1.0),
                    std::invalid_argument);

    // Every cell of the convergence grid has finite positive components.
    for (double sigma : {0.3, 0.5, 0.7}) {
        for (double lambda : default_lambda_grid()) {
            const auto rep = total_error_bound_sym(experiment_observable(sigma, lambda),
                                                   ModelParams::symmetric(lambda, 1.0, 1.0, 1.0), 1.0);
            REQUIRE(std::isfinite(rep.total));
            REQUIRE(rep.total > 0.0);
            REQUIRE(rep.m_brownian > 0.0);
            REQUIRE(rep.m_telegraph_bound > 0.0);
            REQUIRE(rep.w2_bound > 0.0);
        }
    }
}

TEST_CASE("total_error_bound_asym: zero drift is sqrt(2) times the symmetric bound") {
    const auto spec = experiment_spec();
    const BoundReport asym = total_error_bound_asym(spec, ModelParams::asymmetric(100.0, 1.0, 1.0, 1.0, 1.0), 1.0);
    const BoundReport sym = total_error_bound_sym(spec, ModelParams::symmetric(100.0, 1.0, 1.0, 1.0), 1.0);
    CHECK(asym.m_brownian == sym.m_brownian);
    CHECK(asym.m_telegraph_bound == sym.m_telegraph_bound);
    CHECK(asym.w2_bound == sym.w2_bound);
    CHECK(asym.prefactor / sym.prefactor == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(asym.total / sym.total == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    CHECK_THROWS_AS(total_error_bound_asym(spec, ModelParams::symmetric(1.0, 1.0, 1.0, 1.0), 1.0),
                    std::invalid_argument);
}

TEST_CASE("total_error_bound_asym: drifted example") {
    // v0 = 1.2, v0* = 0.8: v = 1, d = 0.2, shifted b = -0.045 + 3 * 0.2.
    const BoundReport r =
        total_error_bound_asym(experiment_spec(), ModelParams::asymmetric(100.0, 1.2, 0.8, 1.0, 1.0), 1.0);
    CHECK(r.m_brownian == doctest::Approx(2.04091981066109).epsilon(1e-11));
    CHECK(r.m_telegraph_bound == doctest::Approx(7.25787793876819).epsilon(1e-11));
    CHECK(r.total == doctest::Approx(1.38316279609684).epsilon(1e-11));
    CHECK(r.m_brownian == doctest::Approx(brownian_weight_moment(3.0, -0.045 + 0.6, 1.0, 0.01)).epsilon(1e-14));
}

TEST_CASE("asymmetric weight equals the symmetric weight with shifted time drift, pathwise") {
    // (1/T) int exp(2a X(s)/L + 2bs) ds for X(s) = drift s + sign Y(s).
    std::mt19937_64 gen(77);
    for (int k = 0; k < 20; ++k) {
        const double v0 = 1.7, v0_star = 0.5, L = 1.3, a = 0.8, b = -0.2;
        const double v = 0.5 * (v0 + v0_star);
        const int sign = (k & 1) ? 1 : -1;
        const AsymmetricPath asym = galilean_asym(oracle::random_path(gen, 6.0, 1.0, v), sign, v0, v0_star);

        constexpr std::size_t n = 400000;
        const double dt = asym.sym.T / n;
        long double sum = 0.0L;
        for (std::size_t i = 0; i < n; ++i) {
            const double t = dt * static_cast<double>(i);
            const double x = asym.drift_rate * t + sign * oracle::integrate_velocity(asym.sym, t);
            sum += std::exp(static_cast<long double>(2.0 * a * x / L + 2.0 * b * t));
        }
        const double riemann = static_cast<double>(sum * dt / asym.sym.T);

        TelegraphPath folded = asym.sym;
        folded.initial_sign *= sign;
        const double d = (v0 - v0_star) / (2.0 * L);
        CHECK(weight_squared_exact(folded, a, b + a * d, L) == doctest::Approx(riemann).epsilon(2e-5));
    }
}

TEST_CASE("integrability thresholds") {
    auto t = integrability_thresholds(1.0, 1.0);
    CHECK(t.a_low == 0.5);
    CHECK(t.a_high == 1.5);
    t = integrability_thresholds(100.0, 100.0);
    CHECK(t.a_low == 50.0);
    CHECK(t.a_high == 150.0);
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> u(0.01, 100.0);
    for (int k = 0; k < 10000; ++k) {
        const auto r = integrability_thresholds(u(gen), u(gen));
        REQUIRE(r.a_high / r.a_low == doctest::Approx(3.0).epsilon(1e-15));
    }
}
