#include "telegraph/paths.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace telegraph {

TelegraphPath sample_sym_path(double lambda, double v, double T, SimVariant variant, RngStream& rng,
                              InitialSign sign_mode) {
    if (!(lambda > 0.0) || !(v > 0.0) || !(T > 0.0)) {
        throw std::invalid_argument("sample_sym_path requires lambda, v, T > 0");
    }
    TelegraphPath path;
    path.T = T;
    path.v = v;
    const int drawn = rng.sign();
    path.initial_sign = sign_mode == InitialSign::PinnedPositive ? 1 : drawn;

    if (variant == SimVariant::Collated) {
        const std::uint64_t n = rng.poisson(2.0 * lambda * T);
        path.jump_times.resize(n);
        for (auto& t : path.jump_times) t = T * rng.uniform_open();
        std::sort(path.jump_times.begin(), path.jump_times.end());
    } else {
        path.jump_times.reserve(static_cast<std::size_t>(lambda * T + 4.0 * std::sqrt(lambda * T) + 4.0));
        double t = rng.exponential(lambda);
        while (t < T) {
            path.jump_times.push_back(t);
            t += rng.exponential(lambda);
        }
    }
    return path;
}

double position_at(const TelegraphPath& path, double t) {
    if (!(t >= 0.0 && t <= path.T)) {
        throw std::out_of_range("position_at: t=" + std::to_string(t) + " outside [0, " +
                                std::to_string(path.T) + "]");
    }
    double sum = 0.0;
    double left = 0.0;
    double sign = path.initial_sign;
    for (const double jump : path.jump_times) {
        if (jump >= t) break;
        sum += sign * (jump - left);
        left = jump;
        sign = -sign;
    }
    sum += sign * (t - left);
    return path.v * sum;
}

double position_at(const AsymmetricPath& path, double t) {
    return path.drift_rate * t + path.sign * position_at(path.sym, t);
}

AsymmetricPath galilean_asym(TelegraphPath sym, int sign, double v0, double v0_star) {
    if (sign != 1 && sign != -1) {
        throw std::invalid_argument("galilean_asym: sign must be +1 or -1");
    }
    const double v = 0.5 * (v0 + v0_star);
    if (v == 0.0) {
        throw std::invalid_argument("galilean_asym: v0 + v0_star must be non-zero");
    }
    if (sym.v != v) {
        throw std::invalid_argument("galilean_asym: symmetric path speed " + std::to_string(sym.v) +
                                    " does not match (v0 + v0_star)/2 = " + std::to_string(v));
    }
    return AsymmetricPath{0.5 * (v0 - v0_star), sign, std::move(sym)};
}

GridPath sample_bm_grid(double sigma2, double drift, double T, std::size_t n_steps, RngStream& rng) {
    if (!(sigma2 >= 0.0) || n_steps == 0 || !(T > 0.0)) {
        throw std::invalid_argument("sample_bm_grid requires sigma2 >= 0, T > 0, n_steps >= 1");
    }
    GridPath grid;
    grid.n_steps = n_steps;
    grid.dt = T / static_cast<double>(n_steps);
    grid.positions.resize(n_steps + 1);
    const double step_drift = drift * grid.dt;
    const double step_sd = std::sqrt(sigma2 * grid.dt);
    double x = 0.0;
    grid.positions[0] = x;
    for (std::size_t i = 1; i <= n_steps; ++i) {
        x = x + step_drift + step_sd * rng.normal();
        grid.positions[i] = x;
    }
    return grid;
}

GridPath sample_telegraph_grid(const TelegraphPath& path, std::size_t n_steps) {
    if (n_steps == 0) throw std::invalid_argument("sample_telegraph_grid requires n_steps >= 1");
    GridPath grid;
    grid.n_steps = n_steps;
    grid.dt = path.T / static_cast<double>(n_steps);
    grid.positions.resize(n_steps + 1);
    for (std::size_t i = 0; i <= n_steps; ++i) {
        const double t = std::min(static_cast<double>(i) * grid.dt, path.T);
        grid.positions[i] = position_at(path, t);
    }
    return grid;
}

}  // namespace telegraph
