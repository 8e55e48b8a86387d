#pragma once

// Exact telegraph sample paths and equidistant grid paths.

#include <cstddef>
#include <vector>

#include "telegraph/model.hpp"
#include "telegraph/rng.hpp"

namespace telegraph {

/// Complete description of a symmetric telegraph path on [0, T]:
/// velocity is initial_sign * v on the first segment and flips at every
/// entry of jump_times (ascending, inside (0, T)).
struct TelegraphPath {
    int initial_sign = 1;
    std::vector<double> jump_times;
    double T = 1.0;
    double v = 1.0;

    std::size_t jump_count() const noexcept { return jump_times.size(); }
};

/// X(t) = drift_rate * t + sign * sym.position(t).
struct AsymmetricPath {
    double drift_rate = 0.0;
    int sign = 1;
    TelegraphPath sym;
};

/// positions[i] is the path value at t_i = i * dt, i = 0..n_steps.
struct GridPath {
    std::size_t n_steps = 0;
    double dt = 0.0;
    std::vector<double> positions;

    double horizon() const noexcept { return dt * static_cast<double>(n_steps); }
};

enum class InitialSign { Random, PinnedPositive };

/// The initial sign is always drawn first, so pinning it leaves the jump
/// times of a given stream unchanged.
TelegraphPath sample_sym_path(double lambda, double v, double T, SimVariant variant, RngStream& rng,
                              InitialSign sign_mode = InitialSign::Random);

/// Position of the path at time t in [0, T]; throws std::out_of_range otherwise.
double position_at(const TelegraphPath& path, double t);
double position_at(const AsymmetricPath& path, double t);

/// Galilean decomposition of the same-rate asymmetric process. sym.v must
/// equal (v0 + v0_star) / 2; sign = +1 means V(0) = v0, -1 means V(0) = -v0_star.
AsymmetricPath galilean_asym(TelegraphPath sym, int sign, double v0, double v0_star);

/// Euler scheme for B(t) = drift * t + sqrt(sigma2) W(t); exact in law on the grid.
GridPath sample_bm_grid(double sigma2, double drift, double T, std::size_t n_steps, RngStream& rng);

/// positions[i] == position_at(path, i * T / n_steps).
GridPath sample_telegraph_grid(const TelegraphPath& path, std::size_t n_steps);

}  // namespace telegraph
