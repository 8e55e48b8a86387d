#include "telegraph/mc_engine.hpp"

#include <cmath>

#include "telegraph/bounds.hpp"
#include "telegraph/functionals.hpp"
#include "telegraph/paths.hpp"

namespace telegraph {

std::vector<double> default_lambda_grid() {
    std::vector<double> grid;
    grid.reserve(40);
    for (int k = 1; k <= 40; ++k) grid.push_back(2.5 * k);
    return grid;
}

void ExperimentConfig::validate() const {
    if (strikes.empty() || sigmas.empty() || lambda_grid.empty()) {
        throw std::invalid_argument("experiment needs at least one strike, sigma and lambda");
    }
    if (n_samples < 2) throw std::invalid_argument("experiment needs n_samples >= 2");
    if (n_grid_steps == 0) throw std::invalid_argument("experiment needs grid_steps >= 1");
    for (const double lambda : lambda_grid) {
        if (!(lambda > 0.0)) throw std::invalid_argument("lambda grid values must be positive");
    }
    for (const double sigma : sigmas) {
        if (!(sigma >= 0.0)) throw std::invalid_argument("sigma values must be non-negative");
    }
    if (!(v0 != 0.0) || !(T > 0.0) || !(L > 0.0) || !(C > 0.0)) {
        throw std::invalid_argument("experiment needs v0 != 0 and T, L, C > 0");
    }
}

bool operator==(const ExperimentRow& x, const ExperimentRow& y) noexcept {
    return x.K == y.K && x.sigma == y.sigma && x.lambda == y.lambda && x.n == y.n &&
           x.brownian.mean == y.brownian.mean && x.brownian.std_error == y.brownian.std_error &&
           x.telegraph.mean == y.telegraph.mean && x.telegraph.std_error == y.telegraph.std_error &&
           x.error == y.error && x.bound_per_C == y.bound_per_C && x.variant == y.variant &&
           x.seed == y.seed;
}

std::vector<ExperimentCell> experiment_cells(const ExperimentConfig& config) {
    std::vector<ExperimentCell> cells;
    cells.reserve(config.strikes.size() * config.sigmas.size() * config.lambda_grid.size());
    std::uint64_t index = 0;
    for (const double K : config.strikes) {
        for (const double sigma : config.sigmas) {
            for (const double lambda : config.lambda_grid) cells.push_back({K, sigma, lambda, index++});
        }
    }
    return cells;
}

ObservableSpec experiment_observable(double sigma, double lambda) {
    ObservableSpec spec;
    spec.a = sigma * std::sqrt(lambda);
    spec.b = -0.5 * sigma * sigma;
    spec.f = FunctionKind::identity();
    spec.g = FunctionKind::call_floor(1.0, 0.0);
    return spec;
}

double brownian_diffusivity(const ExperimentConfig& config, double lambda) {
    if (config.brownian_scaling == BrownianScaling::Standard) return 1.0;
    return config.v0 * config.v0 / (lambda * config.L * config.L);
}

MCEstimate estimate_telegraph_cell(const ExperimentConfig& config, const ExperimentCell& cell) {
    const ObservableSpec spec = experiment_observable(cell.sigma, cell.lambda);
    const double speed = std::abs(config.v0);
    const InitialSign sign_mode = config.pin_initial_sign ? InitialSign::PinnedPositive : InitialSign::Random;
    const auto task = [&](RngStream& rng) {
        const TelegraphPath path = sample_sym_path(cell.lambda, speed, config.T, config.variant, rng, sign_mode);
        return exact_functional(path, spec, config.L, cell.K);
    };
    return mc_estimate(task, config.n_samples, config.seed, telegraph_domain(cell.index), config.workers);
}

MCEstimate estimate_brownian_cell(const ExperimentConfig& config, const ExperimentCell& cell) {
    const ObservableSpec spec = experiment_observable(cell.sigma, cell.lambda);
    const double sigma2 = brownian_diffusivity(config, cell.lambda);
    const auto task = [&](RngStream& rng) {
        return brownian_grid_functional(spec, sigma2, 0.0, config.T, config.n_grid_steps, cell.K, rng);
    };
    return mc_estimate(task, config.n_samples, config.seed, brownian_domain(cell.index), config.workers);
}

std::vector<ExperimentRow> run_experiment(const ExperimentConfig& config, const RowSink& on_row) {
    config.validate();
    std::vector<ExperimentRow> rows;
    for (const ExperimentCell& cell : experiment_cells(config)) {
        ExperimentRow row;
        row.K = cell.K;
        row.sigma = cell.sigma;
        row.lambda = cell.lambda;
        row.n = config.n_samples;
        row.brownian = estimate_brownian_cell(config, cell);
        row.telegraph = estimate_telegraph_cell(config, cell);
        row.error = row.brownian.mean - row.telegraph.mean;
        const auto params = ModelParams::symmetric(cell.lambda, config.v0, config.T, config.L);
        row.bound_per_C = total_error_bound_sym(experiment_observable(cell.sigma, cell.lambda), params, 1.0).total;
        row.variant = config.variant;
        row.seed = config.seed;
        rows.push_back(row);
        if (on_row) on_row(rows.back());
    }
    return rows;
}

RegressionFit ols_loglog(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 2) throw std::invalid_argument("ols_loglog needs at least two points");
    RegressionFit fit;
    fit.n_points = points.size();
    std::vector<double> xs;
    std::vector<double> ys;
    xs.reserve(points.size());
    ys.reserve(points.size());
    for (const auto& [lambda, error] : points) {
        if (!(lambda > 0.0)) throw std::invalid_argument("ols_loglog: lambda must be positive");
        if (error == 0.0 || !std::isfinite(error)) {
            throw std::invalid_argument("ols_loglog: error must be finite and non-zero");
        }
        if (error < 0.0) ++fit.n_nonpositive;
        xs.push_back(std::log(lambda));
        ys.push_back(std::log(std::abs(error)));
    }
    const double n = static_cast<double>(xs.size());
    double x_bar = 0.0;
    double y_bar = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        x_bar += xs[i];
        y_bar += ys[i];
    }
    x_bar /= n;
    y_bar /= n;
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - x_bar;
        const double dy = ys[i] - y_bar;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0) throw std::invalid_argument("ols_loglog: all lambda values are equal");
    fit.slope = sxy / sxx;
    fit.intercept = y_bar - fit.slope * x_bar;
    fit.r_squared = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
    return fit;
}

std::vector<MgfCheck> validate_mgf(const MgfCheckConfig& config) {
    if (config.n < 10'000) throw std::invalid_argument("validate_mgf needs n >= 10^4");
    std::vector<MgfCheck> out;
    out.reserve(config.s_list.size());
    const double speed = std::abs(config.v0);
    for (std::size_t k = 0; k < config.s_list.size(); ++k) {
        const double s = config.s_list[k];
        if (!(s >= 0.0)) throw std::invalid_argument("validate_mgf: s must be non-negative");
        MgfCheck check;
        check.s = s;
        check.analytic = telegraph_mgf(config.a, config.lambda, config.v0, config.L, s);
        MCEstimate est{1.0, 0.0, config.n};
        if (s > 0.0) {
            const auto task = [&](RngStream& rng) {
                const TelegraphPath path = sample_sym_path(config.lambda, speed, s, config.variant, rng);
                return std::exp(2.0 * config.a * position_at(path, s) / config.L);
            };
            est = mc_estimate(task, config.n, config.seed, k, config.workers);
        }
        check.empirical = est.mean;
        check.std_error = est.std_error;
        check.z_score = est.std_error > 0.0 ? (est.mean - check.analytic) / est.std_error : 0.0;
        out.push_back(check);
    }
    return out;
}

}  // namespace telegraph
