#include "telegraph/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "telegraph/bounds.hpp"
#include "telegraph/csv.hpp"
#include "telegraph/functionals.hpp"
#include "telegraph/mc_engine.hpp"
#include "telegraph/paths.hpp"

namespace telegraph {

namespace {

std::string join(const std::vector<double>& values) {
    std::string s;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) s += ',';
        s += format_shortest(values[i]);
    }
    return s;
}

struct ModelFlags {
    double lambda = 100.0;
    double T = 1.0;
    double L = 1.0;
    double v0 = 1.0;
    std::optional<double> v0_star;

    void add_to(CLI::App& cmd) {
        cmd.add_option("--lambda", lambda, "flip-clock rate")->capture_default_str();
        cmd.add_option("--T", T, "time horizon")->capture_default_str();
        cmd.add_option("--L", L, "spatial scale")->capture_default_str();
        cmd.add_option("--v0", v0, "speed v0")->capture_default_str();
        cmd.add_option("--v0-star", v0_star, "second speed; selects the asymmetric same-rate model");
    }

    ModelParams params() const {
        return v0_star ? ModelParams::asymmetric(lambda, v0, *v0_star, T, L)
                       : ModelParams::symmetric(lambda, v0, T, L);
    }

    void echo(std::ostream& out) const {
        out << "# lambda=" << format_shortest(lambda) << " T=" << format_shortest(T)
            << " L=" << format_shortest(L) << " v0=" << format_shortest(v0);
        if (v0_star) {
            out << " v0_star=" << format_shortest(*v0_star) << " mode=asymmetric\n";
        } else {
            out << " mode=symmetric\n";
        }
    }
};

void print_kv(std::ostream& out, const char* key, double value) {
    out << key << '=' << format_double(value) << '\n';
}

// ---------------------------------------------------------------------------

struct SimulateCmd {
    ModelFlags model;
    std::string variant = "alternating";
    bool pin_initial_sign = false;
    std::uint64_t seed = 1;
    std::size_t grid_steps = 10;
    std::uint64_t paths = 1;
    double a = 1.0;
    double b = 0.0;

    int run(std::ostream& out) const {
        const ModelParams params = model.params();
        const Scalings sc = derive_scalings(params);
        const SimVariant sim = parse_variant(variant);
        if (grid_steps == 0) throw std::invalid_argument("--grid-steps must be >= 1");

        out << "# command=simulate\n";
        model.echo(out);
        out << "# variant=" << to_string(sim) << " pin_initial_sign=" << (pin_initial_sign ? 1 : 0)
            << " seed=" << seed << " grid_steps=" << grid_steps << " paths=" << paths
            << " a=" << format_shortest(a) << " b=" << format_shortest(b) << '\n';
        out << "path,t,position\n";

        const double speed = std::abs(sc.v_eff);
        const auto sign_mode = pin_initial_sign ? InitialSign::PinnedPositive : InitialSign::Random;
        std::ostringstream summary;
        for (std::uint64_t p = 0; p < paths; ++p) {
            RngStream rng(seed, p);
            TelegraphPath path = sample_sym_path(params.lambda(), speed, params.T(), sim, rng, sign_mode);
            if (params.is_symmetric() && params.v0() < 0.0) path.initial_sign = -path.initial_sign;
            const double exp_avg = exact_exp_avg_integral(path, a, b, params.L());
            const std::size_t jumps = path.jump_count();
            std::vector<double> positions;
            if (params.is_symmetric()) {
                positions = sample_telegraph_grid(path, grid_steps).positions;
                summary << "# path " << p << ": initial_sign=" << path.initial_sign << " jumps=" << jumps;
            } else {
                const int sign = path.initial_sign;
                path.initial_sign = 1;
                path.v = sc.v_eff;
                const AsymmetricPath asym = galilean_asym(path, sign, params.v0(), params.v0_star());
                for (std::size_t i = 0; i <= grid_steps; ++i) {
                    const double t = std::min(static_cast<double>(i) * params.T() / grid_steps, params.T());
                    positions.push_back(position_at(asym, t));
                }
                summary << "# path " << p << ": galilean_sign=" << sign << " jumps=" << jumps;
            }
            summary << " sym_exp_avg=" << format_double(exp_avg) << '\n';
            const double dt = params.T() / static_cast<double>(grid_steps);
            for (std::size_t i = 0; i < positions.size(); ++i) {
                out << p << ',' << format_double(std::min(static_cast<double>(i) * dt, params.T())) << ','
                    << format_double(positions[i]) << '\n';
            }
        }
        out << summary.str();
        return kExitOk;
    }
};

// ---------------------------------------------------------------------------

struct BoundCmd {
    ModelFlags model;
    double sigma = 0.3;
    std::optional<double> a;
    std::optional<double> b;
    double C = 1.0;

    int run(std::ostream& out) const {
        const ModelParams params = model.params();
        const Scalings sc = derive_scalings(params);
        ObservableSpec spec = experiment_observable(sigma, params.lambda());
        if (a) spec.a = *a;
        if (b) spec.b = *b;

        out << "# command=bound\n";
        model.echo(out);
        out << "# sigma=" << format_shortest(sigma) << " a=" << format_shortest(spec.a)
            << " b=" << format_shortest(spec.b) << " f=identity g=call-floor(1,0) C=" << format_shortest(C)
            << '\n';
        out << "# w2_bound and total are proportional to the unknown absolute constant C\n";

        const BoundReport r = params.is_symmetric() ? total_error_bound_sym(spec, params, C)
                                                    : total_error_bound_asym(spec, params, C);
        print_kv(out, "T_star", sc.T_star);
        print_kv(out, "L_star", sc.L_star);
        print_kv(out, "sigma2", sc.sigma2);
        print_kv(out, "drift", sc.drift);
        print_kv(out, "kappa", lipschitz_kappa(spec));
        print_kv(out, "C", r.C);
        print_kv(out, "w2_bound", r.w2_bound);
        print_kv(out, "w2_bound_per_C", r.w2_bound / r.C);
        print_kv(out, "m_brownian", r.m_brownian);
        print_kv(out, "m_telegraph_bound", r.m_telegraph_bound);
        if (params.is_symmetric()) {
            print_kv(out, "m_telegraph_bound_simple",
                     telegraph_weight_moment_bound_simple(spec.a, sc.T_star, sc.L_star));
        }
        print_kv(out, "prefactor", r.prefactor);
        print_kv(out, "total", r.total);
        return kExitOk;
    }
};

// ---------------------------------------------------------------------------

struct ThresholdsCmd {
    ModelFlags model;

    int run(std::ostream& out) const {
        const ModelParams params = model.params();
        const Scalings sc = derive_scalings(params);
        const IntegrabilityThresholds th = integrability_thresholds(sc.T_star, sc.L_star);
        out << "# command=thresholds\n";
        model.echo(out);
        out << "sigma2_T=" << format_shortest(sc.T_star / (sc.L_star * sc.L_star)) << '\n';
        out << "a_low=" << format_shortest(th.a_low) << '\n';
        out << "a_high=" << format_shortest(th.a_high) << '\n';
        return kExitOk;
    }
};

// ---------------------------------------------------------------------------

struct ExperimentCmd {
    std::vector<double> strikes{0.7, 1.0, 1.3};
    std::vector<double> sigmas{0.3, 0.5, 0.7};
    std::string lambda_grid = "2.5:2.5:100";
    std::uint64_t samples = 10'000'000;
    std::size_t grid_steps = 10'000;
    std::string variant = "alternating";
    bool pin_initial_sign = false;
    std::uint64_t seed = 1;
    double C = 1.0;
    std::string brownian_scaling = "kac";
    int threads = 0;
    std::string out_path;

    int run(std::ostream& out) const {
        ExperimentConfig cfg;
        cfg.strikes = strikes;
        cfg.sigmas = sigmas;
        cfg.lambda_grid = parse_lambda_grid(lambda_grid);
        cfg.n_samples = samples;
        cfg.n_grid_steps = grid_steps;
        cfg.variant = parse_variant(variant);
        cfg.pin_initial_sign = pin_initial_sign;
        cfg.seed = seed;
        cfg.C = C;
        if (brownian_scaling == "kac") {
            cfg.brownian_scaling = BrownianScaling::KacDiffusivity;
        } else if (brownian_scaling == "standard") {
            cfg.brownian_scaling = BrownianScaling::Standard;
        } else {
            throw std::invalid_argument("--brownian-scaling must be kac|standard");
        }
        cfg.workers = threads;
        cfg.validate();

        out << "# command=experiment\n";
        out << "# strikes=" << join(cfg.strikes) << " sigmas=" << join(cfg.sigmas) << '\n';
        out << "# lambda_grid=" << join(cfg.lambda_grid) << '\n';
        out << "# samples=" << cfg.n_samples << " grid_steps=" << cfg.n_grid_steps
            << " variant=" << to_string(cfg.variant) << " pin_initial_sign=" << (cfg.pin_initial_sign ? 1 : 0)
            << " seed=" << cfg.seed << " C=" << format_shortest(cfg.C) << " brownian_scaling=" << brownian_scaling
            << " v0=1 T=1 L=1 workers=" << resolve_workers(cfg.workers) << '\n';
        out << "# bound_per_C column is the weak-error bound at C=1\n";

        std::ofstream file;
        std::ostream* sink = &out;
        if (!out_path.empty()) {
            file.open(out_path, std::ios::binary);
            if (!file) throw std::runtime_error("cannot open '" + out_path + "' for writing");
            sink = &file;
            out << "# out=" << out_path << '\n';
        }
        write_csv_header(*sink);
        sink->flush();
        const auto rows = run_experiment(cfg, [&](const ExperimentRow& row) {
            write_csv_row(*sink, row);
            sink->flush();
            if (!*sink) throw std::runtime_error("write to '" + out_path + "' failed");
        });

        std::map<std::pair<double, double>, std::vector<std::pair<double, double>>> panels;
        for (const auto& row : rows) panels[{row.K, row.sigma}].emplace_back(row.lambda, row.error);
        for (const auto& [key, points] : panels) {
            out << "# fit K=" << format_shortest(key.first) << " sigma=" << format_shortest(key.second);
            if (points.size() < 2) {
                out << ": needs >= 2 lambda values\n";
                continue;
            }
            try {
                const RegressionFit fit = ols_loglog(points);
                out << " intercept=" << format_double(fit.intercept) << " slope=" << format_double(fit.slope)
                    << " r2=" << format_double(fit.r_squared) << " n=" << fit.n_points
                    << " negative_errors=" << fit.n_nonpositive << '\n';
            } catch (const std::invalid_argument& e) {
                out << ": " << e.what() << '\n';
            }
        }
        return kExitOk;
    }
};

// ---------------------------------------------------------------------------

struct MgfCmd {
    double lambda = 1.0;
    double a = 0.5;
    std::vector<double> s_list{0.25, 0.5, 1.0};
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = 1;
    std::string variant = "alternating";
    double v0 = 1.0;
    double L = 1.0;
    int threads = 0;

    int run(std::ostream& out) const {
        MgfCheckConfig cfg;
        cfg.lambda = lambda;
        cfg.a = a;
        cfg.s_list = s_list;
        cfg.n = samples;
        cfg.seed = seed;
        cfg.variant = parse_variant(variant);
        cfg.v0 = v0;
        cfg.L = L;
        cfg.workers = threads;
        out << "# command=mgf-check\n";
        out << "# lambda=" << format_shortest(lambda) << " a=" << format_shortest(a) << " s=" << join(s_list)
            << " samples=" << samples << " seed=" << seed << " variant=" << to_string(cfg.variant)
            << " v0=" << format_shortest(v0) << " L=" << format_shortest(L) << '\n';
        out << "s,empirical,std_error,analytic,z_score\n";
        for (const MgfCheck& c : validate_mgf(cfg)) {
            out << format_double(c.s) << ',' << format_double(c.empirical) << ',' << format_double(c.std_error)
                << ',' << format_double(c.analytic) << ',' << format_double(c.z_score) << '\n';
        }
        return kExitOk;
    }
};

}  // namespace

std::vector<double> parse_lambda_grid(const std::string& text) {
    std::vector<double> grid;
    const auto to_double = [&](const std::string& s) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != s.size() || s.empty()) throw std::invalid_argument("bad lambda grid value '" + s + "'");
        return v;
    };
    if (text.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::stringstream ss(text);
        for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
        if (parts.size() != 3) throw std::invalid_argument("lambda grid must be start:step:stop");
        const double start = to_double(parts[0]);
        const double step = to_double(parts[1]);
        const double stop = to_double(parts[2]);
        if (!(step > 0.0) || stop < start) throw std::invalid_argument("lambda grid needs step > 0, stop >= start");
        const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
        for (std::size_t k = 0; k < count; ++k) grid.push_back(start + step * static_cast<double>(k));
    } else {
        std::stringstream ss(text);
        for (std::string part; std::getline(ss, part, ',');) grid.push_back(to_double(part));
    }
    if (grid.empty()) throw std::invalid_argument("empty lambda grid");
    return grid;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Telegraph process simulation, Kac-limit error bounds and convergence experiments", "telegraph"};
    app.require_subcommand(1);

    SimulateCmd simulate;
    auto* sim_cmd = app.add_subcommand("simulate", "sample exact telegraph paths on a grid");
    simulate.model.lambda = 10.0;
    simulate.model.add_to(*sim_cmd);
    sim_cmd->add_option("--variant", simulate.variant, "collated|alternating")->capture_default_str();
    sim_cmd->add_flag("--pin-initial-sign", simulate.pin_initial_sign, "start every path with velocity +v");
    sim_cmd->add_option("--seed", simulate.seed)->capture_default_str();
    sim_cmd->add_option("--grid-steps", simulate.grid_steps)->capture_default_str();
    sim_cmd->add_option("--paths", simulate.paths)->capture_default_str();
    sim_cmd->add_option("--a", simulate.a, "exponent scale for the reported exponential average")
        ->capture_default_str();
    sim_cmd->add_option("--b", simulate.b, "time drift for the reported exponential average")->capture_default_str();

    BoundCmd bound;
    auto* bound_cmd = app.add_subcommand("bound", "evaluate the weak-error bound and its components");
    bound.model.add_to(*bound_cmd);
    bound_cmd->add_option("--sigma", bound.sigma, "volatility; a = sigma sqrt(lambda), b = -sigma^2/2")
        ->capture_default_str();
    bound_cmd->add_option("--a", bound.a, "override a");
    bound_cmd->add_option("--b", bound.b, "override b");
    bound_cmd->add_option("--C", bound.C, "absolute constant of the W2 bound")->capture_default_str();

    ExperimentCmd experiment;
    auto* exp_cmd = app.add_subcommand("experiment", "Monte Carlo lambda-convergence experiment (CSV)");
    exp_cmd->add_option("--strike", experiment.strikes, "strikes K")->delimiter(',')->capture_default_str();
    exp_cmd->add_option("--sigma", experiment.sigmas, "volatilities")->delimiter(',')->capture_default_str();
    exp_cmd->add_option("--lambda-grid", experiment.lambda_grid, "start:step:stop or comma list")
        ->capture_default_str();
    exp_cmd->add_option("--samples", experiment.samples, "samples per estimator")->capture_default_str();
    exp_cmd->add_option("--grid-steps", experiment.grid_steps, "Brownian grid steps")->capture_default_str();
    exp_cmd->add_option("--variant", experiment.variant, "collated|alternating")->capture_default_str();
    exp_cmd->add_flag("--pin-initial-sign", experiment.pin_initial_sign, "start every path with velocity +v");
    exp_cmd->add_option("--seed", experiment.seed)->capture_default_str();
    exp_cmd->add_option("--C", experiment.C)->capture_default_str();
    exp_cmd->add_option("--brownian-scaling", experiment.brownian_scaling, "kac|standard")->capture_default_str();
    exp_cmd->add_option("--threads", experiment.threads, "worker count (0 = default)")->capture_default_str();
    exp_cmd->add_option("--out", experiment.out_path, "CSV output file (default stdout)");

    MgfCmd mgf;
    auto* mgf_cmd = app.add_subcommand("mgf-check", "compare the empirical telegraph MGF with the closed form");
    mgf_cmd->add_option("--lambda", mgf.lambda)->capture_default_str();
    mgf_cmd->add_option("--a", mgf.a)->capture_default_str();
    mgf_cmd->add_option("--s", mgf.s_list, "evaluation times")->delimiter(',')->capture_default_str();
    mgf_cmd->add_option("--samples", mgf.samples)->capture_default_str();
    mgf_cmd->add_option("--seed", mgf.seed)->capture_default_str();
    mgf_cmd->add_option("--variant", mgf.variant, "collated|alternating")->capture_default_str();
    mgf_cmd->add_option("--v0", mgf.v0)->capture_default_str();
    mgf_cmd->add_option("--L", mgf.L)->capture_default_str();
    mgf_cmd->add_option("--threads", mgf.threads)->capture_default_str();

    ThresholdsCmd thresholds;
    auto* th_cmd = app.add_subcommand("thresholds", "integrability thresholds in a for the Brownian weight moment");
    thresholds.model.add_to(*th_cmd);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        const auto subs = app.get_subcommands();
        out << (subs.empty() ? app.help() : subs.front()->help());
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        const auto subs = app.get_subcommands();
        err << (subs.empty() ? app.help() : subs.front()->help());
        return kExitUsageError;
    }

    try {
        if (sim_cmd->parsed()) return simulate.run(out);
        if (bound_cmd->parsed()) return bound.run(out);
        if (exp_cmd->parsed()) return experiment.run(out);
        if (mgf_cmd->parsed()) return mgf.run(out);
        if (th_cmd->parsed()) return thresholds.run(out);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsageError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitRuntimeError;
    }
    return kExitUsageError;
}

}  // namespace telegraph
