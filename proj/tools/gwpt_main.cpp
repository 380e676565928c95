// gwpt command line front end: summation-curve scans, reconstruction sweeps,
// and the two built-in verification checks.

#include "gwpt/errors.hpp"
#include "gwpt/experiment.hpp"
#include "gwpt/overlap.hpp"
#include "gwpt/reconstruction.hpp"
#include "gwpt/summation_curve.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

struct CommonOpts {
    std::string config_path;
    std::string preset;
    std::string out_path;
    std::vector<std::string> sets;
    int jobs = 1;
    int samples = 0;  // 0: keep config value
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--config", opts.config_path, "experiment config file");
    cmd->add_option("--preset", opts.preset, "built-in preset (example1|example2)")
        ->check(CLI::IsMember({"example1", "example2"}));
    cmd->add_option("--out", opts.out_path, "output CSV path (default: stdout)");
    cmd->add_option("--set", opts.sets, "override a config field, namespace.key=value")
        ->take_all();
    cmd->add_option("--jobs", opts.jobs, "concurrent sweep workers")->check(CLI::PositiveNumber);
    cmd->add_option("--samples", opts.samples, "samples per dimension for sup norms");
}

gwpt::ExperimentConfig load_config(const CommonOpts& opts, bool for_summation) {
    gwpt::ExperimentConfig cfg;
    if (!opts.config_path.empty()) {
        std::ifstream in(opts.config_path);
        if (!in) throw gwpt::ConfigError("cannot open config file '" + opts.config_path + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        cfg = gwpt::parse_config(ss.str());
    } else if (!opts.preset.empty()) {
        cfg = for_summation ? gwpt::summation_preset(opts.preset)
                            : gwpt::sweep_preset(opts.preset);
    } else {
        throw gwpt::ConfigError("need --config or --preset");
    }
    for (const auto& kv : opts.sets) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw gwpt::ConfigError("--set expects namespace.key=value, got '" + kv + "'");
        gwpt::set_config_key(cfg, kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (opts.samples > 0) cfg.samples_per_dim = opts.samples;
    if (!opts.out_path.empty()) cfg.output_path = opts.out_path;
    return cfg;
}

void emit(const gwpt::ExperimentConfig& cfg, const std::string& body) {
    if (cfg.output_path.empty()) {
        std::cout << body;
        return;
    }
    std::ofstream out(cfg.output_path, std::ios::binary);
    if (!out) throw gwpt::ConfigError("cannot open output file '" + cfg.output_path + "'");
    out << body;
}

int cmd_summation(const CommonOpts& opts) {
    const auto cfg = load_config(opts, true);
    const auto rows = gwpt::run_summation(cfg);
    std::ostringstream os;
    gwpt::write_summation_csv(os, rows);
    emit(cfg, os.str());
    return kExitOk;
}

int cmd_sweep(const CommonOpts& opts) {
    const auto cfg = load_config(opts, false);
    const auto records = gwpt::run_sweep(cfg, opts.jobs);
    std::ostringstream os;
    gwpt::write_records_csv(os, records);
    emit(cfg, os.str());
    return kExitOk;
}

// Analytic overlap vs the trapezoid oracle on random imaginary-width pairs.
int cmd_overlap_check(int pairs_1d, int pairs_2d, int samples) {
    using namespace gwpt;
    std::mt19937 rng(20240817u);
    std::uniform_real_distribution<double> width(0.3, 4.0);
    std::uniform_real_distribution<double> center(-2.0, 2.0);
    std::uniform_real_distribution<double> epsd(0.2, 1.5);

    double worst = 0.0;
    const auto run_pairs = [&](int d, int count, int points) {
        for (int i = 0; i < count; ++i) {
            Vec g1(d), g2(d), q1(d), p1(d), q2(d), p2(d);
            for (int n = 0; n < d; ++n) {
                g1(n) = width(rng);
                g2(n) = width(rng);
                q1(n) = center(rng);
                p1(n) = center(rng);
                q2(n) = center(rng);
                p2(n) = center(rng);
            }
            const double eps = epsd(rng);
            const WavePacket a(PhaseSpacePoint(q1, p1), diagonal_width(g1), eps);
            const WavePacket b(PhaseSpacePoint(q2, p2), diagonal_width(g2), eps);
            const Complex exact = overlap(a, b);
            if (std::abs(exact) <= 1e-8) continue;
            const double halfwidth = 14.0 * std::sqrt(eps / 0.3) + 4.0;
            const Complex approx = overlap_oracle(a, b, halfwidth, points);
            worst = std::max(worst, std::abs(exact - approx) / std::abs(exact));
        }
    };
    run_pairs(1, pairs_1d, samples > 0 ? samples : 20001);
    run_pairs(2, pairs_2d, samples > 0 ? samples : 401);
    std::cout << "overlap-check: " << pairs_1d << " d=1 pairs, " << pairs_2d
              << " d=2 pairs, worst relative deviation " << worst << "\n";
    if (!(worst <= 1e-6)) {
        std::cerr << "overlap-check failed: deviation above 1e-6\n";
        return kExitNumeric;
    }
    return kExitOk;
}

// Exactness of psi0(x) = (1/S(x)) sum_k I_{q_k}(x) on the configured grid.
int cmd_semi_discrete_check(const CommonOpts& opts) {
    using namespace gwpt;
    auto cfg = load_config(opts, true);
    if (cfg.eps_list.size() != 1 || cfg.gamma_list.size() != 1 || cfg.M_list.size() != 1)
        throw ConfigError("semi-discrete-check needs single-valued eps/gamma/M");
    const double eps = cfg.eps_list[0];
    const double gamma = cfg.gamma_list[0];
    const int d = cfg.dim();
    const WidthMatrix C = diagonal_width(Vec::Constant(d, gamma));
    const WidthMatrix C0 = diagonal_width(Vec::Constant(d, cfg.gamma0));
    const WavePacket psi0(PhaseSpacePoint(cfg.q0, cfg.p0), C0, eps);
    const PositionGrid grid = PositionGrid::finite(cfg.q0, cfg.L_q, cfg.M_list[0], C);
    const SummationCurve curve(grid, C, eps);

    const auto xs = sample_box(cfg.q0, grid.U(), cfg.L_q, d, cfg.samples_per_dim);
    double worst = 0.0;
    for (const auto& x : xs) {
        Complex total(0.0, 0.0);
        for (std::size_t k = 0; k < grid.size(); ++k)
            total += semi_discrete_I(grid.point(k), psi0, C, x);
        worst = std::max(worst, std::abs(psi0(x) - total / curve.direct(x)));
    }
    std::cout << "semi-discrete-check: sup sampled deviation " << worst << " over "
              << xs.size() << " points\n";
    if (!std::isfinite(worst)) return kExitNumeric;
    if (!(worst <= 1e-9)) {
        std::cerr << "semi-discrete-check failed: deviation above 1e-9\n";
        return kExitNumeric;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gaussian wave packet transform toolkit"};
    app.require_subcommand(1);

    CommonOpts sum_opts, sweep_opts, semi_opts;
    int pairs_1d = 200, pairs_2d = 50, oracle_samples = 0;

    auto* sum_cmd = app.add_subcommand("summation", "write the summation-curve scan as CSV");
    add_common(sum_cmd, sum_opts);
    auto* sweep_cmd = app.add_subcommand("sweep", "run reconstruction error sweeps, write CSV");
    add_common(sweep_cmd, sweep_opts);
    auto* ovl_cmd = app.add_subcommand("overlap-check",
                                       "compare analytic overlaps against the trapezoid oracle");
    ovl_cmd->add_option("--pairs-1d", pairs_1d, "number of random d=1 pairs");
    ovl_cmd->add_option("--pairs-2d", pairs_2d, "number of random d=2 pairs");
    ovl_cmd->add_option("--samples", oracle_samples, "oracle points per dimension");
    auto* semi_cmd = app.add_subcommand("semi-discrete-check",
                                        "verify the exact semi-discrete representation");
    add_common(semi_cmd, semi_opts);

    try {
        app.parse(argc, argv);
        if (sum_cmd->parsed()) return cmd_summation(sum_opts);
        if (sweep_cmd->parsed()) return cmd_sweep(sweep_opts);
        if (ovl_cmd->parsed()) return cmd_overlap_check(pairs_1d, pairs_2d, oracle_samples);
        if (semi_cmd->parsed()) return cmd_semi_discrete_check(semi_opts);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitConfig;
    } catch (const gwpt::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const gwpt::NumericFailure& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitOk;
}
