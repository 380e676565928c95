// experiment.hpp — experiment configs, presets, and the summation/sweep runners

#pragma once

#include "gwpt/error_model.hpp"
#include "gwpt/width_matrix.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gwpt {

struct TcmSpec {
    std::vector<int> N_list;
    std::vector<double> L_p_list;  // one sweep per box half-length
};

struct GhSpec {
    std::vector<int> N_list;
    // Apply the rule to the integrand normalized to unit Gaussian width
    // (nodes p0 + s_j sqrt(2 eps (gamma0 + gamma))). Default on; switching it
    // off uses the fixed sqrt(2 eps) spacing.
    bool width_adapted = true;
};

struct RsSpec {
    std::vector<double> dp_list;
    double tail_tol = 1e-16;
};

// Flat key-value experiment description (one namespace.key = value per line,
// lists comma-separated). eps/gamma/M may carry several values; sweeps run
// their cross product. Dimension is inferred from psi0.q0.
struct ExperimentConfig {
    Vec q0{Vec::Zero(1)};
    Vec p0{Vec::Zero(1)};
    double gamma0 = 1.0;                  // Im width of psi0 (per dimension)
    std::vector<double> eps_list{1.0};
    std::vector<double> gamma_list{1.0};  // basis Im width (scalar per combo)
    std::optional<Mat> basis_im;          // full Im C, overrides gamma_list
    double L_q = 8.0;
    std::vector<int> M_list{16};
    int samples_per_dim = 2048;
    std::optional<TcmSpec> tcm;
    std::optional<GhSpec> gh;
    std::optional<RsSpec> rs;
    std::string output_path;              // empty: stdout

    int dim() const { return static_cast<int>(q0.size()); }
};

// Parses the flat key-value text. Throws ConfigError with line/field
// diagnostics on malformed input.
ExperimentConfig parse_config(const std::string& text);

// Applies one "namespace.key = value" override (the CLI's --set flag).
void set_config_key(ExperimentConfig& cfg, const std::string& key,
                    const std::string& value);

// Canonical serialization; parse(serialize(c)) reproduces c.
std::string serialize_config(const ExperimentConfig& cfg);

// Baked-in experiment presets. Sweep presets carry the full parameter
// cross products; the summation presets pin the single combination the
// corresponding summation-curve figure uses.
ExperimentConfig sweep_preset(const std::string& name);      // example1 | example2
ExperimentConfig summation_preset(const std::string& name);  // example1 | example2

struct SummationRow {
    double x;
    double S_direct;
    double S_expansion;
    double S_const;  // 1/dq
    double bound_s1, bound_s2, bound_s3;
};

// Summation-curve scan over the sample grid (d = 1, single parameter combo).
std::vector<SummationRow> run_summation(const ExperimentConfig& cfg);
void write_summation_csv(std::ostream& os, const std::vector<SummationRow>& rows);

// Full reconstruction sweep: one record per (combo, rule, N/dp), emitted in
// deterministic config order. jobs > 1 distributes records over worker
// threads; results are identical regardless of jobs. Throws NumericFailure
// with rule/N context if a sup error is not finite.
std::vector<ErrorSweepRecord> run_sweep(const ExperimentConfig& cfg, int jobs = 1);

}  // namespace gwpt
