#include "gwpt/experiment.hpp"

#include "gwpt/coefficients.hpp"
#include "gwpt/csv.hpp"
#include "gwpt/errors.hpp"
#include "gwpt/quadrature.hpp"
#include "gwpt/reconstruction.hpp"
#include "gwpt/summation_curve.hpp"

#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ostream>
#include <sstream>
#include <thread>

namespace gwpt {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& s, const std::string& where) {
    double v = 0.0;
    const char* begin = s.data();
    const char* end = s.data() + s.size();
    const auto res = std::from_chars(begin, end, v);
    if (res.ec != std::errc() || res.ptr != end)
        throw ConfigError(where + ": cannot parse number '" + s + "'");
    return v;
}

int parse_int(const std::string& s, const std::string& where) {
    int v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw ConfigError(where + ": cannot parse integer '" + s + "'");
    return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(trim(cur));
    return out;
}

std::vector<double> parse_double_list(const std::string& s, const std::string& where) {
    std::vector<double> out;
    for (const auto& tok : split(s, ',')) out.push_back(parse_double(tok, where));
    if (out.empty()) throw ConfigError(where + ": empty list");
    return out;
}

std::vector<int> parse_int_list(const std::string& s, const std::string& where) {
    std::vector<int> out;
    for (const auto& tok : split(s, ',')) out.push_back(parse_int(tok, where));
    if (out.empty()) throw ConfigError(where + ": empty list");
    return out;
}

Vec to_vec(const std::vector<double>& v) {
    Vec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out(i) = v[i];
    return out;
}

bool parse_bool(const std::string& s, const std::string& where) {
    if (s == "true" || s == "1") return true;
    if (s == "false" || s == "0") return false;
    throw ConfigError(where + ": expected true/false, got '" + s + "'");
}

void check_ascending(const std::vector<int>& ns, const std::string& where) {
    if (ns.empty()) throw ConfigError(where + ": N-list must be nonempty");
    for (std::size_t i = 0; i + 1 < ns.size(); ++i)
        if (ns[i] >= ns[i + 1])
            throw ConfigError(where + ": N-list must be strictly ascending");
    if (ns.front() < 1) throw ConfigError(where + ": N must be >= 1");
}

std::string join_doubles(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ',';
        s += format_double(v[i]);
    }
    return s;
}

std::string join_ints(const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(v[i]);
    }
    return s;
}

std::string join_vec(const Vec& v) {
    std::string s;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (i) s += ',';
        s += format_double(v(i));
    }
    return s;
}

}  // namespace

void set_config_key(ExperimentConfig& cfg, const std::string& key,
                    const std::string& value) {
    const std::string where = "field '" + key + "'";
    if (key == "psi0.q0") {
        cfg.q0 = to_vec(parse_double_list(value, where));
    } else if (key == "psi0.p0") {
        cfg.p0 = to_vec(parse_double_list(value, where));
    } else if (key == "psi0.gamma0_imag") {
        cfg.gamma0 = parse_double(value, where);
        if (!(cfg.gamma0 > 0.0)) throw ConfigError(where + ": must be positive");
    } else if (key == "psi0.eps") {
        cfg.eps_list = parse_double_list(value, where);
        for (double e : cfg.eps_list)
            if (!(e > 0.0)) throw ConfigError(where + ": eps must be positive");
    } else if (key == "basis.gamma_imag") {
        cfg.gamma_list = parse_double_list(value, where);
        for (double g : cfg.gamma_list)
            if (!(g > 0.0)) throw ConfigError(where + ": gamma must be positive");
    } else if (key == "basis.im_matrix") {
        const auto rows = split(value, ';');
        Mat m(rows.size(), rows.size());
        for (std::size_t r = 0; r < rows.size(); ++r) {
            const auto cols = parse_double_list(rows[r], where);
            if (cols.size() != rows.size())
                throw ConfigError(where + ": matrix must be square");
            for (std::size_t c = 0; c < cols.size(); ++c) m(r, c) = cols[c];
        }
        cfg.basis_im = m;
    } else if (key == "box.L_q") {
        cfg.L_q = parse_double(value, where);
        if (!(cfg.L_q > 0.0)) throw ConfigError(where + ": must be positive");
    } else if (key == "box.M") {
        cfg.M_list = parse_int_list(value, where);
        for (int m : cfg.M_list)
            if (m < 1) throw ConfigError(where + ": M must be >= 1");
    } else if (key == "box.samples_per_dim") {
        cfg.samples_per_dim = parse_int(value, where);
        if (cfg.samples_per_dim < 64) throw ConfigError(where + ": need >= 64");
    } else if (key == "rules.tcm.N") {
        if (!cfg.tcm) cfg.tcm.emplace();
        cfg.tcm->N_list = parse_int_list(value, where);
        check_ascending(cfg.tcm->N_list, where);
    } else if (key == "rules.tcm.L_p") {
        if (!cfg.tcm) cfg.tcm.emplace();
        cfg.tcm->L_p_list = parse_double_list(value, where);
        for (double lp : cfg.tcm->L_p_list)
            if (!(lp > 0.0)) throw ConfigError(where + ": L_p must be positive");
    } else if (key == "rules.gh.N") {
        if (!cfg.gh) cfg.gh.emplace();
        cfg.gh->N_list = parse_int_list(value, where);
        check_ascending(cfg.gh->N_list, where);
    } else if (key == "rules.gh.width_adapted") {
        if (!cfg.gh) cfg.gh.emplace();
        cfg.gh->width_adapted = parse_bool(value, where);
    } else if (key == "rules.rs.dp") {
        if (!cfg.rs) cfg.rs.emplace();
        cfg.rs->dp_list = parse_double_list(value, where);
        for (double dp : cfg.rs->dp_list)
            if (!(dp > 0.0)) throw ConfigError(where + ": dp must be positive");
    } else if (key == "rules.rs.tail_tol") {
        if (!cfg.rs) cfg.rs.emplace();
        cfg.rs->tail_tol = parse_double(value, where);
        if (!(cfg.rs->tail_tol > 0.0 && cfg.rs->tail_tol <= 1e-6))
            throw ConfigError(where + ": tail_tol in (0, 1e-6]");
    } else if (key == "output.path") {
        cfg.output_path = value;
    } else {
        throw ConfigError("unknown field '" + key + "'");
    }
}

ExperimentConfig parse_config(const std::string& text) {
    ExperimentConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        try {
            set_config_key(cfg, key, value);
        } catch (const ConfigError& e) {
            throw ConfigError("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    if (cfg.q0.size() != cfg.p0.size())
        throw ConfigError("psi0.q0 and psi0.p0 must have the same dimension");
    return cfg;
}

std::string serialize_config(const ExperimentConfig& cfg) {
    std::string out;
    out += "psi0.q0 = " + join_vec(cfg.q0) + "\n";
    out += "psi0.p0 = " + join_vec(cfg.p0) + "\n";
    out += "psi0.gamma0_imag = " + format_double(cfg.gamma0) + "\n";
    out += "psi0.eps = " + join_doubles(cfg.eps_list) + "\n";
    if (cfg.basis_im) {
        std::string m;
        for (Eigen::Index r = 0; r < cfg.basis_im->rows(); ++r) {
            if (r) m += ';';
            for (Eigen::Index c = 0; c < cfg.basis_im->cols(); ++c) {
                if (c) m += ',';
                m += format_double((*cfg.basis_im)(r, c));
            }
        }
        out += "basis.im_matrix = " + m + "\n";
    } else {
        out += "basis.gamma_imag = " + join_doubles(cfg.gamma_list) + "\n";
    }
    out += "box.L_q = " + format_double(cfg.L_q) + "\n";
    out += "box.M = " + join_ints(cfg.M_list) + "\n";
    out += "box.samples_per_dim = " + std::to_string(cfg.samples_per_dim) + "\n";
    if (cfg.tcm) {
        out += "rules.tcm.N = " + join_ints(cfg.tcm->N_list) + "\n";
        out += "rules.tcm.L_p = " + join_doubles(cfg.tcm->L_p_list) + "\n";
    }
    if (cfg.gh) {
        out += "rules.gh.N = " + join_ints(cfg.gh->N_list) + "\n";
        out += std::string("rules.gh.width_adapted = ") +
               (cfg.gh->width_adapted ? "true" : "false") + "\n";
    }
    if (cfg.rs) {
        out += "rules.rs.dp = " + join_doubles(cfg.rs->dp_list) + "\n";
        out += "rules.rs.tail_tol = " + format_double(cfg.rs->tail_tol) + "\n";
    }
    if (!cfg.output_path.empty()) out += "output.path = " + cfg.output_path + "\n";
    return out;
}

ExperimentConfig sweep_preset(const std::string& name) {
    ExperimentConfig cfg;
    if (name == "example1") {
        cfg.q0 = Vec::Zero(1);
        cfg.p0 = Vec::Zero(1);
        cfg.gamma0 = 1.0;
        cfg.eps_list = {1.0};
        cfg.gamma_list = {2.0, 8.0};
        cfg.L_q = 8.0;
        cfg.M_list = {16, 64};
        cfg.tcm = TcmSpec{{2, 4, 8, 12, 16, 24, 32, 48, 64},
                          {4.0 * M_PI, 6.0 * M_PI, 8.0 * M_PI}};
        cfg.gh = GhSpec{{2, 4, 8, 12, 16, 24, 32, 48, 64}, true};
        cfg.rs = RsSpec{{M_PI, M_PI / 2.0, M_PI / 4.0}, 1e-16};
        return cfg;
    }
    if (name == "example2") {
        cfg.q0 = Vec::Constant(1, 1.0);
        cfg.p0 = Vec::Constant(1, 2.0);
        cfg.gamma0 = 1.0;
        cfg.eps_list = {0.1, 0.05};
        cfg.gamma_list = {16.0, 32.0};
        cfg.L_q = 8.0;
        cfg.M_list = {128};
        cfg.tcm = TcmSpec{{8, 12, 16, 20, 24, 28, 32, 40, 48, 56, 64}, {4.0 * M_PI}};
        cfg.gh = GhSpec{{8, 12, 16, 20, 24, 28, 32, 40, 48, 56, 64}, true};
        return cfg;
    }
    throw ConfigError("unknown preset '" + name + "'");
}

ExperimentConfig summation_preset(const std::string& name) {
    ExperimentConfig cfg = sweep_preset(name);
    cfg.tcm.reset();
    cfg.gh.reset();
    cfg.rs.reset();
    if (name == "example1") {
        cfg.gamma_list = {2.0};
        cfg.M_list = {32};
    } else {
        cfg.eps_list = {0.1};
        cfg.gamma_list = {16.0};
        cfg.M_list = {128};
    }
    return cfg;
}

namespace {

WidthMatrix basis_width_for(const ExperimentConfig& cfg, double gamma) {
    if (cfg.basis_im) {
        CMat m = CMat::Zero(cfg.basis_im->rows(), cfg.basis_im->cols());
        m.imag() = *cfg.basis_im;
        return WidthMatrix::validate(m);
    }
    return diagonal_width(Vec::Constant(cfg.dim(), gamma));
}

}  // namespace

std::vector<SummationRow> run_summation(const ExperimentConfig& cfg) {
    if (cfg.dim() != 1)
        throw ConfigError("summation command supports d = 1 only");
    if (cfg.eps_list.size() != 1 || cfg.gamma_list.size() != 1 || cfg.M_list.size() != 1)
        throw ConfigError("summation command needs single-valued eps/gamma/M");

    const double eps = cfg.eps_list[0];
    const double gamma = cfg.basis_im ? (*cfg.basis_im)(0, 0) : cfg.gamma_list[0];
    const int M = cfg.M_list[0];
    const WidthMatrix C = basis_width_for(cfg, gamma);
    const PositionGrid grid = PositionGrid::finite(cfg.q0, cfg.L_q, M, C);
    const SummationCurve curve(grid, C, eps);

    const double dq = grid.dq();
    // Phase reference for the lattice expansion: the finite grid extends the
    // lattice anchored at its first point.
    const double first_point = cfg.q0(0) - cfg.L_q + 0.5 * dq;
    const double b1 = spectral_bound(1, dq, gamma, eps);
    const double b2 = spectral_bound(2, dq, gamma, eps);
    const double b3 = spectral_bound(3, dq, gamma, eps);

    std::vector<SummationRow> rows;
    rows.reserve(cfg.samples_per_dim);
    const int n = cfg.samples_per_dim;
    for (int i = 0; i < n; ++i) {
        const double x = cfg.q0(0) - cfg.L_q + 2.0 * cfg.L_q * i / (n - 1);
        Vec xv(1);
        xv(0) = x;
        SummationRow row;
        row.x = x;
        row.S_direct = curve.direct(xv);
        row.S_expansion = summation_expansion(dq, gamma, eps, x - first_point, 20);
        row.S_const = 1.0 / dq;
        row.bound_s1 = b1;
        row.bound_s2 = b2;
        row.bound_s3 = b3;
        rows.push_back(row);
    }
    return rows;
}

void write_summation_csv(std::ostream& os, const std::vector<SummationRow>& rows) {
    os << "x,S_direct,S_expansion,S_const,bound_s1,bound_s2,bound_s3\n";
    for (const auto& r : rows) {
        os << format_double(r.x) << ',' << format_double(r.S_direct) << ','
           << format_double(r.S_expansion) << ',' << format_double(r.S_const) << ','
           << format_double(r.bound_s1) << ',' << format_double(r.bound_s2) << ','
           << format_double(r.bound_s3) << '\n';
    }
}

namespace {

struct SweepJob {
    double eps;
    double gamma;
    int M;
    Rule rule;
    int N = 0;          // TcM/GH
    double L_p = 0.0;   // TcM
    double dp = 0.0;    // RS
    double tail_tol = 0.0;
    bool gh_adapted = true;
};

ErrorSweepRecord run_one(const ExperimentConfig& cfg, const SweepJob& job) {
    const auto t0 = std::chrono::steady_clock::now();
    const int d = cfg.dim();
    const WidthMatrix C = basis_width_for(cfg, job.gamma);
    const WidthMatrix C0 = diagonal_width(Vec::Constant(d, cfg.gamma0));
    const WavePacket psi0(PhaseSpacePoint(cfg.q0, cfg.p0), C0, job.eps);

    MomentumGrid mgrid;
    switch (job.rule) {
        case Rule::TcM:
            mgrid = tcm_grid(job.N, job.L_p, cfg.p0, job.eps, d);
            break;
        case Rule::RS:
            mgrid = rs_grid(job.dp, cfg.p0, job.eps, d, job.tail_tol);
            break;
        case Rule::GH: {
            const double scale =
                job.gh_adapted
                    ? std::sqrt(cfg.gamma0 + C.min_imag_eigenvalue())
                    : 1.0;
            mgrid = gh_grid_scaled(job.N, job.eps, cfg.p0, scale);
            break;
        }
    }

    const PositionGrid qgrid = PositionGrid::finite(cfg.q0, cfg.L_q, job.M, C);
    const SummationCurve curve(qgrid, C, job.eps);
    const CoefficientTable table = coefficients(mgrid, qgrid, C, psi0);
    const Reconstruction rec(table, curve);
    const double err = sup_error(rec, psi0, cfg.L_q, cfg.samples_per_dim);

    ErrorSweepRecord record;
    record.rule = rule_name(job.rule);
    record.N = (job.rule == Rule::RS) ? mgrid.N : job.N;
    record.M = job.M;
    record.gamma = C.min_imag_eigenvalue();
    record.eps = job.eps;
    if (job.rule == Rule::TcM) {
        record.L_p = job.L_p;
        const PredictedConstants pc =
            predicted_constants(d, job.eps, job.L_p, cfg.L_q, C.min_imag_eigenvalue(), 2);
        record.predicted_bound = pc.C_truncation + pc.C_midpoint / (double(job.N) * job.N);
    }
    record.sup_error = err;
    if (!std::isfinite(err))
        throw NumericFailure("sweep: non-finite sup error for rule " + record.rule +
                             ", N = " + std::to_string(record.N));
    record.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return record;
}

}  // namespace

std::vector<ErrorSweepRecord> run_sweep(const ExperimentConfig& cfg, int jobs) {
    if (!cfg.tcm && !cfg.gh && !cfg.rs)
        throw ConfigError("sweep: no rules configured");
    if (cfg.tcm && cfg.tcm->L_p_list.empty())
        throw ConfigError("sweep: rules.tcm.L_p missing");
    if (cfg.tcm && cfg.tcm->N_list.empty())
        throw ConfigError("sweep: rules.tcm.N missing");
    if (cfg.gh && cfg.gh->N_list.empty())
        throw ConfigError("sweep: rules.gh.N missing");
    if (cfg.rs && cfg.rs->dp_list.empty())
        throw ConfigError("sweep: rules.rs.dp missing");

    std::vector<SweepJob> jobs_list;
    for (double eps : cfg.eps_list)
        for (double gamma : cfg.gamma_list)
            for (int M : cfg.M_list) {
                if (cfg.tcm)
                    for (double lp : cfg.tcm->L_p_list)
                        for (int N : cfg.tcm->N_list)
                            jobs_list.push_back({eps, gamma, M, Rule::TcM, N, lp, 0, 0, true});
                if (cfg.gh)
                    for (int N : cfg.gh->N_list)
                        jobs_list.push_back(
                            {eps, gamma, M, Rule::GH, N, 0, 0, 0, cfg.gh->width_adapted});
                if (cfg.rs)
                    for (double dp : cfg.rs->dp_list)
                        jobs_list.push_back(
                            {eps, gamma, M, Rule::RS, 0, 0, dp, cfg.rs->tail_tol, true});
            }

    std::vector<ErrorSweepRecord> records(jobs_list.size());
    const int workers = std::max(1, jobs);
    if (workers == 1) {
        for (std::size_t i = 0; i < jobs_list.size(); ++i)
            records[i] = run_one(cfg, jobs_list[i]);
        return records;
    }

    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (;;) {
                    const std::size_t i = next.fetch_add(1);
                    if (i >= jobs_list.size()) break;
                    records[i] = run_one(cfg, jobs_list[i]);
                }
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    return records;
}

}  // namespace gwpt
