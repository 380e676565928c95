#include "gwpt/error_model.hpp"

#include "gwpt/csv.hpp"
#include "gwpt/errors.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace gwpt {

void write_records_csv(std::ostream& os, const std::vector<ErrorSweepRecord>& records) {
    os << "rule,N,M,gamma,eps,L_p,sup_error,predicted_bound,wall_time_s\n";
    for (const auto& r : records) {
        os << r.rule << ',' << r.N << ',' << r.M << ',' << format_double(r.gamma) << ','
           << format_double(r.eps) << ',';
        if (r.L_p) os << format_double(*r.L_p);
        os << ',' << format_double(r.sup_error) << ',';
        if (r.predicted_bound) os << format_double(*r.predicted_bound);
        os << ',' << format_double(r.wall_time_s) << '\n';
    }
}

double derivative_l1_bound(int s, double L_q, double eps, int d) {
    if (s < 1) throw std::invalid_argument("derivative bound: s >= 1");
    double s_fact = 1.0;
    for (int i = 2; i <= s; ++i) s_fact *= i;
    const double base = std::sqrt(eps) + 2.0 * L_q * std::sqrt(double(d));
    double sum = 0.0;
    double m_fact = 1.0;
    for (int m = 0; m <= s / 2; ++m) {
        if (m > 0) m_fact *= m;
        sum += std::pow(eps, m + 0.5) / (std::pow(2.0, m - 1) * m_fact) *
               std::pow(base, s - 2 * m);
    }
    return s_fact / std::pow(eps, s) * sum;
}

PredictedConstants predicted_constants(int d, double eps, double L_p, double L_q,
                                       double sigma_min, int s) {
    if (d < 1 || !(eps > 0.0) || !(L_p > 0.0) || !(L_q > 0.0) || !(sigma_min > 0.0) || s < 1)
        throw std::invalid_argument("predicted constants: parameters must be positive");
    PredictedConstants pc{};
    pc.c_truncation = std::pow(2.0 * M_PI * eps, 0.5 * d) *
                      std::exp(-d * L_p * L_p / (2.0 * eps));
    pc.c_midpoint = d * (L_p * L_p * L_p / 3.0) *
                    (4.0 * d * (L_p + L_q) * (L_p + L_q) / (eps * eps) + 1.0 / eps);
    pc.c_riemann = d * derivative_l1_bound(2 * s + 1, L_q, eps, d) /
                   std::pow(2.0 * M_PI, 2 * s + 1);
    pc.c_gh_shape = std::sqrt(M_PI) * std::pow(2.0, (3.0 * s + d) / 2.0) *
                    std::pow(double(d), 0.5 * s + 1.0) * std::pow(eps, 0.5 * (d - s)) *
                    std::pow(L_q, s);
    pc.gh_absolute = false;
    pc.C_gamma_q = 2.0 * std::sqrt(2.0) * std::pow(M_PI * eps, 0.25) *
                   std::pow(sigma_min, -0.25) /
                   std::erf(2.0 * L_q * std::sqrt(sigma_min / eps));
    const double phase_vol = std::pow(2.0 * M_PI * eps, -d) * std::pow(pc.C_gamma_q, d);
    pc.C_truncation = phase_vol * pc.c_truncation;
    pc.C_midpoint = phase_vol * pc.c_midpoint;
    return pc;
}

namespace {

struct LsqFit {
    double slope;
    double sse;
};

LsqFit lsq(const std::vector<double>& t, const std::vector<double>& y) {
    const double n = double(t.size());
    double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        st += t[i];
        sy += y[i];
        stt += t[i] * t[i];
        sty += t[i] * y[i];
    }
    const double denom = n * stt - st * st;
    const double slope = (n * sty - st * sy) / denom;
    const double intercept = (sy - slope * st) / n;
    double sse = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double r = y[i] - (intercept + slope * t[i]);
        sse += r * r;
    }
    return {slope, sse};
}

}  // namespace

RateFit fit_rate(std::vector<ErrorSweepRecord> records) {
    if (records.size() < 4)
        throw TooFewPoints("fit rate: need at least 4 records");
    std::sort(records.begin(), records.end(),
              [](const ErrorSweepRecord& a, const ErrorSweepRecord& b) { return a.N < b.N; });

    RateFit fit;
    const std::size_t n = records.size();
    const double e1 = records[n - 3].sup_error;
    const double e2 = records[n - 2].sup_error;
    const double e3 = records[n - 1].sup_error;
    const double lo = std::min({e1, e2, e3});
    const double hi = std::max({e1, e2, e3});
    if (lo > 0.0 && (hi - lo) / lo < 0.10)
        fit.plateau = (e1 + e2 + e3) / 3.0;

    constexpr double floor_guard = 1e-13;
    const double cut = std::max(fit.plateau ? 2.0 * *fit.plateau : 0.0, floor_guard);
    std::vector<double> ns, logn, loge;
    for (const auto& r : records) {
        if (r.sup_error > cut) {
            ns.push_back(double(r.N));
            logn.push_back(std::log(double(r.N)));
            loge.push_back(std::log(r.sup_error));
        }
    }
    if (ns.size() < 2) {
        // Everything is plateau/floor; fall back to the full record list so the
        // slope is still defined (it will be ~0).
        ns.clear(); logn.clear(); loge.clear();
        for (const auto& r : records) {
            ns.push_back(double(r.N));
            logn.push_back(std::log(double(r.N)));
            loge.push_back(std::log(std::max(r.sup_error, 1e-300)));
        }
    }

    const LsqFit loglog = lsq(logn, loge);
    const LsqFit loglin = lsq(ns, loge);
    fit.algebraic_slope = loglog.slope;
    if (loglin.sse < loglog.sse) fit.exp_rate = loglin.slope;
    return fit;
}

}  // namespace gwpt
