#include "gwpt/summation_curve.hpp"

#include "gwpt/errors.hpp"

#include <cmath>

namespace gwpt {

SummationCurve::SummationCurve(PositionGrid grid, WidthMatrix width, double eps)
    : grid_(std::move(grid)), width_(std::move(width)), eps_(eps) {
    if (grid_.dim() != width_.dim())
        throw DimensionMismatch("summation curve: grid and width dimensions differ");
    if (!(eps_ > 0.0))
        throw std::invalid_argument("summation curve: eps must be positive");
    amp1d_ = Vec(width_.dim());
    for (int n = 0; n < width_.dim(); ++n)
        amp1d_(n) = std::sqrt(width_.eig_values()(n)) / std::sqrt(M_PI * eps_);
}

double SummationCurve::axis_sum(int n, double t) const {
    const double lam = width_.eig_values()(n);
    const double dq = grid_.dq();
    const auto term = [&](double eta) {
        const double y = t - eta;
        return amp1d_(n) * std::exp(-lam * y * y / eps_);
    };
    if (grid_.mode() == GridMode::Finite) {
        double s = 0.0;
        for (int k = 0; k < grid_.points_per_dim(); ++k)
            s += term(-grid_.box_half_length() + (2.0 * k + 1.0) / 2.0 * dq);
        return s;
    }
    // Integer lattice: expand from the nearest lattice point until both side
    // terms are negligible relative to the partial sum.
    const long k0 = std::lround(t / dq);
    double s = term(k0 * dq);
    for (long r = 1;; ++r) {
        const double lo = term((k0 - r) * dq);
        const double hi = term((k0 + r) * dq);
        s += lo + hi;
        if (lo < 1e-18 * s && hi < 1e-18 * s) break;
    }
    return s;
}

double SummationCurve::direct(const Vec& x) const {
    if (x.size() != grid_.dim())
        throw DimensionMismatch("summation curve: x has wrong dimension");
    const Vec t = grid_.U().transpose() * (x - grid_.center());

    if (grid_.mode() == GridMode::IntegerLattice) {
        // The lattice sum over Z^d factorizes exactly into per-axis sums.
        double s = 1.0;
        for (int n = 0; n < grid_.dim(); ++n) s *= axis_sum(n, t(n));
        return s;
    }

    // Finite mode: honest full loop over the M^d grid points.
    const int d = grid_.dim();
    const int M = grid_.points_per_dim();
    const double dq = grid_.dq();
    const double Lq = grid_.box_half_length();
    const Vec& lam = width_.eig_values();
    double amp = 1.0;
    for (int n = 0; n < d; ++n) amp *= amp1d_(n);

    double s = 0.0;
    std::vector<int> k(d, 0);
    while (true) {
        double expo = 0.0;
        for (int n = 0; n < d; ++n) {
            const double y = t(n) - (-Lq + (2.0 * k[n] + 1.0) / 2.0 * dq);
            expo += lam(n) * y * y;
        }
        s += amp * std::exp(-expo / eps_);
        int n = d - 1;
        while (n >= 0 && ++k[n] == M) k[n--] = 0;
        if (n < 0) break;
    }
    return s;
}

double SummationCurve::partition_weight(const std::vector<int>& k, const Vec& x) const {
    if (!grid_.contains(k))
        throw IndexOutOfRange("partition weight: multi-index outside the grid index set");
    const Vec t = grid_.U().transpose() * (x - grid_.center());
    const Vec eta = grid_.aligned_offset(k);
    const Vec& lam = width_.eig_values();
    double expo = 0.0;
    double amp = 1.0;
    for (int n = 0; n < grid_.dim(); ++n) {
        const double y = t(n) - eta(n);
        expo += lam(n) * y * y;
        amp *= amp1d_(n);
    }
    return amp * std::exp(-expo / eps_) / direct(x);
}

double SummationCurve::product(const Vec& x) const {
    if (x.size() != grid_.dim())
        throw DimensionMismatch("summation curve: x has wrong dimension");
    const Vec t = grid_.U().transpose() * (x - grid_.center());
    double s = 1.0;
    for (int n = 0; n < grid_.dim(); ++n) s *= axis_sum(n, t(n));
    return s;
}

double summation_expansion(double dq, double gamma_i, double eps, double x, int n_terms) {
    if (n_terms < 0)
        throw std::invalid_argument("summation expansion: n_terms >= 0");
    double s = 1.0 / dq;
    for (int n = 1; n <= n_terms; ++n) {
        s += 2.0 / dq * std::cos(2.0 * M_PI * n * x / dq) *
             std::exp(-M_PI * M_PI * n * n * eps / (gamma_i * dq * dq));
    }
    return s;
}

double spectral_bound(int s, double dq, double gamma_i, double eps) {
    if (s < 1) throw std::invalid_argument("spectral bound: s >= 1");
    double fact = 1.0;
    for (int i = 2; i <= s; ++i) fact *= i;
    const double c_s = 2.0 * fact * std::pow(gamma_i, s) / std::pow(M_PI * M_PI * eps, s);
    return c_s * std::pow(dq, 2 * s - 1);
}

double summation_upper_bound(double dq, double eps, double gamma_i) {
    if (!(dq > 0.0 && eps > 0.0 && gamma_i > 0.0))
        throw std::invalid_argument("summation upper bound: parameters must be positive");
    return std::sqrt(2.0) * std::pow(M_PI * eps, 0.25) * std::pow(gamma_i, -0.25) / dq *
           (1.0 + dq * std::sqrt(gamma_i / (2.0 * M_PI * eps)));
}

double summation_lower_bound(double dq, double eps, double gamma_i, double L_q) {
    if (!(dq > 0.0 && eps > 0.0 && gamma_i > 0.0 && L_q > 0.0))
        throw std::invalid_argument("summation lower bound: parameters must be positive");
    if (dq >= 2.0 * L_q)
        throw InvalidGeometry("summation lower bound: requires dq < 2 L_q");
    const double r = std::sqrt(gamma_i / eps);
    return 1.0 / (2.0 * dq) * (std::erf(2.0 * L_q * r) - std::erf(dq * r));
}

}  // namespace gwpt
