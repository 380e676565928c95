// summation_curve.hpp — S(x) = sum_k |g_0(x - q_k)|^2, partition of unity, bounds

#pragma once

#include "gwpt/position_grid.hpp"

#include <vector>

namespace gwpt {

// Positive summation curve over a position grid. All evaluations are pure;
// the curve factorizes over the aligned axes because the grid is aligned with
// the eigenvectors of Im C.
class SummationCurve {
public:
    SummationCurve(PositionGrid grid, WidthMatrix width, double eps);

    const PositionGrid& grid() const { return grid_; }
    const WidthMatrix& width() const { return width_; }
    double eps() const { return eps_; }

    // Direct summation. Finite mode: exact sum over all M^d grid points.
    // Integer-lattice mode: per-axis sums expanded outward from the nearest
    // lattice point until a side term falls below 1e-18 times the running
    // partial sum, then multiplied across axes (the lattice sum factorizes
    // exactly).
    double direct(const Vec& x) const;

    // chi_k(x) = |g_0(x - q_k)|^2 / S(x), in (0, 1].
    double partition_weight(const std::vector<int>& k, const Vec& x) const;

    // Product of one-dimensional summation curves along the aligned axes;
    // equals direct() on aligned grids.
    double product(const Vec& x) const;

private:
    double axis_sum(int n, double t) const;  // 1-d curve S_n(t) along axis n

    PositionGrid grid_;
    WidthMatrix width_;
    double eps_;
    Vec amp1d_;  // (pi eps)^{-1/2} sqrt(lambda_n), per axis
};

// 1-d cosine expansion of the integer-lattice curve, truncated after n_terms:
//   S(x) = 1/dq + (2/dq) sum_{n>=1} cos(2 pi n x / dq) exp(-pi^2 n^2 eps / (gamma_i dq^2)).
double summation_expansion(double dq, double gamma_i, double eps, double x, int n_terms);

// c_s (dq)^{2s-1} with c_s = 2 s! gamma_i^s / (pi^{2s} eps^s); bounds
// |S(x) - 1/dq| for the integer-lattice curve, any x.
double spectral_bound(int s, double dq, double gamma_i, double eps);

// Upper bound for sum_k |g_0(x - q_k)| on the integer lattice:
//   sqrt(2) (pi eps)^{1/4} gamma_i^{-1/4} (1/dq) (1 + dq sqrt(gamma_i / (2 pi eps))).
double summation_upper_bound(double dq, double eps, double gamma_i);

// Lower bound for S(x) on the finite grid box [q0 - L_q, q0 + L_q]:
//   (1 / (2 dq)) ( erf(2 L_q sqrt(gamma_i/eps)) - erf(dq sqrt(gamma_i/eps)) ).
// Requires dq < 2 L_q.
double summation_lower_bound(double dq, double eps, double gamma_i, double L_q);

}  // namespace gwpt
