// error_model.hpp — predicted error constants and empirical rate fitting

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace gwpt {

// One row of a convergence experiment.
struct ErrorSweepRecord {
    std::string rule;
    int N = 0;                   // points per dimension (RS: truncated count 2J+1)
    int M = 0;
    double gamma = 0.0;          // basis Im width (1-d)
    double eps = 0.0;
    std::optional<double> L_p;   // TcM only
    double sup_error = 0.0;
    std::optional<double> predicted_bound;
    double wall_time_s = 0.0;
};

// Fixed header: rule,N,M,gamma,eps,L_p,sup_error,predicted_bound,wall_time_s.
// Optional fields serialize as empty cells.
void write_records_csv(std::ostream& os, const std::vector<ErrorSweepRecord>& records);

// L^1 bound c_s on the s-th derivative of the Gaussian integrand (from the
// Kampe de Feriet expansion):
//   c_s = (s!/eps^s) sum_{m=0}^{floor(s/2)} eps^{m+1/2} / (2^{m-1} m!)
//         (sqrt(eps) + 2 L_q sqrt(d))^{s-2m}.
double derivative_l1_bound(int s, double L_q, double eps, int d);

struct PredictedConstants {
    // Quadrature-level constants.
    double c_truncation;   // (2 pi eps)^{d/2} exp(-d L_p^2 / (2 eps))
    double c_midpoint;     // d (L_p^3/3) (4 d (L_p+L_q)^2 eps^{-2} + eps^{-1})
    double c_riemann;      // d c_{2s+1} / (2 pi)^{2s+1}
    double c_gh_shape;     // sqrt(pi) 2^{(3s+d)/2} d^{s/2+1} eps^{(d-s)/2} L_q^s
    bool gh_absolute;      // false: the Mastroianni constant is unknown (C = 1 here)
    // Summation-curve prefactor and theorem-level totals.
    double C_gamma_q;      // 2 sqrt(2) (pi eps)^{1/4} sigma^{-1/4} / erf(2 L_q sqrt(sigma/eps))
    double C_truncation;   // (2 pi eps)^{-d} c_truncation C_gamma_q^d
    double C_midpoint;     // (2 pi eps)^{-d} c_midpoint  C_gamma_q^d
};

// sigma_min is the smallest eigenvalue of the basis Im C; s is the smoothness
// order used by the RS and GH constants.
PredictedConstants predicted_constants(int d, double eps, double L_p, double L_q,
                                       double sigma_min, int s);

struct RateFit {
    double algebraic_slope = 0.0;        // d log E / d log N on the pre-plateau segment
    std::optional<double> plateau;       // trailing mean when the last three errors
                                         // vary by < 10%
    std::optional<double> exp_rate;      // d log E / d N when the log-linear fit beats
                                         // the log-log fit on the segment
};

// Least-squares convergence diagnostics over >= 4 records with increasing N
// and a common rule/config. Pre-plateau segment: records with
// sup_error > max(2 * plateau, 1e-13); the 1e-13 guard keeps measurements at
// the double-precision floor from polluting the fits.
RateFit fit_rate(std::vector<ErrorSweepRecord> records);

}  // namespace gwpt
