// quadrature.hpp — Gauss-Hermite rules and the three momentum-space grids

#pragma once

#include "gwpt/width_matrix.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace gwpt {

// N-point Gauss-Hermite rule for integral e^{-p^2} h(p) dp.
// nodes strictly increasing and exactly symmetric about 0, weights positive,
// sum of weights = sqrt(pi).
struct HermiteRule {
    Vec nodes;    // zeros of the Nth Hermite polynomial
    Vec weights;
};

// Golub-Welsch on the Jacobi matrix (off-diagonals sqrt(k/2)); symmetrized so
// the node multiset is reflection-invariant to the last bit. 1 <= N <= 512.
HermiteRule hermite_rule(int N);

// e^{s_j^2} w_j for the given rule nodes, computed as 1/(N psi_{N-1}(s_j)^2)
// with the normalized Hermite functions psi_k. This never forms the
// overflowing factor e^{s^2} explicitly, so it stays finite up to N = 512.
Vec hermite_scaled_weights(int N, const Vec& nodes);

enum class Rule { TcM, RS, GH };

std::string rule_name(Rule r);

// Tensorized momentum grid: node p_j = p0 + (offset_{j_1}, ..., offset_{j_d}),
// total weight = product of per-dimension weights. Flat enumeration is
// row-major with the last index fastest. Per-dimension CSV labels are 1..N for
// TcM/GH and -J..J for RS.
struct MomentumGrid {
    Rule rule = Rule::TcM;
    int dim = 1;
    Vec p0;
    Vec offsets1d;          // shared across dimensions
    Vec weights1d;
    std::vector<int> labels1d;

    // meta
    double dp = 0.0;        // TcM / RS spacing
    double L_p = 0.0;       // TcM box half-length
    double tail_tol = 0.0;  // RS truncation tolerance
    int N = 0;              // points per dimension (TcM/GH); 2J+1 for RS

    int per_dim_count() const { return static_cast<int>(offsets1d.size()); }
    std::size_t size() const;
    std::vector<int> unflatten(std::size_t flat) const;
    Vec node(const std::vector<int>& j) const;
    Vec node(std::size_t flat) const;
    double weight(const std::vector<int>& j) const;
    double weight(std::size_t flat) const;
};

// Truncated compound-midpoint grid on the box [p0 - L_p, p0 + L_p]^d:
//   p_{j,n} = p_{0,n} - L_p + (2 j_n - 1)/2 * dp,  dp = 2 L_p / N,
// uniform weight (dp)^d.
MomentumGrid tcm_grid(int N, double L_p, const Vec& p0, double eps, int d);

// Symmetric truncation of the infinite Riemann lattice p_j = p0 + j dp,
// keeping |j_n| <= J with J the smallest integer such that
// exp(-(J dp)^2 / (2 eps)) < tail_tol. Uniform weight (dp)^d.
MomentumGrid rs_grid(double dp, const Vec& p0, double eps, int d, double tail_tol);

// Transformed Gauss-Hermite grid, p_j = p0 + s_j sqrt(2 eps) per dimension,
// per-dimension weight omega_j = e^{s_j^2} w_j sqrt(2 eps).
MomentumGrid gh_grid(int N, double eps, const Vec& p0);

// Width-adapted variant: the rule is applied to the integrand normalized to
// unit Gaussian width and mapped back, giving p_j = p0 + s_j scale_n sqrt(2 eps)
// and weights scaled accordingly. scale must be positive; scale = 1 recovers
// gh_grid. With one scale per dimension this stays tensorized only when all
// scales are equal, which is the aligned-isotropic case the experiments use;
// the API therefore takes a single scalar scale.
MomentumGrid gh_grid_scaled(int N, double eps, const Vec& p0, double scale);

}  // namespace gwpt
