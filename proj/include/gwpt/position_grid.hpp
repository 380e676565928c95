// position_grid.hpp — uniform position grids aligned with the width eigenvectors

#pragma once

#include "gwpt/width_matrix.hpp"

#include <cstddef>
#include <vector>

namespace gwpt {

enum class GridMode { Finite, IntegerLattice };

// Uniform grid in position space, aligned with the eigenvectors of Im C.
// Finite mode: M points per dimension on the box of half-length L_q,
//   q_k = q0 + U eta_k,  eta_{k,n} = -L_q + (2 k_n + 1)/2 * dq,
// with 0-based k_n in {0,...,M-1} and dq = 2 L_q / M (matches the 1-based
// midpoint offsets (2k-1)/2 * dq).
// Integer-lattice mode: conceptually infinite, q_k = q0 + U (k * dq), k in Z^d.
//
// Flat enumeration of finite multi-indices is row-major with the last
// component fastest, so derived tables are byte-reproducible.
class PositionGrid {
public:
    static PositionGrid finite(Vec q0, double L_q, int M, const WidthMatrix& C);
    static PositionGrid integer_lattice(Vec q0, double dq, const WidthMatrix& C);

    GridMode mode() const { return mode_; }
    int dim() const { return static_cast<int>(q0_.size()); }
    double dq() const { return dq_; }
    double box_half_length() const { return L_q_; }  // finite mode only
    int points_per_dim() const { return M_; }        // finite mode only
    const Vec& center() const { return q0_; }
    const Mat& U() const { return U_; }
    const Vec& lambdas() const { return lambdas_; }

    std::size_t size() const;                        // finite mode: M^d

    // Aligned offset eta_k (components along the eigenvector axes).
    Vec aligned_offset(const std::vector<int>& k) const;
    // Grid point q_k = q0 + U eta_k.
    Vec point(const std::vector<int>& k) const;
    Vec point(std::size_t flat) const;               // finite mode
    std::vector<int> unflatten(std::size_t flat) const;

    // True when k addresses a grid member (finite: all k_n in [0, M)).
    bool contains(const std::vector<int>& k) const;

private:
    PositionGrid() = default;

    GridMode mode_ = GridMode::Finite;
    Vec q0_;
    double L_q_ = 0.0;
    int M_ = 0;
    double dq_ = 0.0;
    Mat U_;
    Vec lambdas_;
};

}  // namespace gwpt
