#include "gwpt/position_grid.hpp"

#include "gwpt/errors.hpp"

#include <cmath>

namespace gwpt {

PositionGrid PositionGrid::finite(Vec q0, double L_q, int M, const WidthMatrix& C) {
    if (q0.size() != C.dim())
        throw DimensionMismatch("position grid: q0 and width dimensions differ");
    if (!(L_q > 0.0) || M < 1)
        throw std::invalid_argument("position grid: need L_q > 0 and M >= 1");
    PositionGrid g;
    g.mode_ = GridMode::Finite;
    g.q0_ = std::move(q0);
    g.L_q_ = L_q;
    g.M_ = M;
    g.dq_ = 2.0 * L_q / M;
    g.U_ = C.eig_vectors();
    g.lambdas_ = C.eig_values();
    return g;
}

PositionGrid PositionGrid::integer_lattice(Vec q0, double dq, const WidthMatrix& C) {
    if (q0.size() != C.dim())
        throw DimensionMismatch("position grid: q0 and width dimensions differ");
    if (!(dq > 0.0))
        throw std::invalid_argument("position grid: need dq > 0");
    PositionGrid g;
    g.mode_ = GridMode::IntegerLattice;
    g.q0_ = std::move(q0);
    g.dq_ = dq;
    g.U_ = C.eig_vectors();
    g.lambdas_ = C.eig_values();
    return g;
}

std::size_t PositionGrid::size() const {
    if (mode_ != GridMode::Finite)
        throw std::logic_error("position grid: integer lattice has no finite size");
    std::size_t n = 1;
    for (int i = 0; i < dim(); ++i) n *= static_cast<std::size_t>(M_);
    return n;
}

Vec PositionGrid::aligned_offset(const std::vector<int>& k) const {
    if (static_cast<int>(k.size()) != dim())
        throw DimensionMismatch("position grid: multi-index has wrong length");
    Vec eta(dim());
    for (int n = 0; n < dim(); ++n) {
        if (mode_ == GridMode::Finite)
            eta(n) = -L_q_ + (2.0 * k[n] + 1.0) / 2.0 * dq_;
        else
            eta(n) = k[n] * dq_;
    }
    return eta;
}

Vec PositionGrid::point(const std::vector<int>& k) const {
    if (mode_ == GridMode::Finite && !contains(k))
        throw IndexOutOfRange("position grid: multi-index outside the grid");
    return q0_ + U_ * aligned_offset(k);
}

Vec PositionGrid::point(std::size_t flat) const {
    return point(unflatten(flat));
}

std::vector<int> PositionGrid::unflatten(std::size_t flat) const {
    if (mode_ != GridMode::Finite)
        throw std::logic_error("position grid: flat indexing requires finite mode");
    std::vector<int> k(dim());
    for (int n = dim() - 1; n >= 0; --n) {
        k[n] = static_cast<int>(flat % M_);
        flat /= M_;
    }
    if (flat != 0)
        throw IndexOutOfRange("position grid: flat index outside the grid");
    return k;
}

bool PositionGrid::contains(const std::vector<int>& k) const {
    if (static_cast<int>(k.size()) != dim()) return false;
    if (mode_ == GridMode::IntegerLattice) return true;
    for (int n = 0; n < dim(); ++n)
        if (k[n] < 0 || k[n] >= M_) return false;
    return true;
}

}  // namespace gwpt
