// coefficients.hpp — analytic representation coefficients r_{j,k}

#pragma once

#include "gwpt/overlap.hpp"
#include "gwpt/position_grid.hpp"
#include "gwpt/quadrature.hpp"

#include <iosfwd>
#include <vector>

namespace gwpt {

// Table of representation coefficients
//   r_{j,k} = (node weight) (2 pi eps)^{-d} <g_{j,k} | psi0>,
// stored row-major: position index k outer, momentum index j inner, both in
// the grids' flat order, so the layout (and the CSV) is byte-reproducible.
class CoefficientTable {
public:
    CoefficientTable(Rule rule, MomentumGrid pgrid, PositionGrid qgrid,
                     WidthMatrix basisC, double eps);

    Rule rule() const { return rule_; }
    double eps() const { return eps_; }
    const MomentumGrid& momentum_grid() const { return pgrid_; }
    const PositionGrid& position_grid() const { return qgrid_; }
    const WidthMatrix& basis_width() const { return basisC_; }

    std::size_t momentum_size() const { return pgrid_.size(); }
    std::size_t position_size() const { return qgrid_.size(); }

    Complex at(std::size_t j_flat, std::size_t k_flat) const {
        return values_[k_flat * momentum_size() + j_flat];
    }
    Complex& at(std::size_t j_flat, std::size_t k_flat) {
        return values_[k_flat * momentum_size() + j_flat];
    }
    const std::vector<Complex>& values() const { return values_; }

    // columns: rule, j (semicolon-joined), k (semicolon-joined), re, im.
    // Momentum labels are 1..N (TcM/GH) or -J..J (RS); position labels 1..M.
    void write_csv(std::ostream& os) const;

private:
    Rule rule_;
    MomentumGrid pgrid_;
    PositionGrid qgrid_;
    WidthMatrix basisC_;
    double eps_;
    std::vector<Complex> values_;

    friend CoefficientTable coefficients(const MomentumGrid&, const PositionGrid&,
                                         const WidthMatrix&, const WavePacket&);
};

// Fills the full cross-product table from the analytic overlap.
CoefficientTable coefficients(const MomentumGrid& pgrid, const PositionGrid& qgrid,
                              const WidthMatrix& basisC, const WavePacket& psi0);

}  // namespace gwpt
