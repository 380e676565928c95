#include "gwpt/coefficients.hpp"

#include "gwpt/csv.hpp"
#include "gwpt/errors.hpp"

#include <cmath>
#include <ostream>

namespace gwpt {

CoefficientTable::CoefficientTable(Rule rule, MomentumGrid pgrid, PositionGrid qgrid,
                                   WidthMatrix basisC, double eps)
    : rule_(rule),
      pgrid_(std::move(pgrid)),
      qgrid_(std::move(qgrid)),
      basisC_(std::move(basisC)),
      eps_(eps) {
    values_.assign(pgrid_.size() * qgrid_.size(), Complex(0.0, 0.0));
}

CoefficientTable coefficients(const MomentumGrid& pgrid, const PositionGrid& qgrid,
                              const WidthMatrix& basisC, const WavePacket& psi0) {
    if (psi0.dim() != qgrid.dim() || pgrid.dim != qgrid.dim())
        throw DimensionMismatch("coefficients: grid/target dimensions differ");
    const double eps = psi0.eps();
    CoefficientTable table(pgrid.rule, pgrid, qgrid, basisC, eps);

    const double inv_phase_vol = std::pow(2.0 * M_PI * eps, -qgrid.dim());
    const std::size_t Jn = pgrid.size();
    const std::size_t Kn = qgrid.size();
    for (std::size_t k = 0; k < Kn; ++k) {
        // The lemma parameters depend on k only through q_k; build once per k.
        const OverlapParams params(basisC, psi0, qgrid.point(k));
        for (std::size_t j = 0; j < Jn; ++j) {
            const double w = pgrid.weight(j);
            table.at(j, k) =
                w * inv_phase_vol * params.overlap_with_target(pgrid.node(j));
        }
    }
    return table;
}

void CoefficientTable::write_csv(std::ostream& os) const {
    os << "rule,j,k,re,im\n";
    const std::size_t Jn = momentum_size();
    const std::size_t Kn = position_size();
    const std::string name = rule_name(rule_);
    for (std::size_t k = 0; k < Kn; ++k) {
        const std::vector<int> kidx = qgrid_.unflatten(k);
        std::string klabel;
        for (std::size_t n = 0; n < kidx.size(); ++n) {
            if (n) klabel += ';';
            klabel += std::to_string(kidx[n] + 1);
        }
        for (std::size_t j = 0; j < Jn; ++j) {
            const std::vector<int> jidx = pgrid_.unflatten(j);
            std::string jlabel;
            for (std::size_t n = 0; n < jidx.size(); ++n) {
                if (n) jlabel += ';';
                jlabel += std::to_string(pgrid_.labels1d[jidx[n]]);
            }
            const Complex r = at(j, k);
            os << name << ',' << jlabel << ',' << klabel << ','
               << format_double(r.real()) << ',' << format_double(r.imag()) << '\n';
        }
    }
}

}  // namespace gwpt
