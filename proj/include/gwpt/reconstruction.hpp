// reconstruction.hpp — psi_rec evaluation, semi-discrete identity, sup errors

#pragma once

#include "gwpt/coefficients.hpp"
#include "gwpt/summation_curve.hpp"

#include <vector>

namespace gwpt {

// Fully discrete reconstruction
//   psi_rec(x) = (1/S(x)) sum_k sum_j r_{j,k} g_{j,k}(x).
// Linear in the coefficient table; eps and dimension must agree between the
// table and the summation curve.
class Reconstruction {
public:
    Reconstruction(CoefficientTable table, SummationCurve curve);

    const CoefficientTable& table() const { return table_; }
    const SummationCurve& curve() const { return curve_; }
    int dim() const { return curve_.grid().dim(); }
    double eps() const { return curve_.eps(); }

    Complex operator()(const Vec& x) const;

    // Batch evaluation sharing the per-j exponentials across position cells;
    // algebraically identical to the pointwise path.
    std::vector<Complex> evaluate_many(const std::vector<Vec>& xs) const;

private:
    CoefficientTable table_;
    SummationCurve curve_;
    // c_{j,k} = r_{j,k} exp(-i p_j . q_k / eps), so that
    // sum_j r_{j,k} e^{i p_j.(x-q_k)/eps} = sum_j c_{j,k} e^{i p_j.x/eps}.
    std::vector<Complex> phase_folded_;
    std::vector<Vec> nodes_;   // cached momentum nodes
    std::vector<Vec> points_;  // cached position points
};

// Closed form of I_{q_k}(x) = (2 pi eps)^{-d} integral <g_z|psi0> g_z(x) dp
// over momentum: g_0(x - q_k) c_k(x) (2 pi eps)^{d/2} det(A)^{-1/2}
// exp(-b_k(x)^T A^{-1} b_k(x) / (2 eps)). No numerical quadrature.
Complex semi_discrete_I(const Vec& q_k, const WavePacket& psi0,
                        const WidthMatrix& basisC, const Vec& x);

// Uniform sample grid on the aligned box Lambda_x of half-length L_q around
// the reconstruction's grid center (endpoints included); returns
// max |psi0 - psi_rec| over the samples. samples_per_dim >= 64.
double sup_error(const Reconstruction& rec, const WavePacket& psi0, double L_q,
                 int samples_per_dim);

// Sample points used by sup_error (exposed so error measurements and tests
// share the same surrogate of the continuum sup).
std::vector<Vec> sample_box(const Vec& center, const Mat& U, double L_q, int d,
                            int samples_per_dim);

}  // namespace gwpt
