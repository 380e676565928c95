// overlap.hpp — analytic Gaussian overlaps and the lemma parameters A, b, c, M, beta

#pragma once

#include "gwpt/wave_packet.hpp"

namespace gwpt {

// Parameters of the closed-form overlap between a basis family g^{C,eps}
// anchored at position q_k and a fixed Gaussian target psi0 = g_{z0}^{C0,eps}:
//
//   A    = i (C0 - conj(C))^{-1}
//   b(x) = x - q_k - i A C0 (q_k - q0)
//   c(x) = det(Im C Im C0)^{1/4} / ((pi eps)^d sqrt(2^d det(A^{-1})))
//          * exp( -(q_k-q0)^T conj(C) A C0 (q_k-q0) / (2 eps) + i p0.(x-q0)/eps )
//   M    = blockdiag( (C0^{-1} - conj(C)^{-1})^{-1}, -(C0 - conj(C))^{-1} )
//   beta(p) = 2^{d/2} det(Im C Im C0)^{1/4} / sqrt(det(A^{-1}))
//             * exp( i (p+p0).(q_k-q0) / (2 eps) )
//             * exp( (p-p0)^T A (C0 + conj(C)) (q_k-q0) / (2 eps) ).
//
// Square roots of determinants use the principal branch; for purely imaginary
// widths every determinant involved is positive real.
class OverlapParams {
public:
    OverlapParams(const WidthMatrix& basisC, const WavePacket& psi0, Vec q_k);

    int dim() const { return d_; }
    double eps() const { return eps_; }
    const Vec& q_k() const { return q_k_; }

    const CMat& A() const { return A_; }
    CMat M() const;                       // 2d x 2d block diagonal
    CVec b(const Vec& x) const;
    Complex c(const Vec& x) const;
    Complex beta(const Vec& p) const;

    // <g_{(q_k, p)} | psi0> = beta(p) exp( i (z-z0)^T M (z-z0) / (2 eps) ).
    Complex overlap_with_target(const Vec& p) const;

    // Closed form of integral f_{k,x} over R^d where
    // f_{k,x}(p) = exp( -p^T A p / (2 eps) + i b(x).p / eps ):
    //   (2 pi eps)^{d/2} det(A)^{-1/2} exp( -b(x)^T A^{-1} b(x) / (2 eps) ).
    // Exists because Re(A) > 0.
    Complex momentum_integral(const Vec& x) const;

    // f_{k,x}(p) itself, for quadrature-path cross checks.
    Complex integrand(const Vec& x, const Vec& p) const;

private:
    int d_;
    double eps_;
    Vec q_k_, q0_, p0_;
    CMat C_, C0_;
    CMat A_, A_inv_;    // A_inv = -i (C0 - conj(C))
    CMat M_top_, M_bot_;
    CVec b_shift_;      // b(x) = x - q_k + b_shift
    Complex c_prefactor_;
    Complex beta_prefactor_;
    CMat beta_cross_;   // A (C0 + conj(C))
    Complex sqrt_det_A_inv_;
};

// Analytic <bra|ket>, antilinear in the first argument. Requires equal eps and
// dimension. |result| <= 1 up to roundoff for these unit-norm packets.
Complex overlap(const WavePacket& bra, const WavePacket& ket);

// Tensorized trapezoid approximation of integral conj(bra)(x) ket(x) dx over
// the box centered at the midpoint of the two position centers with the given
// half-width. O(h^2) guaranteed; spectrally accurate here because the
// integrand is an entire Gaussian. d <= 3, points_per_dim >= 16.
Complex overlap_oracle(const WavePacket& bra, const WavePacket& ket,
                       double box_halfwidth, int points_per_dim);

// Free-function counterpart of the OverlapParams constructor (spec surface).
OverlapParams overlap_params(const WidthMatrix& basisC, const WavePacket& psi0,
                             const Vec& q_k);

}  // namespace gwpt
