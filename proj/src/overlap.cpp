#include "gwpt/overlap.hpp"

#include "gwpt/errors.hpp"

#include <Eigen/LU>
#include <cmath>

namespace gwpt {

namespace {

Complex bilinear(const CMat& A, const CVec& u, const CVec& v) {
    Complex s(0.0, 0.0);
    for (Eigen::Index i = 0; i < u.size(); ++i)
        for (Eigen::Index j = 0; j < v.size(); ++j)
            s += u(i) * A(i, j) * v(j);
    return s;
}

CMat guarded_inverse(const CMat& m, const char* what) {
    Eigen::FullPivLU<CMat> lu(m);
    if (!lu.isInvertible())
        throw SingularDifference(std::string("singular matrix while forming ") + what);
    return lu.inverse();
}

}  // namespace

OverlapParams::OverlapParams(const WidthMatrix& basisC, const WavePacket& psi0, Vec q_k)
    : d_(basisC.dim()),
      eps_(psi0.eps()),
      q_k_(std::move(q_k)),
      q0_(psi0.center().q),
      p0_(psi0.center().p),
      C_(basisC.entries()),
      C0_(psi0.width().entries()) {
    if (psi0.dim() != d_ || q_k_.size() != d_)
        throw DimensionMismatch("overlap params: dimension mismatch");

    const Complex I(0.0, 1.0);
    const CMat D = C0_ - C_.conjugate();        // C0 - conj(C)
    A_ = I * guarded_inverse(D, "A = i (C0 - conj C)^{-1}");
    A_inv_ = -I * D;
    M_top_ = guarded_inverse(
        guarded_inverse(C0_, "C0^{-1}") - guarded_inverse(C_.conjugate(), "conj(C)^{-1}"),
        "(C0^{-1} - conj(C)^{-1})^{-1}");
    M_bot_ = -guarded_inverse(D, "(C0 - conj C)^{-1}");

    const CVec dq = (q_k_ - q0_).cast<Complex>();
    b_shift_ = -I * (A_ * (C0_ * dq));

    const double det_im_quarter =
        std::pow(basisC.det_imag() * psi0.width().det_imag(), 0.25);
    const Complex det_A_inv = A_inv_.determinant();
    sqrt_det_A_inv_ = std::sqrt(det_A_inv);  // principal branch

    const Complex gauss_decay =
        std::exp(-bilinear(C_.conjugate() * A_ * C0_, dq, dq) / (2.0 * eps_));
    c_prefactor_ = det_im_quarter /
                   (std::pow(M_PI * eps_, d_) * std::sqrt(std::pow(2.0, d_)) * sqrt_det_A_inv_) *
                   gauss_decay;

    beta_prefactor_ = std::pow(2.0, 0.5 * d_) * det_im_quarter / sqrt_det_A_inv_;
    beta_cross_ = A_ * (C0_ + C_.conjugate());
}

CMat OverlapParams::M() const {
    CMat m = CMat::Zero(2 * d_, 2 * d_);
    m.topLeftCorner(d_, d_) = M_top_;
    m.bottomRightCorner(d_, d_) = M_bot_;
    return m;
}

CVec OverlapParams::b(const Vec& x) const {
    return (x - q_k_).cast<Complex>() + b_shift_;
}

Complex OverlapParams::c(const Vec& x) const {
    const Complex I(0.0, 1.0);
    return c_prefactor_ * std::exp(I / eps_ * p0_.dot(x - q0_));
}

Complex OverlapParams::beta(const Vec& p) const {
    const Complex I(0.0, 1.0);
    const CVec dq = (q_k_ - q0_).cast<Complex>();
    const CVec dp = (p - p0_).cast<Complex>();
    const Complex lin = I / (2.0 * eps_) * (p + p0_).dot(q_k_ - q0_);
    Complex cross(0.0, 0.0);
    for (Eigen::Index i = 0; i < d_; ++i)
        for (Eigen::Index j = 0; j < d_; ++j)
            cross += dp(i) * beta_cross_(i, j) * dq(j);
    return beta_prefactor_ * std::exp(lin + cross / (2.0 * eps_));
}

Complex OverlapParams::overlap_with_target(const Vec& p) const {
    const Complex I(0.0, 1.0);
    const CVec dq = (q_k_ - q0_).cast<Complex>();
    const CVec dp = (p - p0_).cast<Complex>();
    const Complex quad = bilinear(M_top_, dq, dq) + bilinear(M_bot_, dp, dp);
    return beta(p) * std::exp(I / (2.0 * eps_) * quad);
}

Complex OverlapParams::momentum_integral(const Vec& x) const {
    const CVec bx = b(x);
    Complex quad(0.0, 0.0);
    for (Eigen::Index i = 0; i < d_; ++i)
        for (Eigen::Index j = 0; j < d_; ++j)
            quad += bx(i) * A_inv_(i, j) * bx(j);
    return std::pow(2.0 * M_PI * eps_, 0.5 * d_) / sqrt_det_A_inv_ *
           std::exp(-quad / (2.0 * eps_));
}

Complex OverlapParams::integrand(const Vec& x, const Vec& p) const {
    const Complex I(0.0, 1.0);
    const CVec pc = p.cast<Complex>();
    Complex quad(0.0, 0.0);
    for (Eigen::Index i = 0; i < d_; ++i)
        for (Eigen::Index j = 0; j < d_; ++j)
            quad += pc(i) * A_(i, j) * pc(j);
    const CVec bx = b(x);
    Complex lin(0.0, 0.0);
    for (Eigen::Index i = 0; i < d_; ++i) lin += bx(i) * pc(i);
    return std::exp(-quad / (2.0 * eps_) + I / eps_ * lin);
}

OverlapParams overlap_params(const WidthMatrix& basisC, const WavePacket& psi0,
                             const Vec& q_k) {
    return OverlapParams(basisC, psi0, q_k);
}

Complex overlap(const WavePacket& bra, const WavePacket& ket) {
    if (bra.dim() != ket.dim())
        throw DimensionMismatch("overlap: dimension mismatch");
    if (bra.eps() != ket.eps())
        throw EpsMismatch("overlap: packets have different eps");
    OverlapParams params(bra.width(), ket, bra.center().q);
    return params.overlap_with_target(bra.center().p);
}

Complex overlap_oracle(const WavePacket& bra, const WavePacket& ket,
                       double box_halfwidth, int points_per_dim) {
    if (bra.dim() != ket.dim())
        throw DimensionMismatch("overlap oracle: dimension mismatch");
    if (bra.eps() != ket.eps())
        throw EpsMismatch("overlap oracle: packets have different eps");
    const int d = bra.dim();
    if (d > 3)
        throw DimensionTooLarge("overlap oracle: d <= 3 (cost guard)");
    if (points_per_dim < 16)
        throw std::invalid_argument("overlap oracle: points_per_dim >= 16");

    const Vec mid = 0.5 * (bra.center().q + ket.center().q);
    const int n = points_per_dim;
    const double h = 2.0 * box_halfwidth / (n - 1);

    Complex sum(0.0, 0.0);
    std::vector<int> idx(d, 0);
    Vec x(d);
    while (true) {
        double w = 1.0;
        for (int m = 0; m < d; ++m) {
            x(m) = mid(m) - box_halfwidth + idx[m] * h;
            if (idx[m] == 0 || idx[m] == n - 1) w *= 0.5;
        }
        sum += w * std::conj(bra(x)) * ket(x);
        int m = d - 1;
        while (m >= 0 && ++idx[m] == n) idx[m--] = 0;
        if (m < 0) break;
    }
    return sum * std::pow(h, d);
}

}  // namespace gwpt
