#include "gwpt/wave_packet.hpp"

#include "gwpt/errors.hpp"

#include <cmath>

namespace gwpt {

namespace {

// y^T A y for real y and complex symmetric A (no conjugation).
Complex quadratic_form(const CMat& A, const Vec& y) {
    Complex s(0.0, 0.0);
    for (Eigen::Index i = 0; i < y.size(); ++i)
        for (Eigen::Index j = 0; j < y.size(); ++j)
            s += y(i) * A(i, j) * y(j);
    return s;
}

}  // namespace

PhaseSpacePoint::PhaseSpacePoint(Vec q_, Vec p_) : q(std::move(q_)), p(std::move(p_)) {
    if (q.size() != p.size() || q.size() == 0)
        throw DimensionMismatch("phase space point: q and p must share a positive dimension");
    if (!q.allFinite() || !p.allFinite())
        throw std::invalid_argument("phase space point has non-finite components");
}

WavePacket::WavePacket(PhaseSpacePoint center, WidthMatrix width, double eps)
    : center_(std::move(center)), width_(std::move(width)), eps_(eps) {
    if (center_.dim() != width_.dim())
        throw DimensionMismatch("wave packet: center and width dimensions differ");
    if (!(eps_ > 0.0))
        throw std::invalid_argument("wave packet: eps must be positive");
    const int d = dim();
    amp_ = std::pow(M_PI * eps_, -0.25 * d) * std::pow(width_.det_imag(), 0.25);
}

Complex WavePacket::operator()(const Vec& x) const {
    if (x.size() != center_.q.size())
        throw DimensionMismatch("wave packet evaluation: x has wrong dimension");
    const Vec y = x - center_.q;
    const Complex quad = quadratic_form(width_.entries(), y);
    const Complex phase = Complex(0.0, 1.0) / eps_ * (0.5 * quad + center_.p.dot(y));
    return amp_ * std::exp(phase);
}

Complex WavePacket::envelope(const Vec& y) const {
    if (y.size() != center_.q.size())
        throw DimensionMismatch("envelope evaluation: y has wrong dimension");
    const Complex quad = quadratic_form(width_.entries(), y);
    return amp_ * std::exp(Complex(0.0, 0.5 / eps_) * quad);
}

double WavePacket::envelope_abs2(const Vec& y) const {
    const double q = y.dot(width_.imag_part() * y);
    return amp_ * amp_ * std::exp(-q / eps_);
}

}  // namespace gwpt
