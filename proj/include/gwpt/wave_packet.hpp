// wave_packet.hpp — semiclassically scaled Gaussian wave packets g_z^{C,eps}

#pragma once

#include "gwpt/width_matrix.hpp"

namespace gwpt {

// Phase space center z = (q, p). Components must be finite and of equal
// dimension.
struct PhaseSpacePoint {
    PhaseSpacePoint(Vec q_, Vec p_);
    Vec q;
    Vec p;
    int dim() const { return static_cast<int>(q.size()); }
};

// Normalized Gaussian wave packet
//   g_z(x) = (pi eps)^{-d/4} det(Im C)^{1/4}
//            exp[ (i/eps) ( (x-q)^T C (x-q)/2 + p.(x-q) ) ].
// Immutable after construction; evaluation is pure. The phase convention is
// e^{i p.(x-q)/eps} and the inner product used with these packets is
// antilinear in its first argument.
class WavePacket {
public:
    WavePacket(PhaseSpacePoint center, WidthMatrix width, double eps);

    int dim() const { return center_.dim(); }
    double eps() const { return eps_; }
    const PhaseSpacePoint& center() const { return center_; }
    const WidthMatrix& width() const { return width_; }

    // g_z(x); throws DimensionMismatch if x has the wrong length.
    Complex operator()(const Vec& x) const;

    // Centered envelope g_0(y), i.e. the packet with q = p = 0 and the same
    // width, evaluated at y. Complex-valued for general widths (chirp).
    Complex envelope(const Vec& y) const;

    // |g_0(y)|^2; depends only on Im C and y.
    double envelope_abs2(const Vec& y) const;

    // (pi eps)^{-d/4} det(Im C)^{1/4}, the peak magnitude of the envelope.
    double peak_amplitude() const { return amp_; }

private:
    PhaseSpacePoint center_;
    WidthMatrix width_;
    double eps_;
    double amp_;
};

}  // namespace gwpt
