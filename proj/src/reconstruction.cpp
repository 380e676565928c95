#include "gwpt/reconstruction.hpp"

#include "gwpt/errors.hpp"

#include <cmath>

namespace gwpt {

Reconstruction::Reconstruction(CoefficientTable table, SummationCurve curve)
    : table_(std::move(table)), curve_(std::move(curve)) {
    if (table_.position_grid().dim() != curve_.grid().dim())
        throw DimensionMismatch("reconstruction: table and curve dimensions differ");
    if (table_.eps() != curve_.eps())
        throw EpsMismatch("reconstruction: table and curve eps differ");

    const std::size_t Jn = table_.momentum_size();
    const std::size_t Kn = table_.position_size();
    nodes_.reserve(Jn);
    for (std::size_t j = 0; j < Jn; ++j) nodes_.push_back(table_.momentum_grid().node(j));
    points_.reserve(Kn);
    for (std::size_t k = 0; k < Kn; ++k) points_.push_back(table_.position_grid().point(k));

    const double eps = curve_.eps();
    phase_folded_.resize(Jn * Kn);
    for (std::size_t k = 0; k < Kn; ++k)
        for (std::size_t j = 0; j < Jn; ++j)
            phase_folded_[k * Jn + j] =
                table_.at(j, k) *
                std::exp(Complex(0.0, -nodes_[j].dot(points_[k]) / eps));
}

Complex Reconstruction::operator()(const Vec& x) const {
    const double eps = curve_.eps();
    const WavePacket basis_envelope(
        PhaseSpacePoint(Vec::Zero(dim()), Vec::Zero(dim())), table_.basis_width(), eps);
    Complex acc(0.0, 0.0);
    for (std::size_t k = 0; k < points_.size(); ++k) {
        Complex inner(0.0, 0.0);
        for (std::size_t j = 0; j < nodes_.size(); ++j) {
            const Complex phase =
                std::exp(Complex(0.0, nodes_[j].dot(x - points_[k]) / eps));
            inner += table_.at(j, k) * phase;
        }
        acc += basis_envelope.envelope(x - points_[k]) * inner;
    }
    return acc / curve_.direct(x);
}

std::vector<Complex> Reconstruction::evaluate_many(const std::vector<Vec>& xs) const {
    const double eps = curve_.eps();
    const std::size_t Jn = nodes_.size();
    const std::size_t Kn = points_.size();
    const WavePacket basis_envelope(
        PhaseSpacePoint(Vec::Zero(dim()), Vec::Zero(dim())), table_.basis_width(), eps);

    std::vector<Complex> out(xs.size());
    std::vector<Complex> ej(Jn);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const Vec& x = xs[i];
        for (std::size_t j = 0; j < Jn; ++j)
            ej[j] = std::exp(Complex(0.0, nodes_[j].dot(x) / eps));
        Complex acc(0.0, 0.0);
        for (std::size_t k = 0; k < Kn; ++k) {
            const Complex* c = &phase_folded_[k * Jn];
            Complex inner(0.0, 0.0);
            for (std::size_t j = 0; j < Jn; ++j) inner += c[j] * ej[j];
            acc += basis_envelope.envelope(x - points_[k]) * inner;
        }
        out[i] = acc / curve_.direct(x);
    }
    return out;
}

Complex semi_discrete_I(const Vec& q_k, const WavePacket& psi0,
                        const WidthMatrix& basisC, const Vec& x) {
    const OverlapParams params(basisC, psi0, q_k);
    const WavePacket basis_envelope(
        PhaseSpacePoint(Vec::Zero(psi0.dim()), Vec::Zero(psi0.dim())), basisC, psi0.eps());
    return basis_envelope.envelope(x - q_k) * params.c(x) * params.momentum_integral(x);
}

std::vector<Vec> sample_box(const Vec& center, const Mat& U, double L_q, int d,
                            int samples_per_dim) {
    const int n = samples_per_dim;
    std::vector<Vec> xs;
    if (d == 1) {
        xs.reserve(n);
        for (int i = 0; i < n; ++i) {
            Vec x(1);
            x(0) = center(0) + (-L_q + 2.0 * L_q * i / (n - 1)) * U(0, 0);
            xs.push_back(x);
        }
        return xs;
    }
    std::vector<int> idx(d, 0);
    Vec xi(d);
    while (true) {
        for (int m = 0; m < d; ++m) xi(m) = -L_q + 2.0 * L_q * idx[m] / (n - 1);
        xs.push_back(center + U * xi);
        int m = d - 1;
        while (m >= 0 && ++idx[m] == n) idx[m--] = 0;
        if (m < 0) break;
    }
    return xs;
}

double sup_error(const Reconstruction& rec, const WavePacket& psi0, double L_q,
                 int samples_per_dim) {
    if (samples_per_dim < 64)
        throw std::invalid_argument("sup error: samples_per_dim >= 64");
    const auto xs = sample_box(rec.curve().grid().center(), rec.curve().grid().U(), L_q,
                               rec.dim(), samples_per_dim);
    const auto values = rec.evaluate_many(xs);
    double worst = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i)
        worst = std::max(worst, std::abs(psi0(xs[i]) - values[i]));
    return worst;
}

}  // namespace gwpt
