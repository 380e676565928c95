#include "gwpt/width_matrix.hpp"

#include "gwpt/errors.hpp"

#include <cmath>

namespace gwpt {

namespace {

// Deterministic eigenvector orientation: first component of nonnegligible
// magnitude is made positive.
void fix_signs(Mat& U) {
    for (Eigen::Index c = 0; c < U.cols(); ++c) {
        const double scale = U.col(c).cwiseAbs().maxCoeff();
        for (Eigen::Index r = 0; r < U.rows(); ++r) {
            const double v = U(r, c);
            if (std::abs(v) > 1e-12 * scale) {
                if (v < 0.0) U.col(c) = -U.col(c);
                break;
            }
        }
    }
}

}  // namespace

WidthMatrix::WidthMatrix(CMat entries) : entries_(std::move(entries)) {
    im_ = entries_.imag();
    Eigen::SelfAdjointEigenSolver<Mat> es(im_);
    lambdas_ = es.eigenvalues();  // ascending
    U_ = es.eigenvectors();
    fix_signs(U_);
    det_imag_ = lambdas_.prod();
}

WidthMatrix WidthMatrix::validate(const CMat& raw) {
    if (raw.rows() != raw.cols() || raw.rows() == 0)
        throw DimensionMismatch("width matrix must be square and nonempty");
    if (!raw.allFinite())
        throw std::invalid_argument("width matrix has non-finite entries");

    const double scale = std::max(1.0, raw.cwiseAbs().maxCoeff());
    const double asym = (raw - raw.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-12 * scale)
        throw NotSymmetric("width matrix is not symmetric (max |C - C^T| = "
                           + std::to_string(asym) + ")");

    WidthMatrix w(0.5 * (raw + raw.transpose().eval()));
    if (w.lambdas_(0) <= 0.0)
        throw ImaginaryPartNotPositiveDefinite(w.lambdas_(0));
    return w;
}

WidthMatrix scalar_width(Complex gamma) {
    CMat m(1, 1);
    m(0, 0) = gamma;
    return WidthMatrix::validate(m);
}

WidthMatrix diagonal_width(const Vec& gammas) {
    CMat m = CMat::Zero(gammas.size(), gammas.size());
    for (Eigen::Index n = 0; n < gammas.size(); ++n)
        m(n, n) = Complex(0.0, gammas(n));
    return WidthMatrix::validate(m);
}

}  // namespace gwpt
