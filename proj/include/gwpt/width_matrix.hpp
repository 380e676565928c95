// width_matrix.hpp — validated Siegel upper half-space matrices (packet widths)

#pragma once

#include <Eigen/Dense>
#include <complex>

namespace gwpt {

using Complex = std::complex<double>;
using Vec  = Eigen::VectorXd;
using Mat  = Eigen::MatrixXd;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

// Complex symmetric d x d matrix with positive definite imaginary part.
// Construction goes through validate(), which symmetrizes representational
// noise ((raw + raw^T)/2 after a 1e-12 relative symmetry check) and caches
// the eigendecomposition of the imaginary part:
//   Im C = U diag(lambdas) U^T,
// eigenvalues ascending, each eigenvector's first nonzero component positive,
// so that grids derived from U are reproducible.
class WidthMatrix {
public:
    static WidthMatrix validate(const CMat& raw);

    const CMat& entries() const { return entries_; }
    int dim() const { return static_cast<int>(entries_.rows()); }

    const Mat& imag_part() const { return im_; }
    const Mat& eig_vectors() const { return U_; }       // columns u_n
    const Vec& eig_values() const { return lambdas_; }  // ascending, all > 0
    double det_imag() const { return det_imag_; }
    double min_imag_eigenvalue() const { return lambdas_(0); }

private:
    explicit WidthMatrix(CMat entries);

    CMat entries_;
    Mat im_;
    Mat U_;
    Vec lambdas_;
    double det_imag_ = 0.0;
};

// 1-d convenience: width gamma with Im(gamma) > 0.
WidthMatrix scalar_width(Complex gamma);

// Diagonal imaginary widths i*diag(gammas), gammas > 0.
WidthMatrix diagonal_width(const Vec& gammas);

}  // namespace gwpt
