#pragma once

#include <Eigen/Dense>
#include <cmath>

#include "skewflow/common.hpp"

namespace skewflow {

/// Thin QR with the sign convention diag(R) >= 0, which makes the factor
/// continuous along continued bases.
inline void qr_positive(const Mat& w, Mat& q, Vec& rdiag) {
    Eigen::HouseholderQR<Mat> qr(w);
    Mat thin_q = qr.householderQ() * Mat::Identity(w.rows(), w.cols());
    Mat r = qr.matrixQR().topRows(w.cols()).triangularView<Eigen::Upper>();
    rdiag = r.diagonal();
    for (long j = 0; j < w.cols(); ++j) {
        if (rdiag[j] < 0) {
            thin_q.col(j) = -thin_q.col(j);
            rdiag[j] = -rdiag[j];
        }
    }
    q = std::move(thin_q);
}

/// Spectral projector of m onto the invariant subspace of eigenvalues with
/// Re(lambda) < shift, via the Newton iteration for the matrix sign function.
/// Robust for defective matrices as long as no eigenvalue sits on the line.
inline Mat left_spectral_projector(const Mat& m, double shift, int max_iter = 60,
                                   double tol = 1e-13) {
    const long d = m.rows();
    Mat s = m - shift * Mat::Identity(d, d);
    for (int it = 0; it < max_iter; ++it) {
        Mat inv = s.inverse();
        Mat next = 0.5 * (s + inv);
        double change = (next - s).norm() / std::max(1.0, s.norm());
        s = std::move(next);
        if (change < tol) break;
    }
    return 0.5 * (Mat::Identity(d, d) - s);
}

/// Orthonormal basis of the column space of m, keeping directions whose
/// singular value exceeds the cutoff.
inline Mat range_basis(const Mat& m, double cutoff = 0.5) {
    Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeThinU);
    int rank = 0;
    for (long i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()[i] > cutoff) ++rank;
    return svd.matrixU().leftCols(rank);
}

/// Oblique projection with image span(img) and kernel span(ker); both inputs
/// must have full column rank and complementary dimensions.
inline Mat oblique_projection(const Mat& img, const Mat& ker) {
    const long d = img.rows();
    require(img.cols() + ker.cols() == d, "oblique_projection: dimensions must be complementary");
    Mat basis(d, d);
    basis.leftCols(img.cols()) = img;
    basis.rightCols(ker.cols()) = ker;
    Mat target = Mat::Zero(d, d);
    target.leftCols(img.cols()) = img;
    // Q * [img | ker] = [img | 0]
    return basis.transpose().fullPivLu().solve(target.transpose()).transpose();
}

/// Smallest principal angle (radians) between two subspaces given by
/// orthonormal bases. Returns the angle between the closest pair of
/// directions, i.e. how close the subspaces come to touching.
inline double min_principal_angle(const Mat& a, const Mat& b) {
    Eigen::JacobiSVD<Mat> svd(a.transpose() * b);
    double c = svd.singularValues().maxCoeff();
    return std::acos(std::min(1.0, c));
}

/// Rotate the orthonormal basis `fresh` inside its own span so that it is as
/// close as possible to `prev` (orthogonal Procrustes). Keeps continued frame
/// bases free of spurious flips and in-plane rotations.
inline Mat align_to_previous(const Mat& fresh, const Mat& prev) {
    Eigen::JacobiSVD<Mat> svd(fresh.transpose() * prev, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return fresh * (svd.matrixU() * svd.matrixV().transpose());
}

}  // namespace skewflow
