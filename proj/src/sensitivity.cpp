#include "jetfit/sensitivity.hpp"

#include <cmath>

namespace jetfit {

namespace {

Eigen::MatrixXd normal_chain(const JetFit& fit, const Eigen::MatrixXd& d_alpha) {
    const Vec3 u(-fit.coefficients.beta(1, 0), -fit.coefficients.beta(0, 1), 1.0);
    const double u_norm = u.norm();
    const Vec3 n = u / u_norm;

    Eigen::MatrixXd du(3, d_alpha.cols());
    du.row(0) = -d_alpha.row(JetCoefficients::index(1, 0));
    du.row(1) = -d_alpha.row(JetCoefficients::index(0, 1));
    du.row(2).setZero();
    return ((Eigen::Matrix3d::Identity() - n * n.transpose()) / u_norm) * du;
}

}  // namespace

Eigen::MatrixXd dalpha_dw(const JetFit& fit, const PatchNeighborhood& patch) {
    const int n_p = patch.size();
    const int n_n = JetCoefficients::count(fit.coefficients.order_n);
    if (fit.qr.rank() < n_n) {
        throw RankDeficientError("dalpha_dw: fit factorization is rank deficient");
    }

    const double h = fit.precondition_h;
    std::vector<Eigen::Vector2d> xy(n_p);
    for (int i = 0; i < n_p; ++i) {
        xy[i] = Eigen::Vector2d(patch.local_points[i].x() / h, patch.local_points[i].y() / h);
    }
    const DesignMatrix design = vandermonde(xy, fit.coefficients.order_n);

    // Column i of the preconditioned Jacobian is (M'^T W M')^-1 m'_i r'_i.
    // With the pivoted QR  sqrt(W) M' P = Q R  this is two triangular solves:
    // (M'^T W M')^-1 v = P R^-1 R^-T P^T v.
    const Eigen::MatrixXd rhs =
        design.m.transpose() * (fit.residuals / h).asDiagonal();  // N_n x N_p
    const auto r_upper =
        fit.qr.matrixR().topLeftCorner(n_n, n_n).template triangularView<Eigen::Upper>();
    const auto perm = fit.qr.colsPermutation();

    Eigen::MatrixXd x = perm.transpose() * rhs;
    x = r_upper.transpose().solve(x);
    x = r_upper.solve(x);
    Eigen::MatrixXd jac = perm * x;

    // Back to original units: degree-k rows scale by h^(1-k).
    for (int idx = 0; idx < n_n; ++idx) {
        jac.row(idx) *= std::pow(h, 1 - JetCoefficients::degree_of(idx));
    }
    return jac;
}

Eigen::MatrixXd dnormal_dw(const JetFit& fit, const PatchNeighborhood& patch) {
    return normal_chain(fit, dalpha_dw(fit, patch));
}

WeightJacobian weight_jacobian(const JetFit& fit, const PatchNeighborhood& patch) {
    WeightJacobian jac;
    jac.d_alpha = dalpha_dw(fit, patch);
    jac.d_normal = normal_chain(fit, jac.d_alpha);
    return jac;
}

}  // namespace jetfit
