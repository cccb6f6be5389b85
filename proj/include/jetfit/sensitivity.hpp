#ifndef JETFIT_SENSITIVITY_HPP
#define JETFIT_SENSITIVITY_HPP

#include <Eigen/Dense>

#include "jetfit/jet.hpp"

namespace jetfit {

/// Analytic derivatives of a finished fit with respect to the point-wise
/// weights. Columns index points.
struct WeightJacobian {
    Eigen::MatrixXd d_alpha;   // N_n x N_p
    Eigen::MatrixXd d_normal;  // 3 x N_p
};

/// d(alpha)/d(w_i) = (M^T W M)^-1 m_i r_i, computed per column from the
/// factorization kept in the fit and mapped back to original units.
Eigen::MatrixXd dalpha_dw(const JetFit& fit, const PatchNeighborhood& patch);

/// Chain rule through u = (-a10, -a01, 1), n = u/|u|.
Eigen::MatrixXd dnormal_dw(const JetFit& fit, const PatchNeighborhood& patch);

WeightJacobian weight_jacobian(const JetFit& fit, const PatchNeighborhood& patch);

}  // namespace jetfit

#endif
