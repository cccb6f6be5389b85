#ifndef JETFIT_REFINE_HPP
#define JETFIT_REFINE_HPP

#include "jetfit/geom.hpp"

namespace jetfit {

/// Weights of the combined loss; the consistency and regularization terms
/// are injected scalars supplied by the caller.
struct LossWeights {
    double lambda1 = 0.25;  // consistency
    double lambda2 = 0.1;   // regularization
    double lambda3 = 2.0;   // z-direction transformation
};

struct LossBreakdown {
    double l_normal = 0.0;
    double l_con = 0.0;
    double l_reg = 0.0;
    double l_trans = 0.0;
    double l_total = 0.0;
};

/// An additive correction to a rough normal estimate.
struct ResidualTerm {
    Vec3 delta = Vec3::Zero();
};

/// (rough + delta) renormalized. Throws DegenerateSumError when the sum
/// norm falls below 1e-8.
UnitVector3 apply_residual(const UnitVector3& rough, const ResidualTerm& delta);

/// |gt x est| = sin of the angle between two unit vectors, in [0, 1].
double sin_loss(const UnitVector3& gt, const UnitVector3& est);

/// Supervision on both the rough and the refined estimate:
/// sin_loss(gt, rough) + sin_loss(gt, refined).
double normal_loss(const UnitVector3& gt, const UnitVector3& rough, const UnitVector3& refined);

/// |t(gt) x z|: sin of the angle between the rotated true normal and +z.
double trans_loss(const UnitVector3& gt, const Rotation& t);

/// Combines the components: l_normal + l1*l_con + l2*l_reg + l3*l_trans.
/// Negative components are rejected.
LossBreakdown total_loss(double l_normal, double l_con, double l_reg, double l_trans,
                         const LossWeights& lw = LossWeights{});

/// The delta a perfect residual predictor would emit: gt - rough, so that
/// apply_residual recovers gt exactly. Antipodal pairs are rejected.
ResidualTerm oracle_residual(const UnitVector3& gt, const UnitVector3& rough);

}  // namespace jetfit

#endif
