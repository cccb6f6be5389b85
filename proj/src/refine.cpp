#include "jetfit/refine.hpp"

#include <algorithm>
#include <cmath>

namespace jetfit {

UnitVector3 apply_residual(const UnitVector3& rough, const ResidualTerm& delta) {
    const Vec3 sum = rough.vec() + delta.delta;
    if (sum.norm() < 1e-8) {
        throw DegenerateSumError("apply_residual: rough + delta has vanishing norm");
    }
    return UnitVector3(sum);
}

double sin_loss(const UnitVector3& gt, const UnitVector3& est) {
    return std::min(1.0, gt.vec().cross(est.vec()).norm());
}

double normal_loss(const UnitVector3& gt, const UnitVector3& rough, const UnitVector3& refined) {
    return sin_loss(gt, rough) + sin_loss(gt, refined);
}

double trans_loss(const UnitVector3& gt, const Rotation& t) {
    return std::min(1.0, t.apply(gt.vec()).cross(Vec3::UnitZ()).norm());
}

LossBreakdown total_loss(double l_normal, double l_con, double l_reg, double l_trans,
                         const LossWeights& lw) {
    for (double v : {l_normal, l_con, l_reg, l_trans}) {
        if (!(v >= 0.0) || !std::isfinite(v)) {
            throw Error("total_loss: components must be finite and >= 0");
        }
    }
    LossBreakdown out;
    out.l_normal = l_normal;
    out.l_con = l_con;
    out.l_reg = l_reg;
    out.l_trans = l_trans;
    out.l_total = l_normal + lw.lambda1 * l_con + lw.lambda2 * l_reg + lw.lambda3 * l_trans;
    return out;
}

ResidualTerm oracle_residual(const UnitVector3& gt, const UnitVector3& rough) {
    // Same antipodal guard as rotate_to_z: cross below 1e-8 with negative dot.
    if (gt.vec().cross(rough.vec()).norm() < 1e-8 && gt.dot(rough) < 0.0) {
        throw DegenerateSumError("oracle_residual: gt and rough are antipodal");
    }
    return ResidualTerm{gt.vec() - rough.vec()};
}

}  // namespace jetfit
