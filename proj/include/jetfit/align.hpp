#ifndef JETFIT_ALIGN_HPP
#define JETFIT_ALIGN_HPP

#include "jetfit/geom.hpp"
#include "jetfit/jet.hpp"

namespace jetfit {

/// Outcome of the iterative z-direction alignment. `rotation` is the total
/// composed rotation from the input frame into the final fitting frame;
/// `fit` lives in that final frame.
struct AlignmentResult {
    Rotation rotation;
    JetFit fit;
    int iterations = 0;
    double final_z_angle_deg = 0.0;
    std::vector<double> z_angle_history_deg;  // one entry per fit performed
    bool converged = true;
};

/// Rotation sending the smallest-eigenvalue direction of the patch
/// covariance to +z, remaining axes ordered by decreasing eigenvalue,
/// right-handed. Throws DegeneratePatchError on rank-<2 covariance.
Rotation pca_align(const PatchNeighborhood& patch);

/// The PCA surface-normal estimate of a patch in its own frame (the
/// smallest-eigenvalue eigenvector, sign made deterministic).
UnitVector3 pca_normal(const PatchNeighborhood& patch);

/// Starting from the PCA frame, alternates jet fitting with a rotation of
/// the patch that sends the fitted normal to +z, until the fitted normal is
/// within tol_deg of the z axis or max_iters fits have been performed.
AlignmentResult z_align_iterate(const PatchNeighborhood& patch, WeightScheme weighting,
                                int order_n, double tol_deg = 0.5, int max_iters = 5);

/// The final estimated normal expressed back in the input frame.
UnitVector3 world_normal(const AlignmentResult& result);

/// Angle in degrees between a direction and +z, in [0, 180].
double z_angle_deg(const UnitVector3& v);

}  // namespace jetfit

#endif
