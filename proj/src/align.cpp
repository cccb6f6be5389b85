#include "jetfit/align.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace jetfit {

namespace {

constexpr double kRadToDeg = 180.0 / M_PI;

Eigen::Matrix3d patch_covariance(const PatchNeighborhood& patch) {
    Vec3 mean = Vec3::Zero();
    for (const Vec3& p : patch.local_points) mean += p;
    mean /= static_cast<double>(patch.size());
    Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
    for (const Vec3& p : patch.local_points) {
        const Vec3 d = p - mean;
        cov += d * d.transpose();
    }
    return cov / static_cast<double>(patch.size());
}

// Sign canonicalization: largest-magnitude component positive.
Vec3 canonical_sign(const Vec3& v) {
    int idx = 0;
    v.cwiseAbs().maxCoeff(&idx);
    return v[idx] < 0.0 ? Vec3(-v) : v;
}

}  // namespace

UnitVector3 pca_normal(const PatchNeighborhood& patch) {
    if (patch.size() < 3) throw DegeneratePatchError("pca: need at least 3 points");
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver;
    solver.computeDirect(patch_covariance(patch));
    const Eigen::Vector3d evals = solver.eigenvalues();  // ascending
    if (!(evals[1] > 1e-10 * std::max(evals[2], 1e-300))) {
        throw DegeneratePatchError("pca: patch covariance has rank < 2");
    }
    return UnitVector3(canonical_sign(solver.eigenvectors().col(0)));
}

Rotation pca_align(const PatchNeighborhood& patch) {
    if (patch.size() < 3) throw DegeneratePatchError("pca_align: need at least 3 points");
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver;
    solver.computeDirect(patch_covariance(patch));
    const Eigen::Vector3d evals = solver.eigenvalues();
    if (!(evals[1] > 1e-10 * std::max(evals[2], 1e-300))) {
        throw DegeneratePatchError("pca_align: patch covariance has rank < 2");
    }

    const Vec3 z_axis = canonical_sign(solver.eigenvectors().col(0));
    const Vec3 major = solver.eigenvectors().col(2);
    const Vec3 middle = solver.eigenvectors().col(1);

    // Candidate x axes: the major axis, plus the middle one when the top two
    // eigenvalues tie; both signs. The winner minimizes the rotation angle
    // from identity (maximum trace).
    std::vector<Vec3> candidates = {major, -major};
    if (std::abs(evals[2] - evals[1]) <= 1e-9 * std::max(1.0, std::abs(evals[2]))) {
        candidates.push_back(middle);
        candidates.push_back(-middle);
    }
    Eigen::Matrix3d best;
    double best_trace = -std::numeric_limits<double>::infinity();
    for (const Vec3& x_axis : candidates) {
        Eigen::Matrix3d r;
        r.row(0) = x_axis;
        r.row(1) = z_axis.cross(x_axis);
        r.row(2) = z_axis;
        const double tr = r.trace();
        if (tr > best_trace) {
            best_trace = tr;
            best = r;
        }
    }
    return Rotation(best);
}

double z_angle_deg(const UnitVector3& v) {
    return std::atan2(std::hypot(v.x(), v.y()), v.z()) * kRadToDeg;
}

AlignmentResult z_align_iterate(const PatchNeighborhood& patch, WeightScheme weighting,
                                int order_n, double tol_deg, int max_iters) {
    if (max_iters < 1) throw Error("z_align_iterate: max_iters must be >= 1");

    AlignmentResult result;
    result.rotation = pca_align(patch);
    PatchNeighborhood current = apply_rotation(result.rotation, patch);

    for (int iter = 1; iter <= max_iters; ++iter) {
        result.fit = fit_with_scheme(current, order_n, weighting);
        result.iterations = iter;
        result.final_z_angle_deg = z_angle_deg(result.fit.normal);
        result.z_angle_history_deg.push_back(result.final_z_angle_deg);
        if (result.final_z_angle_deg <= tol_deg || iter == max_iters) break;

        const Rotation step = rotate_to_z(result.fit.normal);
        result.rotation = step * result.rotation;
        current = apply_rotation(step, current);
    }
    result.converged = result.final_z_angle_deg <= tol_deg;
    return result;
}

UnitVector3 world_normal(const AlignmentResult& result) {
    return result.rotation.inverse().apply(result.fit.normal);
}

}  // namespace jetfit
