#ifndef JETFIT_GEOM_HPP
#define JETFIT_GEOM_HPP

#include <Eigen/Dense>
#include <Eigen/Geometry>
#include <memory>
#include <vector>

#include "jetfit/errors.hpp"

namespace jetfit {

using Vec3 = Eigen::Vector3d;

/// A direction with unit Euclidean norm. The constructor normalizes, so a
/// zero or non-finite input is rejected rather than silently kept.
class UnitVector3 {
public:
    UnitVector3() : v_(0, 0, 1) {}
    explicit UnitVector3(const Vec3& v);
    UnitVector3(double x, double y, double z) : UnitVector3(Vec3(x, y, z)) {}

    const Vec3& vec() const { return v_; }
    double x() const { return v_.x(); }
    double y() const { return v_.y(); }
    double z() const { return v_.z(); }

    UnitVector3 operator-() const;
    double dot(const UnitVector3& o) const { return v_.dot(o.v_); }

private:
    Vec3 v_;
};

/// Proper rigid rotation stored as a unit quaternion.
class Rotation {
public:
    Rotation() : q_(Eigen::Quaterniond::Identity()) {}
    explicit Rotation(const Eigen::Quaterniond& q) : q_(q.normalized()) {}
    Rotation(double w, double x, double y, double z) : Rotation(Eigen::Quaterniond(w, x, y, z)) {}
    explicit Rotation(const Eigen::Matrix3d& m) : q_(Eigen::Quaterniond(m).normalized()) {}

    static Rotation identity() { return Rotation(); }
    static Rotation axis_angle(const Vec3& axis, double angle_rad);

    Vec3 apply(const Vec3& v) const { return q_ * v; }
    UnitVector3 apply(const UnitVector3& v) const { return UnitVector3(q_ * v.vec()); }

    Rotation inverse() const { return Rotation(q_.conjugate()); }
    /// Composition: (a * b).apply(v) == a.apply(b.apply(v)).
    Rotation operator*(const Rotation& o) const { return Rotation(q_ * o.q_); }

    const Eigen::Quaterniond& quat() const { return q_; }
    Eigen::Matrix3d matrix() const { return q_.toRotationMatrix(); }

private:
    Eigen::Quaterniond q_;
};

struct PointCloud {
    std::vector<Vec3> points;
    std::vector<UnitVector3> gt_normals;  // empty, or one per point

    std::size_t size() const { return points.size(); }
    bool has_gt_normals() const { return !gt_normals.empty(); }
};

/// A query point together with its k nearest neighbors, expressed in a frame
/// centered at the query point. scale_h is the patch radius max_i ||p_i||
/// (1 by convention for a single-point patch).
struct PatchNeighborhood {
    int query_index = 0;
    std::vector<int> neighbor_indices;
    std::vector<Vec3> local_points;
    double scale_h = 1.0;

    int size() const { return static_cast<int>(local_points.size()); }
};

/// Exact k-nearest-neighbor index over a fixed set of points.
class KdTree {
public:
    explicit KdTree(const std::vector<Vec3>& points);
    ~KdTree();
    KdTree(KdTree&&) noexcept;
    KdTree& operator=(KdTree&&) noexcept;
    KdTree(const KdTree&) = delete;
    KdTree& operator=(const KdTree&) = delete;

    /// Indices of the k points closest to `query`, ordered by ascending
    /// distance with ties broken by ascending index.
    std::vector<int> knn(const Vec3& query, int k) const;

    std::size_t size() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Extracts the k-nearest-neighbor patch of cloud.points[query_index],
/// including the query itself, centered at the query point.
PatchNeighborhood knn_patch(const PointCloud& cloud, int query_index, int k);

/// Same, but reusing a prebuilt tree over cloud.points.
PatchNeighborhood knn_patch(const KdTree& tree, const PointCloud& cloud, int query_index, int k);

/// Minimal-angle rotation taking v to +z (axis v x z). For v within 1e-8 of
/// -z the axis is ambiguous; the tie-break is a 180-degree turn about x.
Rotation rotate_to_z(const UnitVector3& v);

/// Rotates every local point; indices and scale_h are unchanged.
PatchNeighborhood apply_rotation(const Rotation& r, const PatchNeighborhood& patch);

}  // namespace jetfit

#endif
