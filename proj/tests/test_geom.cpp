#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "jetfit/geom.hpp"
#include "oracles.hpp"

using namespace jetfit;

TEST_CASE("knn_patch single point cloud") {
    PointCloud cloud;
    cloud.points = {Vec3(2.0, -1.0, 3.0)};
    const PatchNeighborhood patch = knn_patch(cloud, 0, 1);
    CHECK(patch.size() == 1);
    CHECK(patch.local_points[0] == Vec3(0, 0, 0));
    CHECK(patch.scale_h == 1.0);  // single-point convention
}

TEST_CASE("knn_patch three collinear points, k=2") {
    PointCloud cloud;
    cloud.points = {Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(5, 0, 0)};
    const PatchNeighborhood patch = knn_patch(cloud, 0, 2);
    CHECK(patch.neighbor_indices == std::vector<int>{0, 1});
    CHECK(patch.local_points[0] == Vec3(0, 0, 0));
    CHECK(patch.local_points[1] == Vec3(1, 0, 0));
    CHECK(patch.scale_h == doctest::Approx(1.0));
}

TEST_CASE("knn_patch argument errors") {
    PointCloud cloud;
    cloud.points = {Vec3(0, 0, 0), Vec3(1, 0, 0)};
    CHECK_THROWS_AS(knn_patch(cloud, 0, 3), Error);
    CHECK_THROWS_AS(knn_patch(cloud, 0, 0), Error);
    CHECK_THROWS_AS(knn_patch(cloud, 5, 1), Error);
    PointCloud empty;
    CHECK_THROWS_AS(knn_patch(empty, 0, 1), Error);
}

TEST_CASE("knn_patch equals brute force for 20 random points, k=8") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    PointCloud cloud;
    for (int i = 0; i < 20; ++i) cloud.points.emplace_back(u(rng), u(rng), u(rng));
    const PatchNeighborhood patch = knn_patch(cloud, 3, 8);
    CHECK(patch.neighbor_indices == oracles::brute_knn(cloud.points, cloud.points[3], 8));
}

TEST_CASE("knn_patch matches brute force exhaustively up to size 50") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int n = 1; n <= 50; ++n) {
        PointCloud cloud;
        for (int i = 0; i < n; ++i) cloud.points.emplace_back(u(rng), u(rng), u(rng));
        if (n >= 4) cloud.points[n - 1] = cloud.points[0];  // exercise distance ties
        const KdTree tree(cloud.points);
        for (int k = 1; k <= n; ++k) {
            const int q = static_cast<int>(rng() % n);
            const PatchNeighborhood patch = knn_patch(tree, cloud, q, k);
            REQUIRE(patch.neighbor_indices == oracles::brute_knn(cloud.points, cloud.points[q], k));
        }
    }
}

TEST_CASE("knn_patch scale_h invariant") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    PointCloud cloud;
    for (int i = 0; i < 30; ++i) cloud.points.emplace_back(u(rng), u(rng), u(rng));
    const PatchNeighborhood patch = knn_patch(cloud, 5, 12);
    double max_norm = 0.0;
    for (const Vec3& p : patch.local_points) max_norm = std::max(max_norm, p.norm());
    CHECK(patch.scale_h == doctest::Approx(max_norm).epsilon(1e-14));
}

TEST_CASE("rotate_to_z identity case") {
    const Rotation r = rotate_to_z(UnitVector3(0, 0, 1));
    CHECK((r.quat().coeffs() - Eigen::Quaterniond::Identity().coeffs()).norm() < 1e-15);
}

TEST_CASE("rotate_to_z of +x is a -90 degree turn about y") {
    const Rotation r = rotate_to_z(UnitVector3(1, 0, 0));
    CHECK((r.apply(Vec3(1, 0, 0)) - Vec3(0, 0, 1)).norm() < 1e-12);
    // -90 degrees about y maps +z to +x.
    CHECK((r.apply(Vec3(0, 0, 1)) - Vec3(-1, 0, 0)).norm() < 1e-12);
    CHECK((r.apply(Vec3(0, 1, 0)) - Vec3(0, 1, 0)).norm() < 1e-12);
}

TEST_CASE("rotate_to_z antipodal tie-break is a half turn about x") {
    const Rotation r = rotate_to_z(UnitVector3(0, 0, -1));
    CHECK((r.apply(Vec3(0, 0, -1)) - Vec3(0, 0, 1)).norm() < 1e-12);
    CHECK((r.apply(Vec3(1, 0, 0)) - Vec3(1, 0, 0)).norm() < 1e-12);
    CHECK((r.apply(Vec3(0, 1, 0)) - Vec3(0, -1, 0)).norm() < 1e-12);
}

TEST_CASE("rotate_to_z sends 1000 random unit vectors to +z within 1e-10") {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 1000; ++i) {
        UnitVector3 v = oracles::random_unit(rng);
        if (i % 5 == 0) {
            // Mix in near-antipodal directions just outside the tie-break band.
            const double eps = 1e-7 * (1.0 + (i % 13));
            v = UnitVector3(Vec3(eps, -0.5 * eps, -1.0));
        }
        const Rotation r = rotate_to_z(v);
        CHECK((r.apply(v.vec()) - Vec3(0, 0, 1)).norm() < 1e-10);
    }
}

TEST_CASE("rotations preserve inner products") {
    std::mt19937_64 rng(19);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        const Rotation r = rotate_to_z(oracles::random_unit(rng));
        const Vec3 a(g(rng), g(rng), g(rng));
        const Vec3 b(g(rng), g(rng), g(rng));
        CHECK(r.apply(a).dot(r.apply(b)) == doctest::Approx(a.dot(b)).epsilon(1e-10));
        CHECK(r.apply(a).norm() == doctest::Approx(a.norm()).epsilon(1e-10));
    }
    // Determinant of the equivalent matrix is +1.
    const Rotation r = rotate_to_z(oracles::random_unit(rng));
    CHECK(r.matrix().determinant() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("apply_rotation identity and half turn about z") {
    PatchNeighborhood patch;
    patch.query_index = 0;
    patch.neighbor_indices = {0, 1};
    patch.local_points = {Vec3(0, 0, 0), Vec3(1, 2, 3)};
    patch.scale_h = std::sqrt(14.0);

    const PatchNeighborhood same = apply_rotation(Rotation::identity(), patch);
    CHECK((same.local_points[1] - Vec3(1, 2, 3)).norm() == 0.0);

    const PatchNeighborhood flipped =
        apply_rotation(Rotation::axis_angle(Vec3(0, 0, 1), M_PI), patch);
    CHECK((flipped.local_points[1] - Vec3(-1, -2, 3)).norm() < 1e-12);
    CHECK(flipped.scale_h == patch.scale_h);
}

TEST_CASE("apply_rotation preserves pairwise distances and scale_h") {
    std::mt19937_64 rng(23);
    const PatchNeighborhood patch = oracles::random_patch(rng, 15, 1.0, 0.05);
    const Rotation r = rotate_to_z(oracles::random_unit(rng));
    const PatchNeighborhood rotated = apply_rotation(r, patch);
    for (int i = 0; i < patch.size(); ++i) {
        for (int j = i + 1; j < patch.size(); ++j) {
            const double before = (patch.local_points[i] - patch.local_points[j]).norm();
            const double after = (rotated.local_points[i] - rotated.local_points[j]).norm();
            CHECK(after == doctest::Approx(before).epsilon(1e-10));
        }
    }
    double max_norm = 0.0;
    for (const Vec3& p : rotated.local_points) max_norm = std::max(max_norm, p.norm());
    CHECK(rotated.scale_h == doctest::Approx(max_norm).epsilon(1e-10));
}

TEST_CASE("UnitVector3 rejects degenerate input and normalizes") {
    CHECK_THROWS_AS(UnitVector3(Vec3(0, 0, 0)), Error);
    const UnitVector3 v(Vec3(3, 0, 4));
    CHECK(v.vec().norm() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(v.x() == doctest::Approx(0.6));
    CHECK(v.z() == doctest::Approx(0.8));
}
